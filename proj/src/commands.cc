#include "esa/commands.h"

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "esa/builder.h"
#include "esa/config.h"
#include "esa/corpus.h"
#include "esa/error.h"
#include "esa/eval.h"
#include "esa/featuregen.h"
#include "esa/harness.h"
#include "esa/index.h"
#include "esa/parallel.h"
#include "esa/semantics.h"
#include "json.hpp"

namespace esa {
namespace {

struct GlobalFlags {
  std::string config_path;
  std::string index_path;
  int threads = 1;
  long long seed = 0;
};

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void WriteFile(const std::string& path, const std::string& contents) {
  std::filesystem::path p(path);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  out << contents;
  if (!out) throw Error("write failed: " + path);
}

std::string FormatScore(double v) {
  std::ostringstream out;
  out << std::setprecision(10) << v;
  return out.str();
}

Config LoadConfig(const GlobalFlags& flags) {
  Config config = flags.config_path.empty() ? Config{}
                                            : Config::Load(flags.config_path);
  if (flags.threads < 1) throw Error("--threads must be at least 1");
  config.build.threads = flags.threads;
  return config;
}

Interpreter LoadInterpreter(const GlobalFlags& flags, const Config& config) {
  if (flags.index_path.empty()) throw Error("--index is required");
  return Interpreter(LoadIndex(flags.index_path), config.LoadStopWords());
}

FeatureGenOptions FeatureOptions(const Config& config) {
  FeatureGenOptions options = config.features;
  options.segmentation = config.EffectiveSegmentation();
  return options;
}

struct BuildArgs {
  std::string corpus;
  std::string out;
  std::string term_stats;
};

void RunBuild(const GlobalFlags& flags, const BuildArgs& args,
              std::ostream& out) {
  Config config = LoadConfig(flags);
  std::string bytes = ReadFile(args.corpus);
  std::istringstream in(bytes);
  std::vector<RawArticle> articles = ParseCorpus(in);
  BuildReport report;
  InvertedIndex index =
      BuildIndex(articles, config.build, config.LoadStopWords(), &report);
  index.corpus_checksum = Crc32Hex(bytes);
  SaveIndex(index, args.out);
  out << report.Summary();
  out << "index written to " << args.out << "\n";
  if (!args.term_stats.empty()) {
    std::ostringstream csv;
    csv << "term,postings_before,postings_after\n";
    for (const TermPruneStat& stat : report.term_prune_stats) {
      csv << stat.term << "," << stat.total << "," << stat.kept << "\n";
    }
    WriteFile(args.term_stats, csv.str());
  }
}

void RunInterpret(const GlobalFlags& flags, const std::string& text,
                  std::size_t top, std::ostream& out) {
  Config config = LoadConfig(flags);
  Interpreter interpreter = LoadInterpreter(flags, config);
  InterpretationVector v = interpreter.Interpret(text, config.relatedness);
  if (v.empty()) {
    out << "no concepts matched\n";
    return;
  }
  std::size_t rank = 0;
  for (const ConceptWeight& entry : v.TopK(top)) {
    const Concept* c = interpreter.index().FindConcept(entry.concept_id);
    out << ++rank << "\t" << entry.concept_id << "\t"
        << (c != nullptr ? c->title : std::string("?")) << "\t"
        << FormatScore(entry.weight) << "\n";
  }
}

void RunRelate(const GlobalFlags& flags, const std::string& a,
               const std::string& b, std::ostream& out) {
  Config config = LoadConfig(flags);
  Interpreter interpreter = LoadInterpreter(flags, config);
  RelatednessScore score = interpreter.Relatedness(a, b, config.relatedness);
  out << FormatScore(score.score);
  if (score.empty) out << "\tempty";
  out << "\n";
}

struct EvalArgs {
  std::string pairs;
  std::string docs;
  std::string baseline_column;
  std::string baseline_name;
  std::optional<double> baseline_r;
  std::string out_prefix;
};

std::optional<Baseline> BaselineFrom(const EvalArgs& args) {
  if (!args.baseline_column.empty()) {
    return Baseline{args.baseline_name.empty() ? args.baseline_column
                                               : args.baseline_name,
                    args.baseline_column, std::nullopt};
  }
  if (args.baseline_r) {
    return Baseline{args.baseline_name.empty() ? "baseline"
                                               : args.baseline_name,
                    std::nullopt, *args.baseline_r};
  }
  if (!args.baseline_name.empty()) {
    throw Error("--baseline-name needs --baseline-column or --baseline-r");
  }
  return std::nullopt;
}

void RunEval(const GlobalFlags& flags, const EvalArgs& args, bool documents,
             std::ostream& out) {
  Config config = LoadConfig(flags);
  Interpreter interpreter = LoadInterpreter(flags, config);
  std::vector<JudgedPair> pairs = documents
                                      ? LoadDocPairs(args.pairs, args.docs)
                                      : LoadWordPairs(args.pairs);
  std::optional<Baseline> baseline = BaselineFrom(args);

  // Each distinct item is interpreted once, in parallel.
  std::map<std::string, std::size_t> slot;
  std::vector<const std::string*> items;
  for (const JudgedPair& pair : pairs) {
    for (const std::string* item : {&pair.item_a, &pair.item_b}) {
      if (slot.emplace(*item, items.size()).second) items.push_back(item);
    }
  }
  std::vector<InterpretationVector> vectors(items.size());
  ParallelFor(items.size(), flags.threads, [&](std::size_t i) {
    vectors[i] = interpreter.Interpret(*items[i], config.relatedness);
  });
  PairScorer scorer = [&](const JudgedPair& pair) {
    return Cosine(vectors[slot.at(pair.item_a)], vectors[slot.at(pair.item_b)]);
  };

  std::string dataset = std::filesystem::path(args.pairs).filename().string();
  CorrelationReport report = EvaluatePairs(
      dataset, pairs, scorer,
      documents ? CorrelationMeasure::kPearson : CorrelationMeasure::kSpearman,
      baseline);
  out << report.ToText();
  if (!args.out_prefix.empty()) {
    WriteFile(args.out_prefix + ".txt", report.ToText());
    WriteFile(args.out_prefix + ".csv", report.ToCsv());
    WriteFile(args.out_prefix + ".pairs.csv", report.PairsCsv());
  }
}

struct GenArgs {
  std::string train;
  std::string test;
  std::string out;
  bool evaluate = false;
};

nlohmann::json FeatureJson(const LabeledDocument& doc, const char* split,
                           const FeatureSet& features,
                           const Interpreter* interpreter) {
  nlohmann::json concepts = nlohmann::json::array();
  for (const auto& [id, weight] : features.concepts) {
    const Concept* c =
        interpreter != nullptr ? interpreter->index().FindConcept(id) : nullptr;
    concepts.push_back({{"id", id},
                        {"title", c != nullptr ? c->title : std::string()},
                        {"weight", weight}});
  }
  nlohmann::json words = nlohmann::json::object();
  for (const auto& [stem, weight] : features.words) words[stem] = weight;
  return {{"id", doc.id},
          {"split", split},
          {"labels", doc.labels},
          {"words", words},
          {"concepts", concepts}};
}

void RunGenFeatures(const GlobalFlags& flags, const GenArgs& args,
                    std::ostream& out) {
  Config config = LoadConfig(flags);
  StopWordList stops = config.LoadStopWords();
  FeatureGenOptions options = FeatureOptions(config);
  std::unique_ptr<Interpreter> interpreter;
  if (options.top_k > 0) {
    if (flags.index_path.empty()) throw Error("--index is required");
    interpreter =
        std::make_unique<Interpreter>(LoadIndex(flags.index_path), stops);
  }
  std::vector<LabeledDocument> train = LoadLabeledCorpus(args.train);
  std::vector<LabeledDocument> test;
  if (!args.test.empty()) test = LoadLabeledCorpus(args.test);

  std::vector<FeatureCounts> train_counts =
      CountCorpus(train, stops, interpreter.get(), options, flags.threads);
  std::vector<FeatureCounts> test_counts =
      CountCorpus(test, stops, interpreter.get(), options, flags.threads);
  std::vector<std::set<std::string>> train_labels = LabelsOf(train);
  FeatureModel model =
      FeatureModel::Fit(train_counts, train_labels, config.feature_model);

  auto weigh = [&](const FeatureModel& m,
                   const std::vector<FeatureCounts>& counts) {
    std::vector<FeatureSet> sets;
    sets.reserve(counts.size());
    for (const FeatureCounts& c : counts) sets.push_back(m.Weight(c));
    return sets;
  };
  std::vector<FeatureSet> train_sets = weigh(model, train_counts);
  std::vector<FeatureSet> test_sets = weigh(model, test_counts);

  if (!args.out.empty()) {
    std::ostringstream lines;
    for (std::size_t d = 0; d < train.size(); ++d) {
      lines << FeatureJson(train[d], "train", train_sets[d], interpreter.get())
                   .dump()
            << "\n";
    }
    for (std::size_t d = 0; d < test.size(); ++d) {
      lines << FeatureJson(test[d], "test", test_sets[d], interpreter.get())
                   .dump()
            << "\n";
    }
    WriteFile(args.out, lines.str());
  }
  out << "train documents: " << train.size() << "\n"
      << "test documents: " << test.size() << "\n"
      << "selected concept features: " << model.selected_concepts().size()
      << "\n";

  if (args.evaluate) {
    if (test.empty()) throw Error("--evaluate needs --test");
    auto words_only = [](std::vector<FeatureCounts> counts) {
      for (FeatureCounts& c : counts) c.concepts.clear();
      return counts;
    };
    std::vector<FeatureCounts> bow_train = words_only(train_counts);
    FeatureModel bow_model =
        FeatureModel::Fit(bow_train, train_labels, config.feature_model);
    std::vector<std::set<std::string>> test_labels = LabelsOf(test);
    AveragedBep bow = EvaluateCategorization(
        weigh(bow_model, bow_train), train_labels,
        weigh(bow_model, words_only(test_counts)), test_labels,
        config.classifier_beta);
    AveragedBep full = EvaluateCategorization(
        train_sets, train_labels, test_sets, test_labels,
        config.classifier_beta);
    out << "features\tmicro_bep\tmacro_bep\n"
        << "words\t" << FormatScore(bow.micro) << "\t" << FormatScore(bow.macro)
        << "\n"
        << "words+concepts\t" << FormatScore(full.micro) << "\t"
        << FormatScore(full.macro) << "\n";
  }
}

}  // namespace

int RunCli(int argc, const char* const* argv, std::ostream& out,
           std::ostream& err) {
  CLI::App app{"Explicit Semantic Analysis toolkit"};
  app.require_subcommand(1);
  GlobalFlags flags;
  app.add_option("--config", flags.config_path, "Configuration file");
  app.add_option("--index", flags.index_path, "Index directory");
  app.add_option("--threads", flags.threads, "Worker threads")
      ->check(CLI::PositiveNumber);
  app.add_option("--seed", flags.seed, "Reserved; nothing is randomized");

  BuildArgs build;
  CLI::App* build_cmd = app.add_subcommand("build", "Build an index");
  build_cmd->add_option("corpus", build.corpus, "Corpus (JSON lines)")
      ->required();
  build_cmd->add_option("--out", build.out, "Output index directory")
      ->required();
  build_cmd->add_option("--term-stats", build.term_stats,
                        "Write per-term pruning figures as CSV");

  std::string interpret_text;
  std::size_t top = 10;
  CLI::App* interpret_cmd =
      app.add_subcommand("interpret", "List the top concepts of a text");
  interpret_cmd->add_option("text", interpret_text, "Text")->required();
  interpret_cmd->add_option("--top", top, "Concepts to list");

  std::string relate_a;
  std::string relate_b;
  CLI::App* relate_cmd =
      app.add_subcommand("relate", "Relatedness of two texts");
  relate_cmd->add_option("text_a", relate_a, "First text")->required();
  relate_cmd->add_option("text_b", relate_b, "Second text")->required();

  EvalArgs eval;
  auto add_eval_options = [&eval](CLI::App* cmd) {
    cmd->add_option("--pairs", eval.pairs, "Judged pairs CSV")->required();
    cmd->add_option("--baseline-column", eval.baseline_column,
                    "Dataset column holding baseline scores");
    cmd->add_option("--baseline-name", eval.baseline_name, "Baseline label");
    cmd->add_option("--baseline-r", eval.baseline_r,
                    "Reported baseline correlation");
    cmd->add_option("--out", eval.out_prefix,
                    "Write PREFIX.txt, PREFIX.csv and PREFIX.pairs.csv");
  };
  CLI::App* words_cmd =
      app.add_subcommand("eval-words", "Spearman correlation on word pairs");
  add_eval_options(words_cmd);
  CLI::App* docs_cmd =
      app.add_subcommand("eval-docs", "Pearson correlation on document pairs");
  add_eval_options(docs_cmd);
  docs_cmd->add_option("--docs", eval.docs, "Documents (JSON lines)")
      ->required();

  GenArgs gen;
  CLI::App* gen_cmd = app.add_subcommand(
      "gen-features", "Generate features for a labeled corpus");
  gen_cmd->add_option("--train", gen.train, "Training documents")->required();
  gen_cmd->add_option("--test", gen.test, "Test documents");
  gen_cmd->add_option("--out", gen.out, "Output JSON lines");
  gen_cmd->add_flag("--evaluate", gen.evaluate,
                    "Compare words-only and augmented break-even points");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (*build_cmd) {
      RunBuild(flags, build, out);
    } else if (*interpret_cmd) {
      RunInterpret(flags, interpret_text, top, out);
    } else if (*relate_cmd) {
      RunRelate(flags, relate_a, relate_b, out);
    } else if (*words_cmd) {
      RunEval(flags, eval, false, out);
    } else if (*docs_cmd) {
      RunEval(flags, eval, true, out);
    } else if (*gen_cmd) {
      RunGenFeatures(flags, gen, out);
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace esa

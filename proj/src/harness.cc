#include "esa/harness.h"

#include <cmath>
#include <sstream>

#include "esa/error.h"
#include "esa/parallel.h"

namespace esa {
namespace {

std::string Num(double v) {
  std::ostringstream out;
  out.precision(10);
  out << v;
  return out.str();
}

std::string CsvField(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

const char* MeasureName(CorrelationMeasure measure) {
  return measure == CorrelationMeasure::kSpearman ? "spearman" : "pearson";
}

double Correlate(CorrelationMeasure measure, const std::vector<double>& xs,
                 const std::vector<double>& ys) {
  return measure == CorrelationMeasure::kSpearman ? Spearman(xs, ys)
                                                  : Pearson(xs, ys);
}

}  // namespace

std::string CorrelationReport::ToText() const {
  std::ostringstream out;
  out << "dataset:             " << dataset << "\n"
      << "measure:             " << MeasureName(measure) << "\n"
      << "pairs:               " << pairs << "\n"
      << "empty-vector pairs:  " << empty_pairs << "\n"
      << "correlation:         " << Num(correlation) << "\n";
  if (baseline_name) {
    out << "baseline:            " << *baseline_name << "\n"
        << "baseline correlation: " << Num(*baseline_correlation) << "\n";
    out << "p-value (two-sided): "
        << (p_two_sided ? Num(*p_two_sided) : std::string("n/a")) << "\n"
        << "p-value (one-sided): "
        << (p_one_sided ? Num(*p_one_sided) : std::string("n/a")) << "\n";
  }
  return out.str();
}

std::string CorrelationReport::ToCsv() const {
  std::ostringstream out;
  out << "dataset,measure,pairs,empty_pairs,correlation,baseline,"
         "baseline_correlation,p_two_sided,p_one_sided\n";
  out << CsvField(dataset) << "," << MeasureName(measure) << "," << pairs << ","
      << empty_pairs << "," << Num(correlation) << ","
      << CsvField(baseline_name.value_or("")) << ","
      << (baseline_correlation ? Num(*baseline_correlation) : "") << ","
      << (p_two_sided ? Num(*p_two_sided) : "") << ","
      << (p_one_sided ? Num(*p_one_sided) : "") << "\n";
  return out.str();
}

std::string CorrelationReport::PairsCsv() const {
  std::ostringstream out;
  out << "item_a,item_b,human,system,empty\n";
  for (const PairScore& s : scores) {
    out << CsvField(s.id_a) << "," << CsvField(s.id_b) << "," << Num(s.human)
        << "," << Num(s.system) << "," << (s.empty ? 1 : 0) << "\n";
  }
  return out.str();
}

CorrelationReport EvaluatePairs(const std::string& dataset,
                                const std::vector<JudgedPair>& pairs,
                                const PairScorer& scorer,
                                CorrelationMeasure measure,
                                const std::optional<Baseline>& baseline) {
  CorrelationReport report;
  report.dataset = dataset;
  report.measure = measure;
  report.pairs = pairs.size();
  std::vector<double> human;
  std::vector<double> system;
  for (const JudgedPair& pair : pairs) {
    RelatednessScore score = scorer(pair);
    report.empty_pairs += score.empty ? 1 : 0;
    human.push_back(pair.human_score);
    system.push_back(score.score);
    report.scores.push_back(
        {pair.id_a, pair.id_b, pair.human_score, score.score, score.empty});
  }
  report.correlation = Correlate(measure, human, system);
  if (baseline) {
    report.baseline_name = baseline->name;
    if (baseline->column) {
      std::vector<double> other;
      for (const JudgedPair& pair : pairs) {
        auto found = pair.extra.find(*baseline->column);
        if (found == pair.extra.end()) {
          throw Error("baseline column '" + *baseline->column +
                      "' missing for pair (" + pair.id_a + ", " + pair.id_b +
                      ")");
        }
        other.push_back(found->second);
      }
      report.baseline_correlation = Correlate(measure, human, other);
    } else if (baseline->correlation) {
      report.baseline_correlation = *baseline->correlation;
    } else {
      throw Error("baseline needs a column or a correlation");
    }
    double r1 = report.correlation;
    double r2 = *report.baseline_correlation;
    if (std::fabs(r1) < 1.0 && std::fabs(r2) < 1.0 && pairs.size() > 3) {
      report.p_two_sided =
          FisherZPValue(r1, r2, pairs.size(), pairs.size(), Tail::kTwoSided);
      report.p_one_sided =
          FisherZPValue(r1, r2, pairs.size(), pairs.size(), Tail::kOneSided);
    }
  }
  return report;
}

std::vector<FeatureCounts> CountCorpus(const std::vector<LabeledDocument>& docs,
                                       const StopWordList& stops,
                                       const Interpreter* interpreter,
                                       const FeatureGenOptions& options,
                                       int threads) {
  std::vector<FeatureCounts> counts(docs.size());
  ParallelFor(docs.size(), threads, [&](std::size_t d) {
    counts[d] = CountFeatures(docs[d], stops, interpreter, options);
  });
  return counts;
}

std::vector<std::set<std::string>> LabelsOf(
    const std::vector<LabeledDocument>& docs) {
  std::vector<std::set<std::string>> labels;
  labels.reserve(docs.size());
  for (const LabeledDocument& doc : docs) labels.push_back(doc.labels);
  return labels;
}

AveragedBep EvaluateCategorization(
    const std::vector<FeatureSet>& train,
    const std::vector<std::set<std::string>>& train_labels,
    const std::vector<FeatureSet>& test,
    const std::vector<std::set<std::string>>& test_labels, double beta) {
  std::set<std::string> categories;
  for (const auto& labels : train_labels) {
    categories.insert(labels.begin(), labels.end());
  }
  std::vector<CategoryDecisions> decisions;
  for (const std::string& category : categories) {
    std::vector<bool> positive(train.size());
    std::size_t n_pos = 0;
    for (std::size_t d = 0; d < train.size(); ++d) {
      positive[d] = train_labels[d].count(category) > 0;
      n_pos += positive[d] ? 1 : 0;
    }
    if (n_pos == 0 || n_pos == train.size()) continue;
    CentroidClassifier classifier =
        CentroidClassifier::Train(train, positive, beta);
    CategoryDecisions cat{category, {}};
    for (std::size_t d = 0; d < test.size(); ++d) {
      cat.decisions.push_back(
          {classifier.Score(test[d]), test_labels[d].count(category) > 0});
    }
    decisions.push_back(std::move(cat));
  }
  if (decisions.empty()) {
    throw Error("categorization: no category has both positive and negative "
                "training documents");
  }
  return MicroMacroBep(decisions);
}

}  // namespace esa

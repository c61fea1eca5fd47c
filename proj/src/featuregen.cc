#include "esa/featuregen.h"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "esa/error.h"
#include "json.hpp"

namespace esa {
namespace {

using json = nlohmann::json;

double Entropy(const std::map<int, std::size_t>& counts, std::size_t total) {
  double h = 0.0;
  for (const auto& [cls, count] : counts) {
    if (count == 0) continue;
    double p = static_cast<double>(count) / static_cast<double>(total);
    h -= p * std::log2(p);
  }
  return h;
}

template <typename Key>
void AddScaled(std::map<Key, double>* into, const std::map<Key, double>& from,
               double scale) {
  for (const auto& [key, value] : from) (*into)[key] += scale * value;
}

template <typename Key>
double Dot(const std::map<Key, double>& a, const std::map<Key, double>& b) {
  double dot = 0.0;
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() && ib != b.end()) {
    if (ia->first < ib->first) {
      ++ia;
    } else if (ib->first < ia->first) {
      ++ib;
    } else {
      dot += ia->second * ib->second;
      ++ia;
      ++ib;
    }
  }
  return dot;
}

}  // namespace

const char* LinkModeName(LinkMode mode) {
  switch (mode) {
    case LinkMode::kOff:
      return "off";
    case LinkMode::kAll:
      return "all";
    case LinkMode::kMoreGeneralOnly:
      return "more_general_only";
  }
  return "?";
}

LinkMode ParseLinkMode(std::string_view name) {
  if (name == "off") return LinkMode::kOff;
  if (name == "all") return LinkMode::kAll;
  if (name == "more_general_only") return LinkMode::kMoreGeneralOnly;
  throw Error("unknown link mode: " + std::string(name));
}

std::vector<ConceptWeight> AugmentWithLinks(
    const std::vector<ConceptWeight>& top, const ConceptGraph& graph,
    LinkMode mode, double alpha, std::size_t k) {
  if (mode == LinkMode::kOff) return top;
  InterpretationVector expanded =
      SecondOrder(InterpretationVector::FromEntries(top), graph, alpha,
                  mode == LinkMode::kMoreGeneralOnly);
  return expanded.TopK(k);
}

std::map<ConceptId, std::size_t> GenerateConcepts(
    const Interpreter& interpreter, std::string_view text,
    const FeatureGenOptions& options) {
  std::map<ConceptId, std::size_t> pooled;
  if (options.top_k == 0) return pooled;
  for (const Context& context :
       Segment(text, options.segmentation, interpreter.stop_words())) {
    std::vector<ConceptWeight> top =
        interpreter.InterpretTokens(context.tokens).TopK(options.top_k);
    top = AugmentWithLinks(top, interpreter.graph(), options.link_mode,
                           options.alpha, options.top_k);
    for (const ConceptWeight& c : top) ++pooled[c.concept_id];
  }
  return pooled;
}

double InformationGain(const std::vector<bool>& present,
                       const std::vector<int>& classes) {
  if (present.size() != classes.size()) {
    throw Error("information gain: presence and class vectors differ in size");
  }
  const std::size_t n = classes.size();
  if (n == 0) return 0.0;
  std::map<int, std::size_t> all, with, without;
  std::size_t n_with = 0;
  for (std::size_t i = 0; i < n; ++i) {
    ++all[classes[i]];
    if (present[i]) {
      ++with[classes[i]];
      ++n_with;
    } else {
      ++without[classes[i]];
    }
  }
  if (all.size() < 2) return 0.0;
  const std::size_t n_without = n - n_with;
  double conditional = 0.0;
  if (n_with > 0) {
    conditional += static_cast<double>(n_with) / n * Entropy(with, n_with);
  }
  if (n_without > 0) {
    conditional +=
        static_cast<double>(n_without) / n * Entropy(without, n_without);
  }
  return std::max(0.0, Entropy(all, n) - conditional);
}

std::vector<LabeledDocument> ParseLabeledCorpus(std::istream& in) {
  std::vector<LabeledDocument> docs;
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    auto fail = [&](const std::string& problem) {
      return Error("labeled corpus line " + std::to_string(line_number) +
                   ": " + problem);
    };
    json record;
    try {
      record = json::parse(line);
    } catch (const json::parse_error& e) {
      throw fail(std::string("invalid JSON: ") + e.what());
    }
    LabeledDocument doc;
    auto id = record.find("id");
    if (id == record.end()) throw fail("missing field 'id'");
    if (id->is_string()) {
      doc.id = id->get<std::string>();
    } else if (id->is_number_integer()) {
      doc.id = std::to_string(id->get<std::int64_t>());
    } else {
      throw fail("field 'id' must be a string or integer");
    }
    auto title = record.find("title");
    if (title != record.end()) {
      if (!title->is_string()) throw fail("field 'title' must be a string");
      doc.title = title->get<std::string>();
    }
    auto text = record.find("text");
    if (text == record.end() || !text->is_string()) {
      throw fail("field 'text' missing or not a string");
    }
    doc.text = text->get<std::string>();
    auto labels = record.find("labels");
    if (labels == record.end() || !labels->is_array()) {
      throw fail("field 'labels' missing or not an array");
    }
    for (const json& label : *labels) {
      if (!label.is_string()) throw fail("labels must be strings");
      doc.labels.insert(label.get<std::string>());
    }
    docs.push_back(std::move(doc));
  }
  return docs;
}

std::vector<LabeledDocument> LoadLabeledCorpus(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open labeled corpus: " + path);
  return ParseLabeledCorpus(in);
}

FeatureCounts CountFeatures(const LabeledDocument& doc,
                            const StopWordList& stops,
                            const Interpreter* interpreter,
                            const FeatureGenOptions& options) {
  FeatureCounts counts;
  for (const Token& token : Tokenize(doc.title, stops)) {
    counts.words[token.stem] += 2;
  }
  for (const Token& token : Tokenize(doc.text, stops)) ++counts.words[token.stem];
  if (interpreter != nullptr && options.top_k > 0) {
    std::string full = doc.title.empty() ? doc.text : doc.title + "\n\n" + doc.text;
    counts.concepts = GenerateConcepts(*interpreter, full, options);
  }
  return counts;
}

double FeatureSet::Norm() const {
  double sum = 0.0;
  for (const auto& [word, w] : words) sum += w * w;
  for (const auto& [id, w] : concepts) sum += w * w;
  return std::sqrt(sum);
}

double Cosine(const FeatureSet& a, const FeatureSet& b) {
  double na = a.Norm();
  double nb = b.Norm();
  if (na == 0.0 || nb == 0.0) return 0.0;
  double dot = Dot(a.words, b.words) + Dot(a.concepts, b.concepts);
  return dot / (na * nb);
}

FeatureModel FeatureModel::Fit(const std::vector<FeatureCounts>& train,
                               const std::vector<std::set<std::string>>& labels,
                               const FeatureModelOptions& options) {
  if (train.size() != labels.size()) {
    throw Error("feature model: documents and labels differ in size");
  }
  FeatureModel model;
  model.n_ = train.size();
  for (const FeatureCounts& doc : train) {
    for (const auto& [word, count] : doc.words) ++model.word_df_[word];
    for (const auto& [id, count] : doc.concepts) ++model.concept_df_[id];
  }
  std::erase_if(model.word_df_, [&](const auto& entry) {
    return entry.second < options.rare_min_docs;
  });
  std::erase_if(model.concept_df_, [&](const auto& entry) {
    return entry.second < options.rare_min_docs;
  });

  std::set<std::string> categories;
  for (const auto& doc_labels : labels) {
    categories.insert(doc_labels.begin(), doc_labels.end());
  }
  std::vector<std::pair<double, ConceptId>> ranked;
  for (const auto& [id, df] : model.concept_df_) {
    std::vector<bool> present(train.size());
    for (std::size_t d = 0; d < train.size(); ++d) {
      present[d] = train[d].concepts.count(id) > 0;
    }
    double best = 0.0;
    for (const std::string& category : categories) {
      std::vector<int> classes(train.size());
      for (std::size_t d = 0; d < train.size(); ++d) {
        classes[d] = labels[d].count(category) ? 1 : 0;
      }
      best = std::max(best, InformationGain(present, classes));
    }
    model.gain_[id] = best;
    ranked.emplace_back(best, id);
  }
  std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first > b.first;
    return a.second < b.second;
  });
  if (ranked.size() > options.concepts_to_keep) {
    ranked.resize(options.concepts_to_keep);
  }
  for (const auto& [gain, id] : ranked) model.selected_.insert(id);
  return model;
}

FeatureSet FeatureModel::Weight(const FeatureCounts& counts) const {
  FeatureSet out;
  const double n = static_cast<double>(n_);
  for (const auto& [word, count] : counts.words) {
    auto df = word_df_.find(word);
    if (df == word_df_.end() || count == 0) continue;
    double w = (1.0 + std::log(static_cast<double>(count))) *
               std::log(n / static_cast<double>(df->second));
    if (w > 0.0) out.words[word] = w;
  }
  for (const auto& [id, count] : counts.concepts) {
    if (!selected_.count(id) || count == 0) continue;
    double w = (1.0 + std::log(static_cast<double>(count))) *
               std::log(n / static_cast<double>(concept_df_.at(id)));
    if (w > 0.0) out.concepts[id] = w;
  }
  double norm = out.Norm();
  if (norm > 0.0) {
    for (auto& [word, w] : out.words) w /= norm;
    for (auto& [id, w] : out.concepts) w /= norm;
  }
  return out;
}

CentroidClassifier CentroidClassifier::Train(
    const std::vector<FeatureSet>& documents, const std::vector<bool>& positive,
    double beta) {
  if (documents.size() != positive.size()) {
    throw Error("classifier: documents and labels differ in size");
  }
  std::size_t n_pos = std::count(positive.begin(), positive.end(), true);
  std::size_t n_neg = positive.size() - n_pos;
  if (n_pos == 0 || n_neg == 0) {
    throw Error("classifier needs at least one positive and one negative "
                "training document");
  }
  CentroidClassifier classifier;
  FeatureSet& proto = classifier.prototype_;
  for (std::size_t d = 0; d < documents.size(); ++d) {
    double scale = positive[d] ? 1.0 / static_cast<double>(n_pos)
                               : -beta / static_cast<double>(n_neg);
    AddScaled(&proto.words, documents[d].words, scale);
    AddScaled(&proto.concepts, documents[d].concepts, scale);
  }
  std::erase_if(proto.words, [](const auto& e) { return e.second <= 0.0; });
  std::erase_if(proto.concepts, [](const auto& e) { return e.second <= 0.0; });
  return classifier;
}

double CentroidClassifier::Score(const FeatureSet& document) const {
  return Cosine(document, prototype_);
}

}  // namespace esa

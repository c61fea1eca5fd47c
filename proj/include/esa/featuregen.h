#ifndef ESA_FEATUREGEN_H_
#define ESA_FEATUREGEN_H_

#include <cstddef>
#include <istream>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "esa/semantics.h"
#include "esa/textproc.h"

namespace esa {

enum class LinkMode { kOff, kAll, kMoreGeneralOnly };

const char* LinkModeName(LinkMode mode);
LinkMode ParseLinkMode(std::string_view name);

struct FeatureGenOptions {
  SegmentationSpec segmentation;
  std::size_t top_k = 10;
  LinkMode link_mode = LinkMode::kOff;
  double alpha = 0.5;
};

// Second-order expansion of a context's truncated concept list, re-truncated
// to `k`. Returns `top` unchanged when `mode` is kOff.
std::vector<ConceptWeight> AugmentWithLinks(
    const std::vector<ConceptWeight>& top, const ConceptGraph& graph,
    LinkMode mode, double alpha, std::size_t k);

// Concepts generated for `text`: for every context of every segmentation
// level, the k best concepts of its interpretation vector (after optional
// link augmentation). Maps concept id -> number of contexts that produced it.
std::map<ConceptId, std::size_t> GenerateConcepts(
    const Interpreter& interpreter, std::string_view text,
    const FeatureGenOptions& options);

// H(C) - H(C | F) in bits for a binary feature and class labels `classes`
// (arbitrary small integers). 0 when only one class is present.
double InformationGain(const std::vector<bool>& present,
                       const std::vector<int>& classes);

struct LabeledDocument {
  std::string id;
  std::string title;
  std::string text;
  std::set<std::string> labels;
};

// JSON-lines: `id`, `title`, `text`, `labels` (array of strings).
std::vector<LabeledDocument> ParseLabeledCorpus(std::istream& in);
std::vector<LabeledDocument> LoadLabeledCorpus(const std::string& path);

// Raw per-document feature counts before selection and weighting.
struct FeatureCounts {
  std::map<std::string, std::size_t> words;       // stem -> occurrences
  std::map<ConceptId, std::size_t> concepts;      // id -> generating contexts
};

// Bag of words with title occurrences counted twice, plus generated concepts
// when `interpreter` is non-null and options.top_k > 0.
FeatureCounts CountFeatures(const LabeledDocument& doc,
                            const StopWordList& stops,
                            const Interpreter* interpreter,
                            const FeatureGenOptions& options);

struct FeatureSet {
  std::map<std::string, double> words;
  std::map<ConceptId, double> concepts;

  double Norm() const;
  bool empty() const { return words.empty() && concepts.empty(); }
};

double Cosine(const FeatureSet& a, const FeatureSet& b);

struct FeatureModelOptions {
  std::size_t rare_min_docs = 3;
  std::size_t concepts_to_keep = 200;
};

// Document-frequency statistics and the selected concept features, fitted on
// a training split only.
class FeatureModel {
 public:
  // `labels[i]` are the categories of `train[i]`. Concept features are ranked
  // by their best one-vs-rest information gain over the categories.
  static FeatureModel Fit(const std::vector<FeatureCounts>& train,
                          const std::vector<std::set<std::string>>& labels,
                          const FeatureModelOptions& options = {});

  // ltc weighting: (1 + ln count) * ln(N / df) over retained features, then
  // cosine normalization of the combined vector.
  FeatureSet Weight(const FeatureCounts& counts) const;

  const std::set<ConceptId>& selected_concepts() const { return selected_; }
  const std::map<ConceptId, double>& concept_gain() const { return gain_; }
  std::size_t training_documents() const { return n_; }

 private:
  std::size_t n_ = 0;
  std::map<std::string, std::size_t> word_df_;
  std::map<ConceptId, std::size_t> concept_df_;
  std::set<ConceptId> selected_;
  std::map<ConceptId, double> gain_;
};

// Centroid classifier: prototype = mean(positive) - beta * mean(negative),
// negative components clipped to 0; score = cosine(document, prototype).
class CentroidClassifier {
 public:
  // Throws esa::Error unless there is at least one positive and one negative.
  static CentroidClassifier Train(const std::vector<FeatureSet>& documents,
                                  const std::vector<bool>& positive,
                                  double beta = 0.25);

  double Score(const FeatureSet& document) const;
  const FeatureSet& prototype() const { return prototype_; }

 private:
  FeatureSet prototype_;
};

}  // namespace esa

#endif  // ESA_FEATUREGEN_H_

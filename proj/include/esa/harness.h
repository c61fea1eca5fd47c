#ifndef ESA_HARNESS_H_
#define ESA_HARNESS_H_

#include <cstddef>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "esa/eval.h"
#include "esa/featuregen.h"
#include "esa/semantics.h"

namespace esa {

enum class CorrelationMeasure { kSpearman, kPearson };

struct Baseline {
  std::string name;
  // Either a per-pair score column of the dataset, or a reported
  // correlation for the same pairs.
  std::optional<std::string> column;
  std::optional<double> correlation;
};

struct PairScore {
  std::string id_a;
  std::string id_b;
  double human = 0.0;
  double system = 0.0;
  bool empty = false;
};

struct CorrelationReport {
  std::string dataset;
  CorrelationMeasure measure = CorrelationMeasure::kSpearman;
  std::size_t pairs = 0;
  std::size_t empty_pairs = 0;
  double correlation = 0.0;
  std::optional<std::string> baseline_name;
  std::optional<double> baseline_correlation;
  std::optional<double> p_two_sided;
  std::optional<double> p_one_sided;
  std::vector<PairScore> scores;

  std::string ToText() const;
  std::string ToCsv() const;
  std::string PairsCsv() const;
};

using PairScorer = std::function<RelatednessScore(const JudgedPair&)>;

// Scores every pair and correlates the scores with the human judgments.
// Pairs whose interpretation is empty keep score 0 and are counted.
CorrelationReport EvaluatePairs(const std::string& dataset,
                                const std::vector<JudgedPair>& pairs,
                                const PairScorer& scorer,
                                CorrelationMeasure measure,
                                const std::optional<Baseline>& baseline);

// Raw feature counts for a list of documents, computed in parallel.
std::vector<FeatureCounts> CountCorpus(const std::vector<LabeledDocument>& docs,
                                       const StopWordList& stops,
                                       const Interpreter* interpreter,
                                       const FeatureGenOptions& options,
                                       int threads);

std::vector<std::set<std::string>> LabelsOf(
    const std::vector<LabeledDocument>& docs);

// Trains one centroid classifier per training category and scores the test
// documents. Categories without both positive and negative training
// documents are skipped.
AveragedBep EvaluateCategorization(
    const std::vector<FeatureSet>& train,
    const std::vector<std::set<std::string>>& train_labels,
    const std::vector<FeatureSet>& test,
    const std::vector<std::set<std::string>>& test_labels, double beta);

}  // namespace esa

#endif  // ESA_HARNESS_H_

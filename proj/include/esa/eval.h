#ifndef ESA_EVAL_H_
#define ESA_EVAL_H_

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace esa {

// Average ranks (1-based); tied values share the mean of their positions.
std::vector<double> AverageRanks(std::span<const double> values);

// Spearman's rho: Pearson correlation of average ranks. Throws esa::Error
// when the sizes differ, fewer than 3 points are given, or either side is
// constant.
double Spearman(std::span<const double> xs, std::span<const double> ys);

// Product-moment correlation, same preconditions as Spearman.
double Pearson(std::span<const double> xs, std::span<const double> ys);

enum class Tail { kTwoSided, kOneSided };

// p-value for the difference of two correlations through Fisher's
// z-transformation: z = (atanh r1 - atanh r2) / sqrt(1/(n1-3) + 1/(n2-3)).
// One-sided reports the tail beyond |z|, i.e. half the two-sided value.
// Throws esa::Error unless |r| < 1 and n > 3 for both samples.
double FisherZPValue(double r1, double r2, std::size_t n1, std::size_t n2,
                     Tail tail = Tail::kTwoSided);

struct PRPoint {
  double precision = 0.0;
  double recall = 0.0;
};

// Break-even point of a precision/recall sequence ordered by threshold.
// A point with precision == recall (other than the 0/0 corner) is returned
// directly; otherwise the first adjacent pair straddling the diagonal is
// interpolated linearly, and when every point lies on one side the line
// through the two points closest to the diagonal is extrapolated. Throws
// esa::Error when that is impossible (one off-diagonal point, or a line
// parallel to the diagonal).
double BreakEvenPoint(std::span<const PRPoint> points);

struct ScoredDecision {
  double score = 0.0;
  bool relevant = false;
};

// One PR point per distinct score, thresholds descending; a document is
// assigned when its score is >= the threshold. Throws esa::Error when there
// are no relevant decisions.
std::vector<PRPoint> PrecisionRecallCurve(std::span<const ScoredDecision> decisions);

struct CategoryDecisions {
  std::string category;
  std::vector<ScoredDecision> decisions;
};

struct AveragedBep {
  double micro = 0.0;
  double macro = 0.0;
  std::size_t categories_used = 0;
  std::vector<std::string> excluded;  // categories without test positives
};

// Micro: BEP over all document-category decisions pooled. Macro: mean of the
// per-category BEPs, skipping categories without relevant decisions.
AveragedBep MicroMacroBep(const std::vector<CategoryDecisions>& categories);

struct JudgedPair {
  std::string id_a;    // word, or document id
  std::string id_b;
  std::string item_a;  // text to interpret
  std::string item_b;
  double human_score = 0.0;
  std::vector<std::optional<double>> judges;  // judge1..judgeK, may be empty
  std::map<std::string, double> extra;        // any further numeric columns
};

// CSV with header `word1,word2,score[,judge1..judgeK][,name...]`. Throws
// esa::Error with the line number on malformed rows, and on an empty file.
std::vector<JudgedPair> LoadWordPairs(const std::string& path);

// `pairs_path`: CSV `doc_id_a,doc_id_b,score[,name...]`; `documents_path`:
// JSON lines with `id` and `text`. Items of the returned pairs hold the
// document texts.
std::vector<JudgedPair> LoadDocPairs(const std::string& pairs_path,
                                     const std::string& documents_path);

struct SplitAgreement {
  double correlation = 0.0;
  std::size_t pairs_used = 0;
  std::size_t pairs_excluded = 0;
};

// Spearman correlation between the mean scores of two judge groups.
// `per_pair_judges[p][j]` is judge j's score for pair p (absent if none);
// `first_group` lists the judge indices of the first half, all others form
// the second. Pairs with an empty half are excluded and counted.
SplitAgreement SplitJudgeAgreement(
    const std::vector<std::vector<std::optional<double>>>& per_pair_judges,
    const std::vector<std::size_t>& first_group);

}  // namespace esa

#endif  // ESA_EVAL_H_

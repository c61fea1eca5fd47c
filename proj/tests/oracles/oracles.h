#ifndef ESA_TESTS_ORACLES_ORACLES_H_
#define ESA_TESTS_ORACLES_ORACLES_H_

// Brute-force reference computations for the test suite. Only the standard
// library is used here, so the main code and the oracles share nothing.

#include <cstddef>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace oracle {

enum class Axis { kColumn, kRow };

// weights[t][c] for term t (index into `terms`, sorted) and concept c (index
// into the document list).
struct DenseTable {
  std::vector<std::string> terms;
  std::vector<std::vector<double>> weights;
};

// tf = 1 + ln(count), idf = ln(n / df), entries restricted to `vocabulary`,
// then every concept column (kColumn) or term row (kRow) scaled to unit norm.
// All-zero columns or rows are left at zero.
DenseTable Tfidf(const std::vector<std::vector<std::string>>& documents,
                 const std::set<std::string>& vocabulary, Axis axis);

// Prefix length kept by the window scan, found by testing every start.
std::size_t PruneLength(const std::vector<double>& descending,
                        std::size_t window, double fraction);

// Rank of each value: 1 + (number of smaller values) + (ties - 1) / 2.
std::vector<double> Ranks(const std::vector<double>& values);

// (n*Sxy - Sx*Sy) / sqrt((n*Sxx - Sx^2) (n*Syy - Sy^2)).
double Pearson(const std::vector<double>& xs, const std::vector<double>& ys);
double Spearman(const std::vector<double>& xs, const std::vector<double>& ys);

// Entropy in bits of a distribution given by counts.
double Entropy(const std::vector<double>& counts);

// H(C) - H(C | F) from the joint count table.
double InformationGain(const std::vector<bool>& present,
                       const std::vector<int>& classes);

// Break-even point of (precision, recall) pairs ordered by threshold: an exact
// diagonal point (other than 0/0), else the first sign change of p - r,
// else the line through the two points closest to the diagonal. The crossing
// is computed by intersecting the line through two points with p = r.
double Bep(const std::vector<std::pair<double, double>>& points);

// (precision, recall) after each distinct score, scores descending.
std::vector<std::pair<double, double>> PrCurve(
    const std::vector<std::pair<double, bool>>& scored);

double Cosine(const std::vector<double>& a, const std::vector<double>& b);

// Entrywise mean of the table rows named by `tokens` over the concept axis;
// unknown tokens count toward the divisor.
std::vector<double> Centroid(const DenseTable& table,
                             const std::vector<std::string>& tokens,
                             std::size_t concepts);

}  // namespace oracle

#endif  // ESA_TESTS_ORACLES_ORACLES_H_

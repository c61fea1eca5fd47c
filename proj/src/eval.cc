#include "esa/eval.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <set>

#include "esa/error.h"
#include "json.hpp"

namespace esa {
namespace {

void CheckSample(std::span<const double> xs, std::span<const double> ys,
                 const char* what) {
  if (xs.size() != ys.size()) {
    throw Error(std::string(what) + ": samples differ in length");
  }
  if (xs.size() < 3) {
    throw Error(std::string(what) + ": at least 3 points are required");
  }
}

std::vector<std::string> SplitCsvLine(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    char ch = line[i];
    if (quoted) {
      if (ch == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        field += '"';
        ++i;
      } else if (ch == '"') {
        quoted = false;
      } else {
        field += ch;
      }
    } else if (ch == '"') {
      quoted = true;
    } else if (ch == ',') {
      fields.push_back(field);
      field.clear();
    } else if (ch != '\r') {
      field += ch;
    }
  }
  fields.push_back(field);
  for (std::string& f : fields) {
    std::size_t b = f.find_first_not_of(" \t");
    std::size_t e = f.find_last_not_of(" \t");
    f = b == std::string::npos ? "" : f.substr(b, e - b + 1);
  }
  return fields;
}

double ParseNumber(const std::string& s, const std::string& path,
                   std::size_t line, const std::string& column) {
  try {
    std::size_t used = 0;
    double v = std::stod(s, &used);
    if (used != s.size() || !std::isfinite(v)) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw Error(path + " line " + std::to_string(line) + ": column '" + column +
                "' is not a finite number: '" + s + "'");
  }
}

// Reads a pairs CSV whose first three columns are (a, b, score) under the
// given header names.
std::vector<JudgedPair> LoadPairsCsv(const std::string& path,
                                     const std::string& col_a,
                                     const std::string& col_b) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  std::string line;
  std::size_t line_number = 0;
  std::vector<std::string> header;
  while (std::getline(in, line)) {
    ++line_number;
    if (line.find_first_not_of(" \t\r") != std::string::npos) {
      header = SplitCsvLine(line);
      break;
    }
  }
  if (header.empty()) throw Error(path + ": empty dataset");
  if (header.size() < 3 || header[0] != col_a || header[1] != col_b ||
      header[2] != "score") {
    throw Error(path + " line " + std::to_string(line_number) +
                ": header must start with " + col_a + "," + col_b + ",score");
  }
  std::vector<JudgedPair> pairs;
  while (std::getline(in, line)) {
    ++line_number;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    auto fields = SplitCsvLine(line);
    if (fields.size() != header.size()) {
      throw Error(path + " line " + std::to_string(line_number) + ": expected " +
                  std::to_string(header.size()) + " columns, found " +
                  std::to_string(fields.size()));
    }
    if (fields[0].empty() || fields[1].empty()) {
      throw Error(path + " line " + std::to_string(line_number) +
                  ": empty item");
    }
    JudgedPair pair;
    pair.id_a = pair.item_a = fields[0];
    pair.id_b = pair.item_b = fields[1];
    pair.human_score = ParseNumber(fields[2], path, line_number, "score");
    for (std::size_t c = 3; c < header.size(); ++c) {
      bool is_judge = header[c].rfind("judge", 0) == 0;
      if (is_judge) {
        pair.judges.push_back(
            fields[c].empty() ? std::nullopt
                              : std::optional<double>(ParseNumber(
                                    fields[c], path, line_number, header[c])));
      } else if (!fields[c].empty()) {
        pair.extra[header[c]] =
            ParseNumber(fields[c], path, line_number, header[c]);
      }
    }
    pairs.push_back(std::move(pair));
  }
  if (pairs.empty()) throw Error(path + ": empty dataset");
  return pairs;
}

double Interpolate(const PRPoint& a, const PRPoint& b) {
  double da = a.precision - a.recall;
  double db = b.precision - b.recall;
  if (da == db) {
    throw Error("break-even point: points are parallel to the diagonal");
  }
  double t = da / (da - db);
  return a.precision + t * (b.precision - a.precision);
}

}  // namespace

std::vector<double> AverageRanks(std::span<const double> values) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return values[a] < values[b];
  });
  std::vector<double> ranks(values.size());
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i;
    while (j + 1 < order.size() && values[order[j + 1]] == values[order[i]]) ++j;
    double rank = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = rank;
    i = j + 1;
  }
  return ranks;
}

double Pearson(std::span<const double> xs, std::span<const double> ys) {
  CheckSample(xs, ys, "pearson");
  const double n = static_cast<double>(xs.size());
  double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
  double my = std::accumulate(ys.begin(), ys.end(), 0.0) / n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    double dx = xs[i] - mx;
    double dy = ys[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0) {
    throw Error("correlation is undefined for a constant sample");
  }
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

double Spearman(std::span<const double> xs, std::span<const double> ys) {
  CheckSample(xs, ys, "spearman");
  std::vector<double> rx = AverageRanks(xs);
  std::vector<double> ry = AverageRanks(ys);
  return Pearson(rx, ry);
}

double FisherZPValue(double r1, double r2, std::size_t n1, std::size_t n2,
                     Tail tail) {
  if (!(std::fabs(r1) < 1.0) || !(std::fabs(r2) < 1.0)) {
    throw Error("fisher z: correlations must lie strictly inside (-1, 1)");
  }
  if (n1 <= 3 || n2 <= 3) throw Error("fisher z: sample sizes must exceed 3");
  double se = std::sqrt(1.0 / static_cast<double>(n1 - 3) +
                        1.0 / static_cast<double>(n2 - 3));
  double z = std::fabs(std::atanh(r1) - std::atanh(r2)) / se;
  double two_sided = std::erfc(z / std::sqrt(2.0));
  return tail == Tail::kTwoSided ? two_sided : 0.5 * two_sided;
}

double BreakEvenPoint(std::span<const PRPoint> points) {
  if (points.empty()) throw Error("break-even point: no points");
  for (const PRPoint& p : points) {
    if (p.precision == p.recall && p.precision > 0.0) return p.precision;
  }
  for (std::size_t i = 0; i + 1 < points.size(); ++i) {
    double d0 = points[i].precision - points[i].recall;
    double d1 = points[i + 1].precision - points[i + 1].recall;
    if ((d0 > 0.0 && d1 < 0.0) || (d0 < 0.0 && d1 > 0.0)) {
      return Interpolate(points[i], points[i + 1]);
    }
  }
  // All points on one side: extrapolate through the two nearest the diagonal,
  // ignoring the 0/0 corner.
  std::vector<std::size_t> order;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (points[i].precision != 0.0 || points[i].recall != 0.0) {
      order.push_back(i);
    }
  }
  if (order.size() < 2) {
    throw Error("break-even point: a single off-diagonal point cannot be "
                "extrapolated");
  }
  auto distance = [&](std::size_t i) {
    return std::fabs(points[i].precision - points[i].recall);
  };
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return distance(a) < distance(b);
  });
  std::size_t a = std::min(order[0], order[1]);
  std::size_t b = std::max(order[0], order[1]);
  return Interpolate(points[a], points[b]);
}

std::vector<PRPoint> PrecisionRecallCurve(
    std::span<const ScoredDecision> decisions) {
  std::size_t relevant = 0;
  for (const ScoredDecision& d : decisions) relevant += d.relevant ? 1 : 0;
  if (relevant == 0) throw Error("precision/recall: no relevant decisions");
  std::vector<ScoredDecision> sorted(decisions.begin(), decisions.end());
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const ScoredDecision& a, const ScoredDecision& b) {
                     return a.score > b.score;
                   });
  std::vector<PRPoint> points;
  std::size_t assigned = 0;
  std::size_t hits = 0;
  std::size_t i = 0;
  while (i < sorted.size()) {
    double threshold = sorted[i].score;
    while (i < sorted.size() && sorted[i].score == threshold) {
      ++assigned;
      hits += sorted[i].relevant ? 1 : 0;
      ++i;
    }
    points.push_back({static_cast<double>(hits) / static_cast<double>(assigned),
                      static_cast<double>(hits) / static_cast<double>(relevant)});
  }
  return points;
}

AveragedBep MicroMacroBep(const std::vector<CategoryDecisions>& categories) {
  if (categories.empty()) throw Error("micro/macro BEP: no categories");
  AveragedBep result;
  std::vector<ScoredDecision> pooled;
  double macro_sum = 0.0;
  for (const CategoryDecisions& category : categories) {
    pooled.insert(pooled.end(), category.decisions.begin(),
                  category.decisions.end());
    bool any_relevant = std::any_of(
        category.decisions.begin(), category.decisions.end(),
        [](const ScoredDecision& d) { return d.relevant; });
    if (!any_relevant) {
      result.excluded.push_back(category.category);
      continue;
    }
    macro_sum += BreakEvenPoint(PrecisionRecallCurve(category.decisions));
    ++result.categories_used;
  }
  if (result.categories_used == 0) {
    throw Error("micro/macro BEP: no category has relevant test documents");
  }
  result.macro = macro_sum / static_cast<double>(result.categories_used);
  result.micro = BreakEvenPoint(PrecisionRecallCurve(pooled));
  return result;
}

std::vector<JudgedPair> LoadWordPairs(const std::string& path) {
  return LoadPairsCsv(path, "word1", "word2");
}

std::vector<JudgedPair> LoadDocPairs(const std::string& pairs_path,
                                     const std::string& documents_path) {
  std::ifstream in(documents_path);
  if (!in) throw Error("cannot open " + documents_path);
  std::map<std::string, std::string> texts;
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    auto fail = [&](const std::string& problem) {
      return Error(documents_path + " line " + std::to_string(line_number) +
                   ": " + problem);
    };
    nlohmann::json record;
    try {
      record = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw fail(std::string("invalid JSON: ") + e.what());
    }
    auto id = record.find("id");
    auto text = record.find("text");
    if (id == record.end()) throw fail("missing field 'id'");
    if (text == record.end() || !text->is_string()) {
      throw fail("field 'text' missing or not a string");
    }
    std::string key = id->is_string() ? id->get<std::string>()
                      : id->is_number_integer()
                          ? std::to_string(id->get<std::int64_t>())
                          : throw fail("field 'id' must be a string or integer");
    if (!texts.emplace(key, text->get<std::string>()).second) {
      throw fail("duplicate document id " + key);
    }
  }
  if (texts.empty()) throw Error(documents_path + ": empty dataset");
  std::vector<JudgedPair> pairs = LoadPairsCsv(pairs_path, "doc_id_a", "doc_id_b");
  for (JudgedPair& pair : pairs) {
    auto a = texts.find(pair.item_a);
    auto b = texts.find(pair.item_b);
    if (a == texts.end() || b == texts.end()) {
      throw Error(pairs_path + ": unknown document id in pair (" + pair.item_a +
                  ", " + pair.item_b + ")");
    }
    pair.item_a = a->second;
    pair.item_b = b->second;
  }
  return pairs;
}

SplitAgreement SplitJudgeAgreement(
    const std::vector<std::vector<std::optional<double>>>& per_pair_judges,
    const std::vector<std::size_t>& first_group) {
  std::set<std::size_t> first(first_group.begin(), first_group.end());
  SplitAgreement result;
  std::vector<double> first_means;
  std::vector<double> second_means;
  for (const auto& judges : per_pair_judges) {
    double sum[2] = {0.0, 0.0};
    std::size_t count[2] = {0, 0};
    for (std::size_t j = 0; j < judges.size(); ++j) {
      if (!judges[j]) continue;
      int half = first.count(j) ? 0 : 1;
      sum[half] += *judges[j];
      ++count[half];
    }
    if (count[0] == 0 || count[1] == 0) {
      ++result.pairs_excluded;
      continue;
    }
    first_means.push_back(sum[0] / static_cast<double>(count[0]));
    second_means.push_back(sum[1] / static_cast<double>(count[1]));
  }
  result.pairs_used = first_means.size();
  result.correlation = Spearman(first_means, second_means);
  return result;
}

}  // namespace esa

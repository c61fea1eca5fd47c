#include "esa/index.h"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "esa/error.h"
#include "esa/parallel.h"

namespace esa {

const char* NormalizationAxisName(NormalizationAxis axis) {
  return axis == NormalizationAxis::kConcept ? "concept" : "term";
}

NormalizationAxis ParseNormalizationAxis(std::string_view name) {
  if (name == "concept") return NormalizationAxis::kConcept;
  if (name == "term") return NormalizationAxis::kTerm;
  throw Error("unknown normalization axis: " + std::string(name));
}

std::optional<std::size_t> WeightedTable::TermId(std::string_view term) const {
  auto found = std::lower_bound(terms.begin(), terms.end(), term);
  if (found == terms.end() || *found != term) return std::nullopt;
  return static_cast<std::size_t>(found - terms.begin());
}

double TermFrequency(std::size_t count) {
  return count == 0 ? 0.0 : 1.0 + std::log(static_cast<double>(count));
}

WeightedTable BuildTable(const std::vector<ConceptDocument>& documents,
                         const std::set<std::string>& vocabulary,
                         NormalizationAxis axis, int threads) {
  WeightedTable table;
  table.concept_count = documents.size();
  table.terms.assign(vocabulary.begin(), vocabulary.end());
  const std::size_t r = table.terms.size();
  {
    std::set<ConceptId> ids;
    for (const ConceptDocument& doc : documents) {
      if (!ids.insert(doc.id).second) {
        throw Error("concept " + std::to_string(doc.id) +
                    " appears twice in the table input");
      }
    }
  }
  std::unordered_map<std::string_view, std::size_t> term_ids;
  for (std::size_t t = 0; t < r; ++t) term_ids.emplace(table.terms[t], t);

  // Per document: (term id, occurrence count), sorted by term id.
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> counts(
      documents.size());
  ParallelFor(documents.size(), threads, [&](std::size_t d) {
    std::map<std::size_t, std::size_t> local;
    for (const std::string& term : documents[d].terms) {
      auto found = term_ids.find(term);
      if (found != term_ids.end()) ++local[found->second];
    }
    if (local.empty()) {
      throw Error("concept " + std::to_string(documents[d].id) +
                  " has no vocabulary terms; it should have been pruned");
    }
    counts[d].assign(local.begin(), local.end());
  });

  table.document_frequency.assign(r, 0);
  for (const auto& doc_counts : counts) {
    for (const auto& [term, count] : doc_counts) ++table.document_frequency[term];
  }
  const double n = static_cast<double>(documents.size());
  std::vector<double> idf(r, 0.0);
  for (std::size_t t = 0; t < r; ++t) {
    if (table.document_frequency[t] > 0) {
      idf[t] = std::log(n / static_cast<double>(table.document_frequency[t]));
    }
  }

  // Raw tf.idf weights per document, aligned with counts[d].
  std::vector<std::vector<double>> weights(documents.size());
  ParallelFor(documents.size(), threads, [&](std::size_t d) {
    weights[d].reserve(counts[d].size());
    for (const auto& [term, count] : counts[d]) {
      weights[d].push_back(TermFrequency(count) * idf[term]);
    }
    if (axis == NormalizationAxis::kConcept) {
      double sum = 0.0;
      for (double w : weights[d]) sum += w * w;
      if (sum > 0.0) {
        double norm = std::sqrt(sum);
        for (double& w : weights[d]) w /= norm;
      }
    }
  });
  if (axis == NormalizationAxis::kTerm) {
    std::vector<double> sums(r, 0.0);
    for (std::size_t d = 0; d < documents.size(); ++d) {
      for (std::size_t e = 0; e < counts[d].size(); ++e) {
        sums[counts[d][e].first] += weights[d][e] * weights[d][e];
      }
    }
    for (std::size_t d = 0; d < documents.size(); ++d) {
      for (std::size_t e = 0; e < counts[d].size(); ++e) {
        double sum = sums[counts[d][e].first];
        if (sum > 0.0) weights[d][e] /= std::sqrt(sum);
      }
    }
  }

  table.postings.assign(r, {});
  for (std::size_t d = 0; d < documents.size(); ++d) {
    bool any = false;
    for (std::size_t e = 0; e < counts[d].size(); ++e) {
      if (weights[d][e] > 0.0) {
        table.postings[counts[d][e].first].push_back(
            {documents[d].id, weights[d][e]});
        any = true;
      }
    }
    if (!any) table.zero_columns.push_back(documents[d].id);
  }
  std::sort(table.zero_columns.begin(), table.zero_columns.end());
  ParallelFor(r, threads, [&](std::size_t t) {
    std::sort(table.postings[t].begin(), table.postings[t].end(),
              PostingBefore);
  });
  return table;
}

void IndexPruneSpec::Validate() const {
  if (window < 2) throw Error("index prune window must be at least 2");
  if (!(drop_fraction > 0.0 && drop_fraction < 1.0)) {
    throw Error("index prune drop fraction must lie in (0, 1)");
  }
}

std::size_t PrunedLength(std::span<const Posting> postings,
                         const IndexPruneSpec& spec) {
  const std::size_t size = postings.size();
  if (size < spec.window) return size;
  const double threshold = spec.drop_fraction * postings.front().weight;
  for (std::size_t start = 0; start + spec.window <= size; ++start) {
    double drop =
        postings[start].weight - postings[start + spec.window - 1].weight;
    if (drop < threshold) return std::max<std::size_t>(start, 1);
  }
  return size;
}

std::vector<Posting> PrunePostings(std::vector<Posting> postings,
                                   const IndexPruneSpec& spec) {
  postings.resize(PrunedLength(postings, spec));
  return postings;
}

std::vector<TermPruneStat> PruneTable(WeightedTable* table,
                                      const IndexPruneSpec& spec) {
  spec.Validate();
  std::vector<TermPruneStat> stats;
  stats.reserve(table->term_count());
  for (std::size_t t = 0; t < table->term_count(); ++t) {
    std::vector<Posting>& row = table->postings[t];
    TermPruneStat stat{table->terms[t], row.size(), 0};
    row.resize(PrunedLength(row, spec));
    stat.kept = row.size();
    stats.push_back(std::move(stat));
  }
  return stats;
}

const Concept* InvertedIndex::FindConcept(ConceptId id) const {
  auto found = std::lower_bound(
      concepts.begin(), concepts.end(), id,
      [](const Concept& c, ConceptId value) { return c.id < value; });
  if (found == concepts.end() || found->id != id) return nullptr;
  return &*found;
}

}  // namespace esa

#ifndef ESA_INDEX_H_
#define ESA_INDEX_H_

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "esa/corpus.h"

namespace esa {

struct Posting {
  ConceptId concept_id = 0;
  double weight = 0.0;

  friend bool operator==(const Posting&, const Posting&) = default;
};

// Posting order used everywhere: weight descending, concept id ascending.
inline bool PostingBefore(const Posting& a, const Posting& b) {
  if (a.weight != b.weight) return a.weight > b.weight;
  return a.concept_id < b.concept_id;
}

// Which vectors of the term x concept table are scaled to unit length.
// kConcept normalizes every concept's document vector; kTerm normalizes every
// term's row instead.
enum class NormalizationAxis { kConcept, kTerm };

const char* NormalizationAxisName(NormalizationAxis axis);
NormalizationAxis ParseNormalizationAxis(std::string_view name);

// A concept's processed document: its id and the stems of its text.
struct ConceptDocument {
  ConceptId id = 0;
  std::vector<std::string> terms;
};

// The term -> concept TFIDF table stored row-wise as an inverted index.
struct WeightedTable {
  std::size_t concept_count = 0;          // n
  std::vector<std::string> terms;         // sorted; term id = position
  std::vector<std::size_t> document_frequency;
  std::vector<std::vector<Posting>> postings;
  // Concepts all of whose weights vanished (every term has idf 0).
  std::vector<ConceptId> zero_columns;

  std::size_t term_count() const { return terms.size(); }
  bool degenerate() const { return !zero_columns.empty(); }
  std::optional<std::size_t> TermId(std::string_view term) const;
};

// 1 + ln(count) for a positive count, 0 otherwise.
double TermFrequency(std::size_t count);

// Builds the table over `documents`, counting only terms in `vocabulary`.
// Entry (term, concept) = tf * ln(n / df), then normalized along `axis`.
// Throws esa::Error for a document without vocabulary terms or a repeated
// concept id.
WeightedTable BuildTable(const std::vector<ConceptDocument>& documents,
                         const std::set<std::string>& vocabulary,
                         NormalizationAxis axis = NormalizationAxis::kConcept,
                         int threads = 1);

struct IndexPruneSpec {
  std::size_t window = 100;
  double drop_fraction = 0.05;

  void Validate() const;
};

// Length of the prefix kept by the sliding-window scan: the first start s
// with weight[s] - weight[s + window - 1] < drop_fraction * weight[0], or the
// full length when no window qualifies. Never less than 1 for a non-empty
// list. `postings` must be in PostingBefore order.
std::size_t PrunedLength(std::span<const Posting> postings,
                         const IndexPruneSpec& spec);

std::vector<Posting> PrunePostings(std::vector<Posting> postings,
                                   const IndexPruneSpec& spec);

struct TermPruneStat {
  std::string term;
  std::size_t total = 0;
  std::size_t kept = 0;
};

// Applies PrunePostings to every row of `table`; returns per-term counts.
std::vector<TermPruneStat> PruneTable(WeightedTable* table,
                                      const IndexPruneSpec& spec);

// Everything the interpreter needs at query time, as persisted on disk.
struct InvertedIndex {
  WeightedTable table;              // pruned rows
  std::vector<Concept> concepts;    // sorted by id
  std::vector<std::pair<ConceptId, ConceptId>> links;  // among concepts
  std::map<std::string, std::string> build_parameters;
  std::string corpus_checksum;

  const Concept* FindConcept(ConceptId id) const;
};

inline constexpr int kIndexFormatVersion = 1;

// Writes manifest.json, vocab.tsv, postings.bin, concepts.tsv and links.tsv
// into `directory` (created if missing). Output bytes depend only on `index`.
void SaveIndex(const InvertedIndex& index, const std::string& directory);

// Throws esa::Error on a missing file, unknown format version, or a file
// whose size or CRC-32 disagrees with the manifest.
InvertedIndex LoadIndex(const std::string& directory);

// Hex CRC-32 of a byte string.
std::string Crc32Hex(std::string_view bytes);

}  // namespace esa

#endif  // ESA_INDEX_H_

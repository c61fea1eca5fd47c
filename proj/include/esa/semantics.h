#ifndef ESA_SEMANTICS_H_
#define ESA_SEMANTICS_H_

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "esa/corpus.h"
#include "esa/index.h"
#include "esa/textproc.h"

namespace esa {

enum class InterpretationOrder { kFirst, kSecond };

struct ConceptWeight {
  ConceptId concept_id = 0;
  double weight = 0.0;

  friend bool operator==(const ConceptWeight&, const ConceptWeight&) = default;
};

// Sparse non-negative vector over concepts, entries sorted by concept id.
class InterpretationVector {
 public:
  InterpretationVector() = default;

  // Entries may come in any order; repeated ids are summed. Throws esa::Error
  // on a negative or non-finite weight.
  static InterpretationVector FromEntries(
      std::vector<ConceptWeight> entries,
      InterpretationOrder order = InterpretationOrder::kFirst);

  const std::vector<ConceptWeight>& entries() const { return entries_; }
  InterpretationOrder order() const { return order_; }
  bool empty() const { return entries_.empty(); }
  std::size_t size() const { return entries_.size(); }

  double Get(ConceptId id) const;
  double Norm() const;

  // The k largest entries, weight descending then id ascending.
  std::vector<ConceptWeight> TopK(std::size_t k) const;

  friend bool operator==(const InterpretationVector&,
                         const InterpretationVector&) = default;

 private:
  std::vector<ConceptWeight> entries_;
  InterpretationOrder order_ = InterpretationOrder::kFirst;
};

// Outgoing links between concepts plus each concept's inlink count, the
// only graph facts second-order interpretation uses.
class ConceptGraph {
 public:
  ConceptGraph() = default;

  static ConceptGraph FromLinkGraph(const LinkGraph& graph);
  static ConceptGraph FromIndex(const InvertedIndex& index);

  void AddLink(ConceptId source, ConceptId target);
  void SetInlinks(ConceptId id, std::size_t inlinks);

  std::size_t Inlinks(ConceptId id) const;
  const std::vector<ConceptId>& Targets(ConceptId source) const;

 private:
  std::unordered_map<ConceptId, std::vector<ConceptId>> out_;
  std::unordered_map<ConceptId, std::size_t> inlinks_;
};

// log10(inlinks_a) - log10(inlinks_b) > 1, with counts below 1 read as 1.
bool IsMoreGeneral(std::size_t inlinks_a, std::size_t inlinks_b);
bool IsMoreGeneral(ConceptId a, ConceptId b, const ConceptGraph& graph);

// w2[i] = w1[i] + alpha * sum of w1[j] over links j -> i. With
// `generality_only`, a link j -> i contributes only when i is more general
// than j. Throws esa::Error if `v` is already second order or alpha < 0.
InterpretationVector SecondOrder(const InterpretationVector& v,
                                 const ConceptGraph& graph, double alpha,
                                 bool generality_only);

struct RelatednessScore {
  double score = 0.0;
  bool empty = false;  // at least one side had no concepts
};

// Cosine of two vectors, clamped to [0, 1]; 0 with `empty` set when either
// vector has zero norm.
RelatednessScore Cosine(const InterpretationVector& a,
                        const InterpretationVector& b);

struct RelatednessOptions {
  InterpretationOrder order = InterpretationOrder::kFirst;
  double alpha = 0.5;
  bool generality_only = false;
};

// Query-time view of an index.
class Interpreter {
 public:
  explicit Interpreter(InvertedIndex index,
                       StopWordList stops = StopWordList::Default());

  const InvertedIndex& index() const { return index_; }
  const ConceptGraph& graph() const { return graph_; }
  const StopWordList& stop_words() const { return stops_; }

  // Row of the table for one word (lowercased and stemmed first).
  InterpretationVector InterpretTerm(std::string_view word) const;
  // Same, for an already-stemmed term.
  InterpretationVector InterpretStem(std::string_view stem) const;

  // Centroid of the per-token vectors. Every token counts toward the
  // divisor, including tokens outside the vocabulary.
  InterpretationVector InterpretStems(const std::vector<std::string>& stems) const;
  InterpretationVector InterpretTokens(const std::vector<Token>& tokens) const;
  InterpretationVector InterpretText(std::string_view text) const;

  InterpretationVector Interpret(std::string_view text,
                                 const RelatednessOptions& options) const;

  RelatednessScore Relatedness(std::string_view text_a, std::string_view text_b,
                               const RelatednessOptions& options = {}) const;

 private:
  InvertedIndex index_;
  StopWordList stops_;
  ConceptGraph graph_;
};

}  // namespace esa

#endif  // ESA_SEMANTICS_H_

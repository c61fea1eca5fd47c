#include "esa/semantics.h"

#include <algorithm>
#include <cmath>

#include "esa/error.h"
#include "esa/porter_stemmer.h"

namespace esa {

InterpretationVector InterpretationVector::FromEntries(
    std::vector<ConceptWeight> entries, InterpretationOrder order) {
  for (const ConceptWeight& e : entries) {
    if (!(e.weight >= 0.0) || !std::isfinite(e.weight)) {
      throw Error("interpretation weights must be finite and non-negative");
    }
  }
  std::stable_sort(entries.begin(), entries.end(),
                   [](const ConceptWeight& a, const ConceptWeight& b) {
                     return a.concept_id < b.concept_id;
                   });
  InterpretationVector v;
  v.order_ = order;
  for (const ConceptWeight& e : entries) {
    if (!v.entries_.empty() && v.entries_.back().concept_id == e.concept_id) {
      v.entries_.back().weight += e.weight;
    } else {
      v.entries_.push_back(e);
    }
  }
  return v;
}

double InterpretationVector::Get(ConceptId id) const {
  auto found = std::lower_bound(
      entries_.begin(), entries_.end(), id,
      [](const ConceptWeight& e, ConceptId value) { return e.concept_id < value; });
  return found != entries_.end() && found->concept_id == id ? found->weight
                                                             : 0.0;
}

double InterpretationVector::Norm() const {
  double sum = 0.0;
  for (const ConceptWeight& e : entries_) sum += e.weight * e.weight;
  return std::sqrt(sum);
}

std::vector<ConceptWeight> InterpretationVector::TopK(std::size_t k) const {
  std::vector<ConceptWeight> sorted = entries_;
  auto before = [](const ConceptWeight& a, const ConceptWeight& b) {
    if (a.weight != b.weight) return a.weight > b.weight;
    return a.concept_id < b.concept_id;
  };
  if (k < sorted.size()) {
    std::partial_sort(sorted.begin(), sorted.begin() + k, sorted.end(), before);
    sorted.resize(k);
  } else {
    std::sort(sorted.begin(), sorted.end(), before);
  }
  return sorted;
}

ConceptGraph ConceptGraph::FromLinkGraph(const LinkGraph& graph) {
  ConceptGraph out;
  for (const auto& [source, target] : graph.edges) out.AddLink(source, target);
  for (const auto& [id, count] : graph.in_degree) out.SetInlinks(id, count);
  return out;
}

ConceptGraph ConceptGraph::FromIndex(const InvertedIndex& index) {
  ConceptGraph out;
  for (const auto& [source, target] : index.links) out.AddLink(source, target);
  for (const Concept& c : index.concepts) out.SetInlinks(c.id, c.inlinks);
  return out;
}

void ConceptGraph::AddLink(ConceptId source, ConceptId target) {
  std::vector<ConceptId>& targets = out_[source];
  auto pos = std::lower_bound(targets.begin(), targets.end(), target);
  if (pos == targets.end() || *pos != target) targets.insert(pos, target);
}

void ConceptGraph::SetInlinks(ConceptId id, std::size_t inlinks) {
  inlinks_[id] = inlinks;
}

std::size_t ConceptGraph::Inlinks(ConceptId id) const {
  auto found = inlinks_.find(id);
  return found == inlinks_.end() ? 0 : found->second;
}

const std::vector<ConceptId>& ConceptGraph::Targets(ConceptId source) const {
  static const std::vector<ConceptId> kNone;
  auto found = out_.find(source);
  return found == out_.end() ? kNone : found->second;
}

bool IsMoreGeneral(std::size_t inlinks_a, std::size_t inlinks_b) {
  double a = static_cast<double>(std::max<std::size_t>(inlinks_a, 1));
  double b = static_cast<double>(std::max<std::size_t>(inlinks_b, 1));
  return std::log10(a) - std::log10(b) > 1.0;
}

bool IsMoreGeneral(ConceptId a, ConceptId b, const ConceptGraph& graph) {
  return IsMoreGeneral(graph.Inlinks(a), graph.Inlinks(b));
}

InterpretationVector SecondOrder(const InterpretationVector& v,
                                 const ConceptGraph& graph, double alpha,
                                 bool generality_only) {
  if (v.order() == InterpretationOrder::kSecond) {
    throw Error("vector is already second order");
  }
  if (!(alpha >= 0.0)) throw Error("alpha must be non-negative");
  // Contributions are gathered per target and added in source-id order, so
  // the result does not depend on hash iteration order.
  std::vector<ConceptWeight> entries = v.entries();
  for (const ConceptWeight& source : v.entries()) {
    if (source.weight == 0.0) continue;
    for (ConceptId target : graph.Targets(source.concept_id)) {
      if (generality_only && !IsMoreGeneral(target, source.concept_id, graph)) {
        continue;
      }
      entries.push_back({target, alpha * source.weight});
    }
  }
  return InterpretationVector::FromEntries(std::move(entries),
                                           InterpretationOrder::kSecond);
}

RelatednessScore Cosine(const InterpretationVector& a,
                        const InterpretationVector& b) {
  double norm_a = a.Norm();
  double norm_b = b.Norm();
  if (norm_a == 0.0 || norm_b == 0.0) return {0.0, true};
  double dot = 0.0;
  auto ia = a.entries().begin();
  auto ib = b.entries().begin();
  while (ia != a.entries().end() && ib != b.entries().end()) {
    if (ia->concept_id < ib->concept_id) {
      ++ia;
    } else if (ib->concept_id < ia->concept_id) {
      ++ib;
    } else {
      dot += ia->weight * ib->weight;
      ++ia;
      ++ib;
    }
  }
  double score = dot / (norm_a * norm_b);
  return {std::clamp(score, 0.0, 1.0), false};
}

Interpreter::Interpreter(InvertedIndex index, StopWordList stops)
    : index_(std::move(index)),
      stops_(std::move(stops)),
      graph_(ConceptGraph::FromIndex(index_)) {}

InterpretationVector Interpreter::InterpretStem(std::string_view stem) const {
  auto term = index_.table.TermId(stem);
  if (!term) return {};
  std::vector<ConceptWeight> entries;
  for (const Posting& p : index_.table.postings[*term]) {
    entries.push_back({p.concept_id, p.weight});
  }
  return InterpretationVector::FromEntries(std::move(entries));
}

InterpretationVector Interpreter::InterpretTerm(std::string_view word) const {
  std::string lower(word);
  for (char& ch : lower) {
    if (ch >= 'A' && ch <= 'Z') ch = static_cast<char>(ch - 'A' + 'a');
  }
  return InterpretStem(PorterStem(lower));
}

InterpretationVector Interpreter::InterpretStems(
    const std::vector<std::string>& stems) const {
  if (stems.empty()) return {};
  // Summing per distinct stem in sorted order makes the result independent
  // of token order, bit for bit.
  std::map<std::string_view, std::size_t> multiplicity;
  for (const std::string& stem : stems) ++multiplicity[stem];
  std::unordered_map<ConceptId, double> sums;
  for (const auto& [stem, count] : multiplicity) {
    auto term = index_.table.TermId(stem);
    if (!term) continue;
    for (const Posting& p : index_.table.postings[*term]) {
      sums[p.concept_id] += static_cast<double>(count) * p.weight;
    }
  }
  const double divisor = static_cast<double>(stems.size());
  std::vector<ConceptWeight> entries;
  entries.reserve(sums.size());
  for (const auto& [id, sum] : sums) entries.push_back({id, sum / divisor});
  return InterpretationVector::FromEntries(std::move(entries));
}

InterpretationVector Interpreter::InterpretTokens(
    const std::vector<Token>& tokens) const {
  return InterpretStems(Stems(tokens));
}

InterpretationVector Interpreter::InterpretText(std::string_view text) const {
  return InterpretTokens(Tokenize(text, stops_));
}

InterpretationVector Interpreter::Interpret(
    std::string_view text, const RelatednessOptions& options) const {
  InterpretationVector v = InterpretText(text);
  if (options.order == InterpretationOrder::kSecond) {
    v = SecondOrder(v, graph_, options.alpha, options.generality_only);
  }
  return v;
}

RelatednessScore Interpreter::Relatedness(
    std::string_view text_a, std::string_view text_b,
    const RelatednessOptions& options) const {
  return Cosine(Interpret(text_a, options), Interpret(text_b, options));
}

}  // namespace esa

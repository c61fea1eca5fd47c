#ifndef ESA_BUILDER_H_
#define ESA_BUILDER_H_

#include <cstddef>
#include <string>
#include <vector>

#include "esa/corpus.h"
#include "esa/index.h"
#include "esa/textproc.h"

namespace esa {

struct BuildOptions {
  PruningPolicy pruning;
  std::size_t min_term_articles = 3;
  IndexPruneSpec index_prune;
  NormalizationAxis axis = NormalizationAxis::kConcept;
  // Append the anchor texts of incoming links to each concept's text.
  bool use_anchor_text = true;
  int template_depth = kDefaultTemplateDepth;
  int threads = 1;
};

// Article counts at each stage of the build, plus per-term pruning figures.
struct BuildReport {
  std::size_t records = 0;
  std::size_t templates = 0;
  std::size_t redirects_resolved = 0;
  std::size_t redirect_missing_warnings = 0;
  std::size_t redirect_cycle_warnings = 0;
  std::size_t duplicate_title_warnings = 0;
  std::size_t canonical_articles = 0;
  std::size_t unknown_template_warnings = 0;
  std::size_t template_depth_warnings = 0;
  std::size_t links = 0;
  std::size_t missing_link_targets = 0;
  PruneStats pruning;
  std::size_t dropped_no_vocabulary = 0;
  std::size_t concepts = 0;
  std::size_t terms_before_rare_filter = 0;
  std::size_t terms = 0;
  std::size_t zero_weight_concepts = 0;
  std::size_t terms_pruned = 0;
  std::size_t postings_total = 0;
  std::size_t postings_kept = 0;
  std::vector<TermPruneStat> term_prune_stats;

  // Human-readable summary.
  std::string Summary(std::size_t top_pruned_terms = 10) const;
};

// Runs the full pipeline: redirects, templates, link graph, article pruning,
// tokenization, rare-term removal, TFIDF table and index pruning. Throws
// esa::Error when no concept survives.
InvertedIndex BuildIndex(const std::vector<RawArticle>& articles,
                         const BuildOptions& options, const StopWordList& stops,
                         BuildReport* report = nullptr);

}  // namespace esa

#endif  // ESA_BUILDER_H_

#include "esa/builder.h"

#include <algorithm>
#include <set>
#include <sstream>

#include "esa/error.h"
#include "esa/parallel.h"

namespace esa {
namespace {

std::string FormatDouble(double v) {
  std::ostringstream out;
  out.precision(17);
  out << v;
  return out.str();
}

std::map<std::string, std::string> DescribeOptions(const BuildOptions& options) {
  std::map<std::string, std::string> params;
  params["min_non_stop_words"] =
      std::to_string(options.pruning.min_non_stop_words);
  params["min_total_links"] = std::to_string(options.pruning.min_total_links);
  std::string kinds;
  for (ArticleKind kind : options.pruning.drop_kinds) {
    if (!kinds.empty()) kinds += ",";
    kinds += ArticleKindName(kind);
  }
  params["drop_kinds"] = kinds;
  std::string patterns;
  for (const std::string& p : options.pruning.date_title_patterns) {
    if (!patterns.empty()) patterns += " ; ";
    patterns += p;
  }
  params["date_title_patterns"] = patterns;
  params["min_term_articles"] = std::to_string(options.min_term_articles);
  params["prune_window"] = std::to_string(options.index_prune.window);
  params["prune_drop_fraction"] = FormatDouble(options.index_prune.drop_fraction);
  params["normalization"] = NormalizationAxisName(options.axis);
  params["use_anchor_text"] = options.use_anchor_text ? "true" : "false";
  params["template_depth"] = std::to_string(options.template_depth);
  return params;
}

}  // namespace

std::string BuildReport::Summary(std::size_t top_pruned_terms) const {
  std::ostringstream out;
  out << "records read:                 " << records << "\n"
      << "  templates:                  " << templates << "\n"
      << "  redirects resolved:         " << redirects_resolved << "\n"
      << "  redirects dropped (missing target): " << redirect_missing_warnings
      << "\n"
      << "  redirects dropped (cycle):  " << redirect_cycle_warnings << "\n"
      << "  duplicate titles ignored:   " << duplicate_title_warnings << "\n"
      << "canonical articles:           " << canonical_articles << "\n"
      << "  unknown templates:          " << unknown_template_warnings << "\n"
      << "  template depth cap hits:    " << template_depth_warnings << "\n"
      << "link graph edges:             " << links << "\n"
      << "  links to missing titles:    " << missing_link_targets << "\n"
      << "article pruning:\n"
      << "  dropped by kind:            " << pruning.dropped_kind << "\n"
      << "  dropped (too few words):    " << pruning.dropped_words << "\n"
      << "  dropped (too few links):    " << pruning.dropped_links << "\n"
      << "  dropped (no vocabulary):    " << dropped_no_vocabulary << "\n"
      << "concepts retained:            " << concepts << "\n"
      << "terms before rare filter:     " << terms_before_rare_filter << "\n"
      << "terms retained:               " << terms << "\n"
      << "zero-weight concepts:         " << zero_weight_concepts << "\n"
      << "index pruning:\n"
      << "  terms pruned:               " << terms_pruned << "\n"
      << "  postings kept:              " << postings_kept << " of "
      << postings_total << "\n";
  std::vector<const TermPruneStat*> pruned;
  for (const TermPruneStat& stat : term_prune_stats) {
    if (stat.kept < stat.total) pruned.push_back(&stat);
  }
  std::sort(pruned.begin(), pruned.end(),
            [](const TermPruneStat* a, const TermPruneStat* b) {
              if (a->total != b->total) return a->total > b->total;
              return a->term < b->term;
            });
  if (pruned.size() > top_pruned_terms) pruned.resize(top_pruned_terms);
  for (const TermPruneStat* stat : pruned) {
    out << "    " << stat->term << ": kept " << stat->kept << " of "
        << stat->total << "\n";
  }
  return out.str();
}

InvertedIndex BuildIndex(const std::vector<RawArticle>& articles,
                         const BuildOptions& options, const StopWordList& stops,
                         BuildReport* report) {
  options.index_prune.Validate();
  BuildReport local;
  local.records = articles.size();
  TemplateStore templates = CollectTemplates(articles);
  local.templates = templates.size();

  RedirectResolution redirects = ResolveRedirects(articles);
  local.redirects_resolved = redirects.resolved_redirects;
  local.redirect_missing_warnings = redirects.missing_target_warnings;
  local.redirect_cycle_warnings = redirects.cycle_warnings;
  local.duplicate_title_warnings = redirects.duplicate_title_warnings;
  std::vector<RawArticle> canonical = std::move(redirects.canonical);
  local.canonical_articles = canonical.size();

  std::vector<TemplateExpansion> expansions(canonical.size());
  ParallelFor(canonical.size(), options.threads, [&](std::size_t i) {
    expansions[i] =
        ResolveTemplates(canonical[i].body, templates, options.template_depth);
  });
  for (std::size_t i = 0; i < canonical.size(); ++i) {
    canonical[i].body = std::move(expansions[i].text);
    local.unknown_template_warnings += expansions[i].unknown_template_warnings;
    local.template_depth_warnings += expansions[i].depth_cap_warnings;
  }

  LinkGraph graph =
      BuildLinkGraph(canonical, redirects.title_to_id, options.threads);
  local.links = graph.edges.size();
  local.missing_link_targets = graph.missing_target_links;

  std::vector<Concept> concepts =
      PruneArticles(canonical, graph, options.pruning, stops, &local.pruning);
  if (concepts.empty()) throw Error("no concepts survive pruning");

  std::map<ArticleId, const RawArticle*> by_id;
  for (const RawArticle& article : canonical) by_id[article.id] = &article;

  std::vector<ConceptDocument> documents(concepts.size());
  ParallelFor(concepts.size(), options.threads, [&](std::size_t c) {
    documents[c].id = concepts[c].id;
    const RawArticle& article = *by_id.at(concepts[c].id);
    documents[c].terms =
        Stems(Tokenize(ExtractLinks(article.body).plain_text, stops));
    if (options.use_anchor_text) {
      auto anchors = graph.anchors.find(concepts[c].id);
      if (anchors != graph.anchors.end()) {
        for (const std::string& anchor : anchors->second) {
          for (std::string& stem : Stems(Tokenize(anchor, stops))) {
            documents[c].terms.push_back(std::move(stem));
          }
        }
      }
    }
  });

  std::map<std::string, std::size_t> article_frequency;
  for (const ConceptDocument& doc : documents) {
    std::set<std::string> distinct(doc.terms.begin(), doc.terms.end());
    for (const std::string& term : distinct) ++article_frequency[term];
  }
  local.terms_before_rare_filter = article_frequency.size();
  std::set<std::string> vocabulary =
      RemoveRareTerms(article_frequency, options.min_term_articles);

  std::vector<ConceptDocument> kept_documents;
  std::vector<Concept> kept_concepts;
  for (std::size_t c = 0; c < documents.size(); ++c) {
    bool has_term = std::any_of(
        documents[c].terms.begin(), documents[c].terms.end(),
        [&](const std::string& t) { return vocabulary.count(t) > 0; });
    if (!has_term) {
      ++local.dropped_no_vocabulary;
      continue;
    }
    kept_documents.push_back(std::move(documents[c]));
    kept_concepts.push_back(std::move(concepts[c]));
  }
  if (kept_concepts.empty()) throw Error("no concepts survive pruning");

  InvertedIndex index;
  index.table =
      BuildTable(kept_documents, vocabulary, options.axis, options.threads);
  local.term_prune_stats = PruneTable(&index.table, options.index_prune);
  for (const TermPruneStat& stat : local.term_prune_stats) {
    local.postings_total += stat.total;
    local.postings_kept += stat.kept;
    if (stat.kept < stat.total) ++local.terms_pruned;
  }
  local.concepts = kept_concepts.size();
  local.terms = index.table.term_count();
  local.zero_weight_concepts = index.table.zero_columns.size();

  std::sort(kept_concepts.begin(), kept_concepts.end(),
            [](const Concept& a, const Concept& b) { return a.id < b.id; });
  std::set<ConceptId> ids;
  for (const Concept& c : kept_concepts) ids.insert(c.id);
  for (const auto& [source, target] : graph.edges) {
    if (ids.count(source) && ids.count(target)) {
      index.links.emplace_back(source, target);
    }
  }
  index.concepts = std::move(kept_concepts);
  index.build_parameters = DescribeOptions(options);
  if (report) *report = std::move(local);
  return index;
}

}  // namespace esa

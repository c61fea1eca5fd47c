#ifndef ESA_CORPUS_H_
#define ESA_CORPUS_H_

#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <regex>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "esa/textproc.h"

namespace esa {

using ArticleId = std::uint32_t;
using ConceptId = ArticleId;

enum class ArticleKind {
  kRegular,
  kDisambiguation,
  kDate,
  kCategory,
  kOtherMeta,
  kTemplate,
};

const char* ArticleKindName(ArticleKind kind);
ArticleKind ParseArticleKind(std::string_view name);

struct RawArticle {
  ArticleId id = 0;
  std::string title;
  std::string body;
  std::optional<std::string> redirect_target;
  ArticleKind kind = ArticleKind::kRegular;
};

struct Concept {
  ConceptId id = 0;
  std::string title;
  std::size_t non_stop_word_count = 0;
  std::size_t inlinks = 0;
  std::size_t outlinks = 0;
};

// Canonical form used for every title lookup: surrounding whitespace
// trimmed, underscores read as spaces, runs of spaces collapsed and the first
// letter uppercased.
std::string NormalizeTitle(std::string_view title);

// Reads the JSON-lines corpus format. Blank lines are skipped. Throws
// esa::Error naming the line and field on malformed records and on duplicate
// ids.
std::vector<RawArticle> ParseCorpus(std::istream& in);
std::vector<RawArticle> ParseCorpusFile(const std::string& path);

struct RedirectResolution {
  // Normalized title (canonical or redirect) -> canonical article id.
  std::map<std::string, ArticleId> title_to_id;
  // Non-redirect, non-template articles in input order.
  std::vector<RawArticle> canonical;
  std::size_t resolved_redirects = 0;
  std::size_t missing_target_warnings = 0;
  std::size_t cycle_warnings = 0;
  std::size_t duplicate_title_warnings = 0;
};

// Follows every redirect chain to a non-redirect article. Redirects whose
// chain ends at a missing title, or enters a cycle, are dropped.
RedirectResolution ResolveRedirects(const std::vector<RawArticle>& articles);

// Template name (normalized, without a "Template:" prefix) -> body.
using TemplateStore = std::map<std::string, std::string>;

TemplateStore CollectTemplates(const std::vector<RawArticle>& articles);

struct TemplateExpansion {
  std::string text;
  std::size_t unknown_template_warnings = 0;
  std::size_t depth_cap_warnings = 0;
};

inline constexpr int kDefaultTemplateDepth = 8;

// Replaces {{Name|arg|...}} inclusions by the named template body, with
// {{{1}}}, {{{2|default}}} ... substituted from the positional arguments.
// Nested inclusions are expanded up to `max_depth` levels; deeper ones are
// left verbatim.
TemplateExpansion ResolveTemplates(std::string_view body,
                                   const TemplateStore& templates,
                                   int max_depth = kDefaultTemplateDepth);

struct WikiLink {
  std::string target;  // as written, section anchor removed
  std::string anchor;  // displayed text
};

struct LinkMarkup {
  std::string plain_text;  // links replaced by their anchor text
  std::vector<WikiLink> links;
};

// Extracts [[Target]] and [[Target|anchor]] links.
LinkMarkup ExtractLinks(std::string_view body);

struct LinkGraph {
  std::set<std::pair<ArticleId, ArticleId>> edges;
  std::map<ArticleId, std::size_t> in_degree;
  std::map<ArticleId, std::size_t> out_degree;
  // Target -> every anchor phrase used for it, duplicates included.
  std::map<ArticleId, std::vector<std::string>> anchors;
  std::size_t missing_target_links = 0;
  std::size_t self_links = 0;

  std::size_t InDegree(ArticleId id) const;
  std::size_t OutDegree(ArticleId id) const;
};

// Builds the graph over `articles` (already redirect-resolved and with
// templates expanded). Link targets are looked up through `title_to_id`.
// `threads` > 1 partitions the articles; the result does not depend on it.
LinkGraph BuildLinkGraph(const std::vector<RawArticle>& articles,
                         const std::map<std::string, ArticleId>& title_to_id,
                         int threads = 1);

struct PruningPolicy {
  std::size_t min_non_stop_words = 100;
  std::size_t min_total_links = 5;
  std::set<ArticleKind> drop_kinds = {
      ArticleKind::kDisambiguation, ArticleKind::kDate, ArticleKind::kCategory,
      ArticleKind::kOtherMeta};
  // Titles matching any of these are treated as date articles.
  std::vector<std::string> date_title_patterns = DefaultDatePatterns();

  static std::vector<std::string> DefaultDatePatterns();
};

bool IsDateTitle(std::string_view title,
                 const std::vector<std::string>& patterns);

struct PruneStats {
  std::size_t input = 0;
  std::size_t dropped_kind = 0;
  std::size_t dropped_words = 0;
  std::size_t dropped_links = 0;
  std::size_t kept = 0;
};

// Selects the concept set. Words are counted over the link-stripped body.
// Thresholds are inclusive: an article survives with exactly
// min_non_stop_words words and exactly min_total_links in+out links.
std::vector<Concept> PruneArticles(const std::vector<RawArticle>& articles,
                                   const LinkGraph& graph,
                                   const PruningPolicy& policy,
                                   const StopWordList& stops,
                                   PruneStats* stats = nullptr);

}  // namespace esa

#endif  // ESA_CORPUS_H_

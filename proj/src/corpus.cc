#include "esa/corpus.h"

#include <algorithm>
#include <fstream>
#include <limits>

#include "esa/error.h"
#include "esa/parallel.h"
#include "json.hpp"

namespace esa {
namespace {

using json = nlohmann::json;

std::string Trim(std::string_view s) {
  size_t begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string_view::npos) return "";
  size_t end = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(begin, end - begin + 1));
}

std::string RecordError(size_t line, const std::string& field,
                        const std::string& problem) {
  return "corpus record at line " + std::to_string(line) + ", field '" +
         field + "': " + problem;
}

std::string StripTemplatePrefix(std::string_view title) {
  constexpr std::string_view kPrefix = "Template:";
  if (title.substr(0, kPrefix.size()) == kPrefix) {
    title.remove_prefix(kPrefix.size());
  }
  return NormalizeTitle(title);
}

// Index of the "}}" closing the inclusion opened at `open` (pointing at
// "{{"), honouring nested "{{" pairs; npos when unbalanced.
size_t MatchingClose(std::string_view text, size_t open) {
  int depth = 0;
  size_t i = open;
  while (i + 1 < text.size()) {
    if (text[i] == '{' && text[i + 1] == '{') {
      ++depth;
      i += 2;
    } else if (text[i] == '}' && text[i + 1] == '}') {
      --depth;
      if (depth == 0) return i;
      i += 2;
    } else {
      ++i;
    }
  }
  return std::string_view::npos;
}

// Splits on '|' that are not nested inside braces or links.
std::vector<std::string> SplitTopLevel(std::string_view inner) {
  std::vector<std::string> parts;
  int braces = 0;
  int brackets = 0;
  size_t start = 0;
  for (size_t i = 0; i < inner.size(); ++i) {
    char ch = inner[i];
    if (ch == '{') ++braces;
    if (ch == '}') --braces;
    if (ch == '[') ++brackets;
    if (ch == ']') --brackets;
    if (ch == '|' && braces == 0 && brackets == 0) {
      parts.emplace_back(inner.substr(start, i - start));
      start = i + 1;
    }
  }
  parts.emplace_back(inner.substr(start));
  return parts;
}

// Replaces {{{n}}} and {{{n|default}}} with positional arguments.
std::string SubstituteParameters(std::string_view body,
                                 const std::vector<std::string>& args) {
  std::string out;
  size_t i = 0;
  while (i < body.size()) {
    if (body.compare(i, 3, "{{{") == 0) {
      size_t close = body.find("}}}", i + 3);
      if (close != std::string_view::npos) {
        std::string_view param = body.substr(i + 3, close - i - 3);
        std::string_view name = param;
        std::optional<std::string_view> fallback;
        if (auto bar = param.find('|'); bar != std::string_view::npos) {
          name = param.substr(0, bar);
          fallback = param.substr(bar + 1);
        }
        std::string key = Trim(name);
        bool numeric = !key.empty() &&
                       std::all_of(key.begin(), key.end(),
                                   [](char c) { return c >= '0' && c <= '9'; });
        size_t index = numeric ? std::stoul(key) : 0;
        if (numeric && index >= 1 && index <= args.size()) {
          out += args[index - 1];
        } else if (fallback) {
          out += *fallback;
        }
        i = close + 3;
        continue;
      }
    }
    out += body[i++];
  }
  return out;
}

void Expand(std::string_view text, const TemplateStore& templates, int depth,
            int max_depth, TemplateExpansion* result, std::string* out) {
  size_t i = 0;
  while (i < text.size()) {
    size_t open = text.find("{{", i);
    // Triple braces are parameters, not inclusions.
    while (open != std::string_view::npos &&
           text.compare(open, 3, "{{{") == 0) {
      size_t close = text.find("}}}", open + 3);
      if (close == std::string_view::npos) {
        open = std::string_view::npos;
        break;
      }
      open = text.find("{{", close + 3);
    }
    if (open == std::string_view::npos) {
      out->append(text.substr(i));
      return;
    }
    size_t close = MatchingClose(text, open);
    if (close == std::string_view::npos) {
      out->append(text.substr(i));
      return;
    }
    out->append(text.substr(i, open - i));
    std::string_view inclusion = text.substr(open, close + 2 - open);
    if (depth >= max_depth) {
      ++result->depth_cap_warnings;
      out->append(inclusion);
      i = close + 2;
      continue;
    }
    std::vector<std::string> parts =
        SplitTopLevel(text.substr(open + 2, close - open - 2));
    auto found = templates.find(StripTemplatePrefix(parts[0]));
    if (found == templates.end()) {
      ++result->unknown_template_warnings;
    } else {
      std::vector<std::string> args;
      for (size_t p = 1; p < parts.size(); ++p) {
        std::string expanded;
        Expand(parts[p], templates, depth, max_depth, result, &expanded);
        args.push_back(Trim(expanded));
      }
      std::string body = SubstituteParameters(found->second, args);
      Expand(body, templates, depth + 1, max_depth, result, out);
    }
    i = close + 2;
  }
}

}  // namespace

const char* ArticleKindName(ArticleKind kind) {
  switch (kind) {
    case ArticleKind::kRegular:
      return "regular";
    case ArticleKind::kDisambiguation:
      return "disambiguation";
    case ArticleKind::kDate:
      return "date";
    case ArticleKind::kCategory:
      return "category";
    case ArticleKind::kOtherMeta:
      return "other-meta";
    case ArticleKind::kTemplate:
      return "template";
  }
  return "?";
}

ArticleKind ParseArticleKind(std::string_view name) {
  for (ArticleKind kind :
       {ArticleKind::kRegular, ArticleKind::kDisambiguation, ArticleKind::kDate,
        ArticleKind::kCategory, ArticleKind::kOtherMeta,
        ArticleKind::kTemplate}) {
    if (name == ArticleKindName(kind)) return kind;
  }
  throw Error("unknown article kind: " + std::string(name));
}

std::string NormalizeTitle(std::string_view title) {
  std::string out;
  bool pending_space = false;
  for (char ch : title) {
    if (ch == '_') ch = ' ';
    if (ch == ' ' || ch == '\t' || ch == '\n' || ch == '\r') {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) out += ' ';
    pending_space = false;
    out += ch;
  }
  if (!out.empty() && out[0] >= 'a' && out[0] <= 'z') {
    out[0] = static_cast<char>(out[0] - 'a' + 'A');
  }
  return out;
}

std::vector<RawArticle> ParseCorpus(std::istream& in) {
  std::vector<RawArticle> articles;
  std::set<ArticleId> seen;
  std::string line;
  size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (Trim(line).empty()) continue;
    json record;
    try {
      record = json::parse(line);
    } catch (const json::parse_error& e) {
      throw Error(RecordError(line_number, "<record>",
                              std::string("invalid JSON: ") + e.what()));
    }
    if (!record.is_object()) {
      throw Error(RecordError(line_number, "<record>", "not a JSON object"));
    }
    RawArticle article;
    auto id = record.find("id");
    if (id == record.end() || !id->is_number_integer()) {
      throw Error(RecordError(line_number, "id", "missing or not an integer"));
    }
    auto raw_id = id->get<std::int64_t>();
    if (raw_id < 0 || raw_id > std::numeric_limits<ArticleId>::max()) {
      throw Error(RecordError(line_number, "id", "out of range"));
    }
    article.id = static_cast<ArticleId>(raw_id);
    auto title = record.find("title");
    if (title == record.end() || !title->is_string()) {
      throw Error(RecordError(line_number, "title", "missing or not a string"));
    }
    article.title = title->get<std::string>();
    auto text = record.find("text");
    if (text != record.end()) {
      if (!text->is_string()) {
        throw Error(RecordError(line_number, "text", "not a string"));
      }
      article.body = text->get<std::string>();
    }
    auto redirect = record.find("redirect");
    if (redirect != record.end() && !redirect->is_null()) {
      if (!redirect->is_string()) {
        throw Error(RecordError(line_number, "redirect", "not a string"));
      }
      article.redirect_target = redirect->get<std::string>();
    } else if (text == record.end()) {
      throw Error(RecordError(line_number, "text", "missing"));
    }
    auto kind = record.find("kind");
    if (kind != record.end()) {
      if (!kind->is_string()) {
        throw Error(RecordError(line_number, "kind", "not a string"));
      }
      try {
        article.kind = ParseArticleKind(kind->get<std::string>());
      } catch (const Error& e) {
        throw Error(RecordError(line_number, "kind", e.what()));
      }
    }
    if (!seen.insert(article.id).second) {
      throw Error(RecordError(line_number, "id",
                              "duplicate id " + std::to_string(article.id)));
    }
    articles.push_back(std::move(article));
  }
  return articles;
}

std::vector<RawArticle> ParseCorpusFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open corpus: " + path);
  return ParseCorpus(in);
}

RedirectResolution ResolveRedirects(const std::vector<RawArticle>& articles) {
  RedirectResolution result;
  std::map<std::string, const RawArticle*> by_title;
  for (const RawArticle& article : articles) {
    if (article.kind == ArticleKind::kTemplate) continue;
    if (!by_title.emplace(NormalizeTitle(article.title), &article).second) {
      ++result.duplicate_title_warnings;
    }
  }
  for (const RawArticle& article : articles) {
    if (article.kind == ArticleKind::kTemplate || article.redirect_target) {
      continue;
    }
    auto title = NormalizeTitle(article.title);
    if (by_title.at(title) != &article) continue;
    result.title_to_id[title] = article.id;
    result.canonical.push_back(article);
  }
  for (const RawArticle& article : articles) {
    if (article.kind == ArticleKind::kTemplate || !article.redirect_target) {
      continue;
    }
    std::string title = NormalizeTitle(article.title);
    if (by_title.at(title) != &article) continue;
    std::set<std::string> visited = {title};
    const RawArticle* current = &article;
    bool dropped = false;
    while (current->redirect_target) {
      std::string next = NormalizeTitle(*current->redirect_target);
      auto found = by_title.find(next);
      if (found == by_title.end()) {
        ++result.missing_target_warnings;
        dropped = true;
        break;
      }
      if (!visited.insert(next).second) {
        ++result.cycle_warnings;
        dropped = true;
        break;
      }
      current = found->second;
    }
    if (dropped) continue;
    result.title_to_id[title] = current->id;
    ++result.resolved_redirects;
  }
  return result;
}

TemplateStore CollectTemplates(const std::vector<RawArticle>& articles) {
  TemplateStore store;
  for (const RawArticle& article : articles) {
    if (article.kind == ArticleKind::kTemplate) {
      store.emplace(StripTemplatePrefix(article.title), article.body);
    }
  }
  return store;
}

TemplateExpansion ResolveTemplates(std::string_view body,
                                   const TemplateStore& templates,
                                   int max_depth) {
  TemplateExpansion result;
  Expand(body, templates, 0, max_depth, &result, &result.text);
  return result;
}

LinkMarkup ExtractLinks(std::string_view body) {
  LinkMarkup markup;
  size_t i = 0;
  while (i < body.size()) {
    size_t open = body.find("[[", i);
    if (open == std::string_view::npos) break;
    size_t close = body.find("]]", open + 2);
    if (close == std::string_view::npos) break;
    markup.plain_text.append(body.substr(i, open - i));
    std::string_view inner = body.substr(open + 2, close - open - 2);
    std::string_view target = inner;
    std::string_view anchor = inner;
    if (auto bar = inner.find('|'); bar != std::string_view::npos) {
      target = inner.substr(0, bar);
      anchor = inner.substr(bar + 1);
    }
    if (auto hash = target.find('#'); hash != std::string_view::npos) {
      target = target.substr(0, hash);
    }
    WikiLink link{Trim(target), Trim(anchor)};
    markup.plain_text.append(link.anchor);
    if (!link.target.empty()) markup.links.push_back(std::move(link));
    i = close + 2;
  }
  if (i < body.size()) markup.plain_text.append(body.substr(i));
  return markup;
}

std::size_t LinkGraph::InDegree(ArticleId id) const {
  auto found = in_degree.find(id);
  return found == in_degree.end() ? 0 : found->second;
}

std::size_t LinkGraph::OutDegree(ArticleId id) const {
  auto found = out_degree.find(id);
  return found == out_degree.end() ? 0 : found->second;
}

LinkGraph BuildLinkGraph(const std::vector<RawArticle>& articles,
                         const std::map<std::string, ArticleId>& title_to_id,
                         int threads) {
  struct Partial {
    std::vector<std::pair<ArticleId, ArticleId>> edges;
    std::vector<std::pair<ArticleId, std::string>> anchors;
    size_t missing = 0;
    size_t self = 0;
  };
  std::vector<Partial> partials(ChunkCount(articles.size(), threads));
  ParallelChunks(articles.size(), threads,
                 [&](size_t chunk, size_t begin, size_t end) {
                   Partial& partial = partials[chunk];
                   for (size_t a = begin; a < end; ++a) {
                     const RawArticle& article = articles[a];
                     for (WikiLink& link : ExtractLinks(article.body).links) {
                       auto found = title_to_id.find(NormalizeTitle(link.target));
                       if (found == title_to_id.end()) {
                         ++partial.missing;
                         continue;
                       }
                       if (found->second == article.id) {
                         ++partial.self;
                         continue;
                       }
                       partial.edges.emplace_back(article.id, found->second);
                       partial.anchors.emplace_back(found->second,
                                                    std::move(link.anchor));
                     }
                   }
                 });
  LinkGraph graph;
  for (Partial& partial : partials) {
    graph.edges.insert(partial.edges.begin(), partial.edges.end());
    for (auto& [target, anchor] : partial.anchors) {
      graph.anchors[target].push_back(std::move(anchor));
    }
    graph.missing_target_links += partial.missing;
    graph.self_links += partial.self;
  }
  for (const auto& [source, target] : graph.edges) {
    ++graph.out_degree[source];
    ++graph.in_degree[target];
  }
  return graph;
}

std::vector<std::string> PruningPolicy::DefaultDatePatterns() {
  const std::string months =
      "(January|February|March|April|May|June|July|August|September|October|"
      "November|December)";
  return {
      "[0-9]{1,4}( (BC|AD|BCE|CE))?",
      months + " [0-9]{1,2}",
      "[0-9]{1,2} " + months,
  };
}

bool IsDateTitle(std::string_view title,
                 const std::vector<std::string>& patterns) {
  std::string normalized = NormalizeTitle(title);
  for (const std::string& pattern : patterns) {
    if (std::regex_match(normalized, std::regex(pattern))) return true;
  }
  return false;
}

std::vector<Concept> PruneArticles(const std::vector<RawArticle>& articles,
                                   const LinkGraph& graph,
                                   const PruningPolicy& policy,
                                   const StopWordList& stops,
                                   PruneStats* stats) {
  std::vector<std::regex> date_patterns;
  for (const std::string& pattern : policy.date_title_patterns) {
    date_patterns.emplace_back(pattern);
  }
  PruneStats local;
  std::vector<Concept> concepts;
  for (const RawArticle& article : articles) {
    ++local.input;
    ArticleKind kind = article.kind;
    if (kind == ArticleKind::kRegular) {
      std::string title = NormalizeTitle(article.title);
      for (const std::regex& pattern : date_patterns) {
        if (std::regex_match(title, pattern)) {
          kind = ArticleKind::kDate;
          break;
        }
      }
    }
    if (kind == ArticleKind::kTemplate || policy.drop_kinds.count(kind) > 0) {
      ++local.dropped_kind;
      continue;
    }
    Concept concept_;
    concept_.id = article.id;
    concept_.title = article.title;
    concept_.non_stop_word_count =
        Tokenize(ExtractLinks(article.body).plain_text, stops).size();
    concept_.inlinks = graph.InDegree(article.id);
    concept_.outlinks = graph.OutDegree(article.id);
    if (concept_.non_stop_word_count < policy.min_non_stop_words) {
      ++local.dropped_words;
      continue;
    }
    if (concept_.inlinks + concept_.outlinks < policy.min_total_links) {
      ++local.dropped_links;
      continue;
    }
    ++local.kept;
    concepts.push_back(std::move(concept_));
  }
  if (stats) *stats = local;
  return concepts;
}

}  // namespace esa

#include "esa/config.h"

#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "esa/error.h"

namespace esa {
namespace {

std::string Trim(std::string_view s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

// Removes a '#' comment that is not inside a quoted string.
std::string StripComment(const std::string& line) {
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    if (line[i] == '\\' && quoted) {
      ++i;
    } else if (line[i] == '"') {
      quoted = !quoted;
    } else if (line[i] == '#' && !quoted) {
      return line.substr(0, i);
    }
  }
  return line;
}

std::string Unquote(const std::string& raw) {
  std::string s = Trim(raw);
  if (s.size() < 2 || s.front() != '"' || s.back() != '"') return s;
  std::string out;
  for (std::size_t i = 1; i + 1 < s.size(); ++i) {
    if (s[i] == '\\' && i + 2 < s.size()) {
      out += s[++i];
    } else {
      out += s[i];
    }
  }
  return out;
}

std::string Quote(const std::string& s) {
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"' || ch == '\\') out += '\\';
    out += ch;
  }
  return out + "\"";
}

std::vector<std::string> ParseList(const std::string& raw) {
  std::string s = Trim(raw);
  if (!s.empty() && s.front() == '[') {
    if (s.back() != ']') throw Error("unterminated list");
    s = s.substr(1, s.size() - 2);
  }
  std::vector<std::string> items;
  std::string current;
  bool quoted = false;
  for (std::size_t i = 0; i < s.size(); ++i) {
    char ch = s[i];
    if (quoted && ch == '\\' && i + 1 < s.size()) {
      current += ch;
      current += s[++i];
      continue;
    }
    if (ch == '"') quoted = !quoted;
    if (ch == ',' && !quoted) {
      items.push_back(Unquote(current));
      current.clear();
    } else {
      current += ch;
    }
  }
  if (!Trim(current).empty()) items.push_back(Unquote(current));
  return items;
}

std::size_t ParseCount(const std::string& raw) {
  std::string s = Unquote(raw);
  std::size_t used = 0;
  long long v = 0;
  try {
    v = std::stoll(s, &used);
  } catch (const std::exception&) {
    throw Error("expected a non-negative integer, got '" + s + "'");
  }
  if (used != s.size() || v < 0) {
    throw Error("expected a non-negative integer, got '" + s + "'");
  }
  return static_cast<std::size_t>(v);
}

double ParseReal(const std::string& raw) {
  std::string s = Unquote(raw);
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw Error("expected a number, got '" + s + "'");
  }
  if (used != s.size() || !std::isfinite(v)) {
    throw Error("expected a number, got '" + s + "'");
  }
  return v;
}

bool ParseBool(const std::string& raw) {
  std::string s = Unquote(raw);
  if (s == "true") return true;
  if (s == "false") return false;
  throw Error("expected true or false, got '" + s + "'");
}

std::string FormatReal(double v) {
  std::ostringstream out;
  out.precision(17);
  out << v;
  return out.str();
}

template <typename T, typename Fn>
std::string JoinList(const T& items, Fn name) {
  std::string out = "[";
  bool first = true;
  for (const auto& item : items) {
    if (!first) out += ", ";
    first = false;
    out += Quote(name(item));
  }
  return out + "]";
}

using Setter = std::function<void(Config&, const std::string&)>;

const std::map<std::string, Setter>& Setters() {
  static const auto* setters = new std::map<std::string, Setter>{
      {"min_non_stop_words",
       [](Config& c, const std::string& v) {
         c.build.pruning.min_non_stop_words = ParseCount(v);
       }},
      {"min_total_links",
       [](Config& c, const std::string& v) {
         c.build.pruning.min_total_links = ParseCount(v);
       }},
      {"drop_kinds",
       [](Config& c, const std::string& v) {
         c.build.pruning.drop_kinds.clear();
         for (const std::string& kind : ParseList(v)) {
           c.build.pruning.drop_kinds.insert(ParseArticleKind(kind));
         }
       }},
      {"date_title_patterns",
       [](Config& c, const std::string& v) {
         c.build.pruning.date_title_patterns = ParseList(v);
         for (const std::string& p : c.build.pruning.date_title_patterns) {
           try {
             std::regex check(p);
           } catch (const std::regex_error&) {
             throw Error("invalid regular expression: " + p);
           }
         }
       }},
      {"min_term_articles",
       [](Config& c, const std::string& v) {
         c.build.min_term_articles = ParseCount(v);
       }},
      {"prune_window",
       [](Config& c, const std::string& v) {
         c.build.index_prune.window = ParseCount(v);
       }},
      {"prune_drop_fraction",
       [](Config& c, const std::string& v) {
         c.build.index_prune.drop_fraction = ParseReal(v);
       }},
      {"normalization",
       [](Config& c, const std::string& v) {
         c.build.axis = ParseNormalizationAxis(Unquote(v));
       }},
      {"use_anchor_text",
       [](Config& c, const std::string& v) {
         c.build.use_anchor_text = ParseBool(v);
       }},
      {"template_depth",
       [](Config& c, const std::string& v) {
         c.build.template_depth = static_cast<int>(ParseCount(v));
       }},
      {"alpha",
       [](Config& c, const std::string& v) {
         double alpha = ParseReal(v);
         if (alpha < 0.0) throw Error("alpha must be non-negative");
         c.relatedness.alpha = alpha;
         c.features.alpha = alpha;
       }},
      {"relatedness_order",
       [](Config& c, const std::string& v) {
         std::string s = Unquote(v);
         if (s == "first") {
           c.relatedness.order = InterpretationOrder::kFirst;
         } else if (s == "second") {
           c.relatedness.order = InterpretationOrder::kSecond;
         } else {
           throw Error("relatedness_order must be first or second");
         }
       }},
      {"generality_only",
       [](Config& c, const std::string& v) {
         c.relatedness.generality_only = ParseBool(v);
       }},
      {"top_k",
       [](Config& c, const std::string& v) {
         c.features.top_k = ParseCount(v);
       }},
      {"link_mode",
       [](Config& c, const std::string& v) {
         c.features.link_mode = ParseLinkMode(Unquote(v));
       }},
      {"segmentation_levels",
       [](Config& c, const std::string& v) {
         c.features.segmentation.levels.clear();
         for (const std::string& level : ParseList(v)) {
           c.features.segmentation.levels.push_back(ParseSegmentLevel(level));
         }
       }},
      {"window_length",
       [](Config& c, const std::string& v) {
         c.features.segmentation.window_length = ParseCount(v);
       }},
      {"noisy_corpus",
       [](Config& c, const std::string& v) { c.noisy_corpus = ParseBool(v); }},
      {"ig_keep",
       [](Config& c, const std::string& v) {
         c.feature_model.concepts_to_keep = ParseCount(v);
       }},
      {"rare_feature_min_docs",
       [](Config& c, const std::string& v) {
         c.feature_model.rare_min_docs = ParseCount(v);
       }},
      {"classifier_beta",
       [](Config& c, const std::string& v) {
         double beta = ParseReal(v);
         if (beta < 0.0) throw Error("classifier_beta must be non-negative");
         c.classifier_beta = beta;
       }},
      {"stop_words_file",
       [](Config& c, const std::string& v) { c.stop_words_file = Unquote(v); }},
  };
  return *setters;
}

}  // namespace

SegmentationSpec Config::EffectiveSegmentation() const {
  SegmentationSpec spec = features.segmentation;
  if (noisy_corpus) {
    spec.levels = {SegmentLevel::kParagraph, SegmentLevel::kDocument};
  }
  return spec;
}

StopWordList Config::LoadStopWords() const {
  if (stop_words_file.empty()) return StopWordList::Default();
  return StopWordList::FromFile(stop_words_file);
}

Config Config::Parse(std::string_view text) {
  Config config;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    std::string content = Trim(StripComment(line));
    if (content.empty()) continue;
    auto fail = [&](const std::string& problem) {
      return Error("config line " + std::to_string(line_number) + ": " +
                   problem);
    };
    std::size_t eq = content.find('=');
    if (eq == std::string::npos) throw fail("expected key = value");
    std::string key = Trim(content.substr(0, eq));
    std::string value = Trim(content.substr(eq + 1));
    auto setter = Setters().find(key);
    if (setter == Setters().end()) throw fail("unknown key '" + key + "'");
    try {
      setter->second(config, value);
    } catch (const Error& e) {
      throw fail(key + ": " + e.what());
    }
  }
  try {
    config.build.index_prune.Validate();
    config.features.segmentation.Validate();
  } catch (const Error& e) {
    throw Error(std::string("config: ") + e.what());
  }
  return config;
}

Config Config::Load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open config: " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return Parse(buffer.str());
}

std::string Config::ToString() const {
  std::ostringstream out;
  out << "min_non_stop_words = " << build.pruning.min_non_stop_words << "\n"
      << "min_total_links = " << build.pruning.min_total_links << "\n"
      << "drop_kinds = "
      << JoinList(build.pruning.drop_kinds,
                  [](ArticleKind k) { return std::string(ArticleKindName(k)); })
      << "\n"
      << "date_title_patterns = "
      << JoinList(build.pruning.date_title_patterns,
                  [](const std::string& s) { return s; })
      << "\n"
      << "min_term_articles = " << build.min_term_articles << "\n"
      << "prune_window = " << build.index_prune.window << "\n"
      << "prune_drop_fraction = " << FormatReal(build.index_prune.drop_fraction)
      << "\n"
      << "normalization = " << NormalizationAxisName(build.axis) << "\n"
      << "use_anchor_text = " << (build.use_anchor_text ? "true" : "false")
      << "\n"
      << "template_depth = " << build.template_depth << "\n"
      << "alpha = " << FormatReal(relatedness.alpha) << "\n"
      << "relatedness_order = "
      << (relatedness.order == InterpretationOrder::kFirst ? "first" : "second")
      << "\n"
      << "generality_only = " << (relatedness.generality_only ? "true" : "false")
      << "\n"
      << "top_k = " << features.top_k << "\n"
      << "link_mode = " << LinkModeName(features.link_mode) << "\n"
      << "segmentation_levels = "
      << JoinList(features.segmentation.levels,
                  [](SegmentLevel l) { return std::string(SegmentLevelName(l)); })
      << "\n"
      << "window_length = " << features.segmentation.window_length << "\n"
      << "noisy_corpus = " << (noisy_corpus ? "true" : "false") << "\n"
      << "ig_keep = " << feature_model.concepts_to_keep << "\n"
      << "rare_feature_min_docs = " << feature_model.rare_min_docs << "\n"
      << "classifier_beta = " << FormatReal(classifier_beta) << "\n";
  if (!stop_words_file.empty()) {
    out << "stop_words_file = " << Quote(stop_words_file) << "\n";
  }
  return out.str();
}

}  // namespace esa

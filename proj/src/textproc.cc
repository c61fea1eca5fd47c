#include "esa/textproc.h"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "esa/error.h"
#include "esa/porter_stemmer.h"

namespace esa {
namespace {

constexpr std::string_view kDefaultStopWords =
    "a about above after again against all also am an and any are as at be "
    "because been before being below between both but by can could did do "
    "does doing down during each few for from further had has have having he "
    "her here hers herself him himself his how i if in into is it its itself "
    "just may me might more most must my myself no nor not now of off on once "
    "only or other our ours ourselves out over own same shall she should so "
    "some such than that the their theirs them themselves then there these "
    "they this those through to too under until up upon very was we were "
    "what when where which while who whom why will with would you your yours "
    "yourself yourselves";

bool IsAsciiAlpha(char ch) {
  return (ch >= 'a' && ch <= 'z') || (ch >= 'A' && ch <= 'Z');
}
bool IsDigit(char ch) { return ch >= '0' && ch <= '9'; }
bool IsWordByte(char ch) {
  return IsAsciiAlpha(ch) || IsDigit(ch) ||
         static_cast<unsigned char>(ch) >= 0x80;
}
bool IsSpace(char ch) {
  return ch == ' ' || ch == '\t' || ch == '\n' || ch == '\r' || ch == '\f' ||
         ch == '\v';
}
bool IsUpper(char ch) { return ch >= 'A' && ch <= 'Z'; }

char ToLower(char ch) { return IsUpper(ch) ? static_cast<char>(ch - 'A' + 'a') : ch; }

// Byte offsets at which contexts of the given level start, always beginning
// with 0.
std::vector<size_t> SentenceStarts(std::string_view text) {
  std::vector<size_t> starts = {0};
  for (size_t i = 0; i < text.size(); ++i) {
    char ch = text[i];
    if (ch != '.' && ch != '?' && ch != '!') continue;
    size_t j = i + 1;
    if (j < text.size() && !IsSpace(text[j])) continue;
    while (j < text.size() && IsSpace(text[j])) ++j;
    if (j == text.size()) break;
    if (IsUpper(text[j])) starts.push_back(j);
  }
  return starts;
}

std::vector<size_t> ParagraphStarts(std::string_view text) {
  std::vector<size_t> starts = {0};
  size_t line_start = 0;
  bool previous_blank = false;
  while (line_start <= text.size()) {
    size_t line_end = text.find('\n', line_start);
    if (line_end == std::string_view::npos) line_end = text.size();
    std::string_view line = text.substr(line_start, line_end - line_start);
    bool blank = std::all_of(line.begin(), line.end(), IsSpace);
    if (!blank && previous_blank) starts.push_back(line_start);
    previous_blank = blank;
    if (line_end == text.size()) break;
    line_start = line_end + 1;
  }
  return starts;
}

void GroupByOffsets(const std::vector<Token>& tokens,
                    const std::vector<size_t>& starts, SegmentLevel level,
                    std::vector<Context>* out) {
  size_t t = 0;
  for (size_t s = 0; s < starts.size(); ++s) {
    size_t limit =
        s + 1 < starts.size() ? starts[s + 1] : std::string_view::npos;
    Context context{level, {}};
    while (t < tokens.size() && tokens[t].offset < limit) {
      context.tokens.push_back(tokens[t++]);
    }
    if (!context.tokens.empty()) out->push_back(std::move(context));
  }
}

}  // namespace

const StopWordList& StopWordList::Default() {
  static const StopWordList* list = new StopWordList(FromText(kDefaultStopWords));
  return *list;
}

StopWordList StopWordList::FromText(std::string_view text) {
  std::unordered_set<std::string> words;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream fields(line);
    std::string word;
    while (fields >> word) {
      std::transform(word.begin(), word.end(), word.begin(), ToLower);
      words.insert(word);
    }
  }
  return StopWordList(std::move(words));
}

StopWordList StopWordList::FromFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open stop-word file: " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return FromText(buffer.str());
}

std::vector<Token> Tokenize(std::string_view text, const StopWordList& stops) {
  std::vector<Token> tokens;
  size_t position = 0;
  size_t i = 0;
  while (i < text.size()) {
    if (!IsWordByte(text[i])) {
      ++i;
      continue;
    }
    size_t start = i;
    bool has_digit = false;
    while (i < text.size() && IsWordByte(text[i])) {
      has_digit |= IsDigit(text[i]);
      ++i;
    }
    if (has_digit) continue;
    std::string surface(text.substr(start, i - start));
    std::transform(surface.begin(), surface.end(), surface.begin(), ToLower);
    size_t ordinal = position++;
    if (stops.Contains(surface)) continue;
    Token token;
    token.stem = PorterStem(surface);
    token.surface = std::move(surface);
    token.position = ordinal;
    token.offset = start;
    tokens.push_back(std::move(token));
  }
  return tokens;
}

std::vector<Token> Tokenize(std::string_view text) {
  return Tokenize(text, StopWordList::Default());
}

std::vector<std::string> Stems(const std::vector<Token>& tokens) {
  std::vector<std::string> stems;
  stems.reserve(tokens.size());
  for (const Token& token : tokens) stems.push_back(token.stem);
  return stems;
}

std::set<std::string> RemoveRareTerms(
    const std::map<std::string, size_t>& article_frequency,
    size_t min_articles) {
  std::set<std::string> vocabulary;
  for (const auto& [term, count] : article_frequency) {
    if (count >= min_articles) vocabulary.insert(term);
  }
  return vocabulary;
}

const char* SegmentLevelName(SegmentLevel level) {
  switch (level) {
    case SegmentLevel::kWordWindow:
      return "words";
    case SegmentLevel::kSentence:
      return "sentence";
    case SegmentLevel::kParagraph:
      return "paragraph";
    case SegmentLevel::kDocument:
      return "document";
  }
  return "?";
}

SegmentLevel ParseSegmentLevel(std::string_view name) {
  if (name == "words") return SegmentLevel::kWordWindow;
  if (name == "sentence") return SegmentLevel::kSentence;
  if (name == "paragraph") return SegmentLevel::kParagraph;
  if (name == "document") return SegmentLevel::kDocument;
  throw Error("unknown segmentation level: " + std::string(name));
}

void SegmentationSpec::Validate() const {
  if (levels.empty()) throw Error("segmentation needs at least one level");
  if (window_length == 0) throw Error("word window length must be positive");
}

std::vector<Context> Segment(std::string_view text, const SegmentationSpec& spec,
                             const StopWordList& stops) {
  spec.Validate();
  std::vector<Token> tokens = Tokenize(text, stops);
  std::vector<Context> contexts;
  for (SegmentLevel level : spec.levels) {
    switch (level) {
      case SegmentLevel::kWordWindow:
        for (size_t begin = 0; begin < tokens.size();
             begin += spec.window_length) {
          size_t end = std::min(tokens.size(), begin + spec.window_length);
          contexts.push_back(
              {level, std::vector<Token>(tokens.begin() + begin,
                                         tokens.begin() + end)});
        }
        break;
      case SegmentLevel::kSentence:
        GroupByOffsets(tokens, SentenceStarts(text), level, &contexts);
        break;
      case SegmentLevel::kParagraph:
        GroupByOffsets(tokens, ParagraphStarts(text), level, &contexts);
        break;
      case SegmentLevel::kDocument:
        if (!tokens.empty()) contexts.push_back({level, tokens});
        break;
    }
  }
  return contexts;
}

}  // namespace esa

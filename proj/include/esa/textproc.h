#ifndef ESA_TEXTPROC_H_
#define ESA_TEXTPROC_H_

#include <cstddef>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace esa {

struct Token {
  std::string surface;  // lowercased
  std::string stem;
  size_t position = 0;  // ordinal among all word runs of the source text
  size_t offset = 0;    // byte offset of the surface in the source text
};

class StopWordList {
 public:
  StopWordList() = default;
  explicit StopWordList(std::unordered_set<std::string> words)
      : words_(std::move(words)) {}

  // The bundled English list.
  static const StopWordList& Default();

  // One word per line, '#' starts a comment. Throws esa::Error on I/O failure.
  static StopWordList FromFile(const std::string& path);
  static StopWordList FromText(std::string_view text);

  bool Contains(std::string_view word) const {
    return words_.count(std::string(word)) > 0;
  }
  size_t size() const { return words_.size(); }

 private:
  std::unordered_set<std::string> words_;
};

// Splits `text` into lowercase alphabetic tokens. Runs of letters and digits
// are candidate words; runs containing a digit are dropped, everything else
// (hyphens, apostrophes, punctuation) separates tokens. Words on `stops`
// are removed; the remaining ones are Porter-stemmed.
std::vector<Token> Tokenize(std::string_view text, const StopWordList& stops);
// Same, with the bundled stop-word list.
std::vector<Token> Tokenize(std::string_view text);

// Stems only, in order.
std::vector<std::string> Stems(const std::vector<Token>& tokens);

// Keeps terms whose article frequency is at least `min_articles`.
std::set<std::string> RemoveRareTerms(
    const std::map<std::string, size_t>& article_frequency,
    size_t min_articles = 3);

enum class SegmentLevel { kWordWindow, kSentence, kParagraph, kDocument };

const char* SegmentLevelName(SegmentLevel level);
SegmentLevel ParseSegmentLevel(std::string_view name);

struct SegmentationSpec {
  std::vector<SegmentLevel> levels = {
      SegmentLevel::kWordWindow, SegmentLevel::kSentence,
      SegmentLevel::kParagraph, SegmentLevel::kDocument};
  size_t window_length = 10;

  // Throws esa::Error when no level is present or the window is empty.
  void Validate() const;
};

struct Context {
  SegmentLevel level;
  std::vector<Token> tokens;
};

// Non-overlapping contexts per requested level, in level order then text
// order. Empty contexts are omitted. Sentences end at '.', '?' or '!'
// followed by whitespace and an uppercase letter (or end of text);
// paragraphs are separated by blank lines.
std::vector<Context> Segment(std::string_view text, const SegmentationSpec& spec,
                             const StopWordList& stops);

}  // namespace esa

#endif  // ESA_TEXTPROC_H_

#include "esa/porter_stemmer.h"

#include <array>
#include <utility>

namespace esa {
namespace {

// Working state for one word. `end_` is one past the last live character of
// `buf_`; `stem_end_` marks the end of the stem once a suffix has matched.
class Stemmer {
 public:
  explicit Stemmer(std::string_view word) : buf_(word), end_(buf_.size()) {}

  std::string Run() {
    Step1ab();
    Step1c();
    Step2();
    Step3();
    Step4();
    Step5();
    return buf_.substr(0, end_);
  }

 private:
  bool IsConsonant(size_t i) const {
    switch (buf_[i]) {
      case 'a':
      case 'e':
      case 'i':
      case 'o':
      case 'u':
        return false;
      case 'y':
        return i == 0 ? true : !IsConsonant(i - 1);
      default:
        return true;
    }
  }

  // Number of VC sequences in buf_[0, stem_end_).
  int Measure() const {
    int n = 0;
    size_t i = 0;
    const size_t limit = stem_end_;
    while (true) {
      if (i >= limit) return n;
      if (!IsConsonant(i)) break;
      ++i;
    }
    ++i;
    while (true) {
      while (true) {
        if (i >= limit) return n;
        if (IsConsonant(i)) break;
        ++i;
      }
      ++i;
      ++n;
      while (true) {
        if (i >= limit) return n;
        if (!IsConsonant(i)) break;
        ++i;
      }
      ++i;
    }
  }

  bool VowelInStem() const {
    for (size_t i = 0; i < stem_end_; ++i) {
      if (!IsConsonant(i)) return true;
    }
    return false;
  }

  // buf_[i-1] and buf_[i] are the same consonant.
  bool DoubleConsonant(size_t i) const {
    if (i < 1) return false;
    if (buf_[i] != buf_[i - 1]) return false;
    return IsConsonant(i);
  }

  // buf_[i-2..i] is consonant-vowel-consonant and buf_[i] is not w, x or y.
  bool Cvc(size_t i) const {
    if (i < 2 || !IsConsonant(i) || IsConsonant(i - 1) || !IsConsonant(i - 2)) {
      return false;
    }
    char ch = buf_[i];
    return ch != 'w' && ch != 'x' && ch != 'y';
  }

  bool EndsWith(std::string_view suffix) {
    if (suffix.size() > end_) return false;
    if (std::string_view(buf_).substr(end_ - suffix.size(), suffix.size()) !=
        suffix) {
      return false;
    }
    stem_end_ = end_ - suffix.size();
    return true;
  }

  void SetTo(std::string_view replacement) {
    buf_.replace(stem_end_, end_ - stem_end_, replacement);
    end_ = stem_end_ + replacement.size();
  }

  void ReplaceIfMeasured(std::string_view replacement) {
    if (Measure() > 0) SetTo(replacement);
  }

  void Step1ab() {
    if (buf_[end_ - 1] == 's') {
      if (EndsWith("sses")) {
        end_ -= 2;
      } else if (EndsWith("ies")) {
        SetTo("i");
      } else if (end_ >= 2 && buf_[end_ - 2] != 's') {
        --end_;
      }
    }
    if (EndsWith("eed")) {
      if (Measure() > 0) --end_;
    } else if ((EndsWith("ed") || EndsWith("ing")) && VowelInStem()) {
      end_ = stem_end_;
      if (EndsWith("at")) {
        SetTo("ate");
      } else if (EndsWith("bl")) {
        SetTo("ble");
      } else if (EndsWith("iz")) {
        SetTo("ize");
      } else if (DoubleConsonant(end_ - 1)) {
        char ch = buf_[end_ - 1];
        if (ch != 'l' && ch != 's' && ch != 'z') --end_;
      } else {
        stem_end_ = end_;
        if (Measure() == 1 && Cvc(end_ - 1)) {
          stem_end_ = end_;
          SetTo("e");
        }
      }
    }
  }

  void Step1c() {
    if (EndsWith("y") && VowelInStem()) buf_[end_ - 1] = 'i';
  }

  // Tries each (suffix, replacement) rule in order; the first suffix that
  // matches decides, whether or not its measure condition holds.
  template <size_t N>
  void ApplyFirstMatch(
      const std::array<std::pair<std::string_view, std::string_view>, N>&
          rules) {
    for (const auto& [suffix, replacement] : rules) {
      if (EndsWith(suffix)) {
        ReplaceIfMeasured(replacement);
        return;
      }
    }
  }

  void Step2() {
    static constexpr std::array<std::pair<std::string_view, std::string_view>,
                                20>
        kRules = {{{"ational", "ate"}, {"tional", "tion"}, {"enci", "ence"},
                   {"anci", "ance"},   {"izer", "ize"},    {"abli", "able"},
                   {"alli", "al"},     {"entli", "ent"},   {"eli", "e"},
                   {"ousli", "ous"},   {"ization", "ize"}, {"ation", "ate"},
                   {"ator", "ate"},    {"alism", "al"},    {"iveness", "ive"},
                   {"fulness", "ful"}, {"ousness", "ous"}, {"aliti", "al"},
                   {"iviti", "ive"},   {"biliti", "ble"}}};
    if (end_ < 2) return;
    ApplyFirstMatch(kRules);
  }

  void Step3() {
    static constexpr std::array<std::pair<std::string_view, std::string_view>,
                                7>
        kRules = {{{"icate", "ic"},
                   {"ative", ""},
                   {"alize", "al"},
                   {"iciti", "ic"},
                   {"ical", "ic"},
                   {"ful", ""},
                   {"ness", ""}}};
    ApplyFirstMatch(kRules);
  }

  void Step4() {
    static constexpr std::array<std::string_view, 19> kSuffixes = {
        "al",  "ance", "ence", "er",  "ic",  "able", "ible",
        "ant", "ement", "ment", "ent", "ion", "ou",  "ism",
        "ate", "iti",  "ous",  "ive", "ize"};
    // Longest match first among suffixes sharing a tail ("ement" > "ment" >
    // "ent"); the listed order already guarantees that for this rule set.
    for (std::string_view suffix : kSuffixes) {
      if (!EndsWith(suffix)) continue;
      if (suffix == "ion") {
        if (stem_end_ == 0) return;
        char ch = buf_[stem_end_ - 1];
        if (ch != 's' && ch != 't') return;
      }
      if (Measure() > 1) end_ = stem_end_;
      return;
    }
  }

  void Step5() {
    stem_end_ = end_;
    if (buf_[end_ - 1] == 'e') {
      stem_end_ = end_ - 1;
      int m = Measure();
      if (m > 1 || (m == 1 && !Cvc(end_ - 2))) --end_;
    }
    stem_end_ = end_;
    if (buf_[end_ - 1] == 'l' && DoubleConsonant(end_ - 1) && Measure() > 1) {
      --end_;
    }
  }

  std::string buf_;
  size_t end_;
  size_t stem_end_ = 0;
};

}  // namespace

std::string PorterStem(std::string_view word) {
  if (word.size() <= 2) return std::string(word);
  for (char ch : word) {
    if (ch < 'a' || ch > 'z') return std::string(word);
  }
  return Stemmer(word).Run();
}

}  // namespace esa

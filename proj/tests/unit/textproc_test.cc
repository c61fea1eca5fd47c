#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "esa/error.h"
#include "esa/porter_stemmer.h"
#include "esa/textproc.h"

namespace esa {
namespace {

std::vector<std::string> Surfaces(const std::vector<Token>& tokens) {
  std::vector<std::string> out;
  for (const Token& t : tokens) out.push_back(t.surface);
  return out;
}

std::vector<std::size_t> Sizes(const std::vector<Context>& contexts,
                               SegmentLevel level) {
  std::vector<std::size_t> sizes;
  for (const Context& c : contexts) {
    if (c.level == level) sizes.push_back(c.tokens.size());
  }
  return sizes;
}

TEST_CASE("porter stemmer matches the reference vectors") {
  std::ifstream in(ESA_TEST_DATA_DIR "/porter_vectors.tsv");
  REQUIRE(in);
  std::string line;
  std::size_t checked = 0;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::size_t tab = line.find('\t');
    REQUIRE(tab != std::string::npos);
    std::string word = line.substr(0, tab);
    std::string stem = line.substr(tab + 1);
    INFO(word);
    CHECK(PorterStem(word) == stem);
    ++checked;
  }
  CHECK(checked > 3000);
}

TEST_CASE("porter stemmer classic cases") {
  CHECK(PorterStem("cats") == "cat");
  CHECK(PorterStem("caresses") == "caress");
  CHECK(PorterStem("ponies") == "poni");
  CHECK(PorterStem("relational") == "relat");
  CHECK(PorterStem("generalization") == "gener");
  CHECK(PorterStem("hopeful") == "hope");
  CHECK(PorterStem("as") == "as");
  CHECK(PorterStem("") == "");
}

TEST_CASE("tokenize") {
  SUBCASE("empty text") { CHECK(Tokenize("").empty()); }
  SUBCASE("hyphen splits, numbers dropped, goes kept") {
    StopWordList stops = StopWordList::FromText("the\nand\n");
    std::vector<Token> tokens = Tokenize("Wal-Mart 2005 goes", stops);
    CHECK(Surfaces(tokens) == std::vector<std::string>{"wal", "mart", "goes"});
    CHECK(tokens[2].stem == "goe");
  }
  SUBCASE("default list keeps goes") {
    CHECK(Surfaces(Tokenize("Wal-Mart 2005 goes")) ==
          std::vector<std::string>{"wal", "mart", "goes"});
  }
  SUBCASE("mixed alphanumerics dropped, apostrophes split") {
    CHECK(Surfaces(Tokenize("mp3 players don't b2b", StopWordList())) ==
          std::vector<std::string>{"players", "don", "t"});
  }
  SUBCASE("stop words removed, stems produced") {
    std::vector<Token> tokens = Tokenize("The cats and the dogs");
    CHECK(Surfaces(tokens) == std::vector<std::string>{"cats", "dogs"});
    CHECK(tokens[0].stem == "cat");
    CHECK(tokens[1].stem == "dog");
  }
  SUBCASE("positions and offsets") {
    std::vector<Token> tokens = Tokenize("Big the cats", StopWordList::FromText("the"));
    REQUIRE(tokens.size() == 2);
    CHECK(tokens[0].position == 0);
    CHECK(tokens[1].position == 2);
    CHECK(tokens[1].offset == 8);
  }
  SUBCASE("deterministic and idempotent on joined stems") {
    std::string text = "Connections between generalizations of relational hopes";
    std::vector<std::string> stems = Stems(Tokenize(text));
    CHECK(Stems(Tokenize(text)) == stems);
    std::string joined;
    for (const std::string& s : stems) joined += s + " ";
    CHECK(Stems(Tokenize(joined)) == stems);
  }
}

TEST_CASE("stop word files") {
  StopWordList list = StopWordList::FromText("# comment\nfoo\n  bar  # trailing\n\n");
  CHECK(list.Contains("foo"));
  CHECK(list.Contains("bar"));
  CHECK(list.size() == 2);
  CHECK_THROWS_AS(StopWordList::FromFile("/nonexistent/stops.txt"), Error);
  CHECK(StopWordList::Default().Contains("the"));
  CHECK(!StopWordList::Default().Contains("goes"));
}

TEST_CASE("remove rare terms") {
  std::map<std::string, std::size_t> df = {{"a", 2}, {"b", 3}, {"c", 7}};
  CHECK(RemoveRareTerms(df) == std::set<std::string>{"b", "c"});
  CHECK(RemoveRareTerms({}).empty());
  CHECK(RemoveRareTerms(df, 1).size() == 3);
  for (std::size_t m = 0; m < 9; ++m) {
    std::set<std::string> low = RemoveRareTerms(df, m);
    std::set<std::string> high = RemoveRareTerms(df, m + 1);
    for (const std::string& t : high) CHECK(low.count(t) == 1);
  }
}

TEST_CASE("segmentation") {
  StopWordList none;
  SUBCASE("word windows of 10 over 25 tokens") {
    std::string text;
    for (int i = 0; i < 25; ++i) text += "word ";
    SegmentationSpec spec{{SegmentLevel::kWordWindow}, 10};
    CHECK(Sizes(Segment(text, spec, none), SegmentLevel::kWordWindow) ==
          std::vector<std::size_t>{10, 10, 5});
  }
  SUBCASE("single sentence at two levels") {
    SegmentationSpec spec{{SegmentLevel::kSentence, SegmentLevel::kDocument}, 10};
    std::vector<Context> contexts = Segment("Cats chase mice.", spec, none);
    REQUIRE(contexts.size() == 2);
    CHECK(Surfaces(contexts[0].tokens) == Surfaces(contexts[1].tokens));
  }
  SUBCASE("A. B. gives two sentences") {
    SegmentationSpec spec{{SegmentLevel::kSentence}, 10};
    CHECK(Segment("A. B.", spec, none).size() == 2);
    CHECK(Segment("Dr. smith came. He left", spec, none).size() == 2);
  }
  SUBCASE("paragraphs split at blank lines") {
    SegmentationSpec spec{{SegmentLevel::kParagraph}, 10};
    std::vector<Context> contexts =
        Segment("one two\nthree\n\n  \nfour five\n\n\nsix", spec, none);
    CHECK(Sizes(contexts, SegmentLevel::kParagraph) ==
          std::vector<std::size_t>{3, 2, 1});
  }
  SUBCASE("every level covers the token sequence in order") {
    std::string text =
        "Alpha beta gamma. Delta epsilon zeta eta theta iota kappa lambda mu "
        "nu xi omicron!\n\nPi rho sigma? Tau upsilon phi chi psi omega.";
    SegmentationSpec spec;
    spec.window_length = 4;
    std::vector<Context> contexts = Segment(text, spec, none);
    std::vector<std::string> all = Surfaces(Tokenize(text, none));
    for (SegmentLevel level : spec.levels) {
      std::vector<std::string> joined;
      for (const Context& c : contexts) {
        if (c.level != level) continue;
        for (const Token& t : c.tokens) joined.push_back(t.surface);
      }
      CHECK(joined == all);
    }
  }
  SUBCASE("validation") {
    CHECK_THROWS_AS((SegmentationSpec{{}, 10}.Validate()), Error);
    CHECK_THROWS_AS((SegmentationSpec{{SegmentLevel::kWordWindow}, 0}.Validate()),
                    Error);
    CHECK(ParseSegmentLevel("words") == SegmentLevel::kWordWindow);
    CHECK_THROWS_AS(ParseSegmentLevel("chapters"), Error);
  }
}

}  // namespace
}  // namespace esa

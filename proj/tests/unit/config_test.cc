#include <string>

#include "doctest.h"
#include "esa/config.h"
#include "esa/error.h"

namespace esa {
namespace {

std::string ErrorOf(const std::string& text) {
  try {
    Config::Parse(text);
  } catch (const Error& e) {
    return e.what();
  }
  return "";
}

TEST_CASE("defaults") {
  Config c;
  CHECK(c.build.pruning.min_non_stop_words == 100);
  CHECK(c.build.pruning.min_total_links == 5);
  CHECK(c.build.min_term_articles == 3);
  CHECK(c.build.index_prune.window == 100);
  CHECK(c.build.index_prune.drop_fraction == 0.05);
  CHECK(c.build.axis == NormalizationAxis::kConcept);
  CHECK(c.relatedness.alpha == 0.5);
  CHECK(c.features.top_k == 10);
  CHECK(c.features.segmentation.window_length == 10);
  CHECK(c.features.segmentation.levels.size() == 4);
  CHECK(c.feature_model.concepts_to_keep == 200);
  CHECK(c.feature_model.rare_min_docs == 3);
  CHECK(c.classifier_beta == 0.25);
  CHECK(c.features.link_mode == LinkMode::kOff);
}

TEST_CASE("parse") {
  Config c = Config::Parse(
      "# toy settings\n"
      "min_non_stop_words = 0\n"
      "min_total_links = 0   # keep everything\n"
      "drop_kinds = [\"category\"]\n"
      "normalization = \"term\"\n"
      "alpha = 0.25\n"
      "relatedness_order = second\n"
      "generality_only = true\n"
      "link_mode = more_general_only\n"
      "segmentation_levels = [\"paragraph\", \"document\"]\n"
      "window_length = 5\n"
      "ig_keep = 50\n"
      "noisy_corpus = true\n"
      "stop_words_file = \"stops # not a comment.txt\"\n");
  CHECK(c.build.pruning.min_non_stop_words == 0);
  CHECK(c.build.pruning.drop_kinds == std::set<ArticleKind>{ArticleKind::kCategory});
  CHECK(c.build.axis == NormalizationAxis::kTerm);
  CHECK(c.relatedness.alpha == 0.25);
  CHECK(c.features.alpha == 0.25);
  CHECK(c.relatedness.order == InterpretationOrder::kSecond);
  CHECK(c.relatedness.generality_only);
  CHECK(c.features.link_mode == LinkMode::kMoreGeneralOnly);
  CHECK(c.features.segmentation.levels.size() == 2);
  CHECK(c.feature_model.concepts_to_keep == 50);
  CHECK(c.stop_words_file == "stops # not a comment.txt");
  CHECK(c.EffectiveSegmentation().levels ==
        std::vector<SegmentLevel>{SegmentLevel::kParagraph, SegmentLevel::kDocument});
}

TEST_CASE("round trip through text") {
  Config c = Config::Parse("alpha = 0.3\nprune_window = 7\ntop_k = 4\n");
  Config again = Config::Parse(c.ToString());
  CHECK(again.ToString() == c.ToString());
  CHECK(Config::Parse(Config{}.ToString()).ToString() == Config{}.ToString());
}

TEST_CASE("validation") {
  CHECK(ErrorOf("colour = blue\n").find("unknown key 'colour'") != std::string::npos);
  CHECK(ErrorOf("\n\ntop_k = -1\n").find("line 3") != std::string::npos);
  CHECK(ErrorOf("alpha = -0.5\n").find("alpha") != std::string::npos);
  CHECK(!ErrorOf("alpha = lots\n").empty());
  CHECK(!ErrorOf("prune_window = 1\n").empty());
  CHECK(!ErrorOf("prune_drop_fraction = 1.5\n").empty());
  CHECK(!ErrorOf("segmentation_levels = []\n").empty());
  CHECK(!ErrorOf("segmentation_levels = [\"chapters\"]\n").empty());
  CHECK(!ErrorOf("drop_kinds = [\"bogus\"]\n").empty());
  CHECK(!ErrorOf("date_title_patterns = [\"(\"]\n").empty());
  CHECK(!ErrorOf("use_anchor_text = maybe\n").empty());
  CHECK(!ErrorOf("normalization = diagonal\n").empty());
  CHECK(!ErrorOf("just some words\n").empty());
  CHECK_THROWS_AS(Config::Load("/nonexistent/config.toml"), Error);
}

}  // namespace
}  // namespace esa

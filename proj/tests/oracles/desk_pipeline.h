#ifndef ESA_TESTS_ORACLES_DESK_PIPELINE_H_
#define ESA_TESTS_ORACLES_DESK_PIPELINE_H_

// Dense re-implementation of the categorization pipeline for fixtures whose
// words are already stems, contain no stop words and need no tokenizer
// beyond splitting at non-letters. Concept i has id i + 1.

#include <cstddef>
#include <string>
#include <vector>

namespace oracle {

struct LabeledText {
  std::string text;
  std::string label;
};

struct DeskOptions {
  std::size_t min_term_articles = 3;
  std::size_t top_k = 10;
  std::size_t window = 10;
  std::size_t rare_min_docs = 3;
  double beta = 0.25;
};

struct DeskScores {
  double micro = 0.0;
  double macro = 0.0;
};

struct DeskResult {
  DeskScores words;     // bag of words only
  DeskScores combined;  // bag of words plus generated concepts
};

// Contexts are word windows, sentences ('.'-terminated), the paragraph
// (the fixture texts are single paragraphs) and the document. Every
// generated concept is kept, which matches IG selection whenever fewer
// concepts than the selection size survive the rare-feature filter.
DeskResult DeskCategorization(const std::vector<std::string>& concept_texts,
                              const std::vector<LabeledText>& train,
                              const std::vector<LabeledText>& test,
                              const DeskOptions& options);

}  // namespace oracle

#endif  // ESA_TESTS_ORACLES_DESK_PIPELINE_H_

#ifndef ESA_CONFIG_H_
#define ESA_CONFIG_H_

#include <cstddef>
#include <string>
#include <string_view>

#include "esa/builder.h"
#include "esa/featuregen.h"
#include "esa/semantics.h"

namespace esa {

// Every tunable of the toolkit. Defaults reproduce the published setup:
// 100 words / 5 links article pruning, rare terms below 3 articles, index
// window 100 at 5%, alpha 0.5, ten concepts per context, 200 selected
// concept features.
struct Config {
  BuildOptions build;
  RelatednessOptions relatedness;
  FeatureGenOptions features;
  FeatureModelOptions feature_model;
  double classifier_beta = 0.25;
  // Restricts segmentation to paragraphs and the whole document.
  bool noisy_corpus = false;
  std::string stop_words_file;

  // The segmentation actually used, after the noisy-corpus restriction.
  SegmentationSpec EffectiveSegmentation() const;
  StopWordList LoadStopWords() const;

  // Parses `key = value` lines ('#' comments; strings quoted or bare; lists
  // as ["a", "b"]). Unknown keys and invalid values throw esa::Error naming
  // the line.
  static Config Parse(std::string_view text);
  static Config Load(const std::string& path);

  // Canonical text form accepted by Parse.
  std::string ToString() const;
};

}  // namespace esa

#endif  // ESA_CONFIG_H_

#include "fixtures.h"

#include <unistd.h>

#include <filesystem>

namespace esa::testing {

std::vector<RawArticle> PetshopArticles() {
  const char* titles[] = {"Cat", "Mouse (rodent)", "Mouse (computing)",
                          "Computer display"};
  const char* texts[] = {"cat cat feline pet", "mouse rodent pet",
                         "mouse computer screen click",
                         "screen computer display"};
  std::vector<RawArticle> articles;
  for (ArticleId i = 0; i < 4; ++i) {
    RawArticle a;
    a.id = i + 1;
    a.title = titles[i];
    a.body = texts[i];
    articles.push_back(a);
  }
  return articles;
}

BuildOptions PermissiveOptions() {
  BuildOptions options;
  options.pruning.min_non_stop_words = 0;
  options.pruning.min_total_links = 0;
  options.min_term_articles = 1;
  return options;
}

InvertedIndex PetshopIndex() {
  return BuildIndex(PetshopArticles(), PermissiveOptions(),
                    StopWordList::Default());
}

std::string TempDir(const std::string& name) {
  std::filesystem::path dir =
      std::filesystem::temp_directory_path() / ("esa_test_" + name + "_" + std::to_string(getpid()));
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir.string();
}

}  // namespace esa::testing

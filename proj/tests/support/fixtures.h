#ifndef ESA_TESTS_SUPPORT_FIXTURES_H_
#define ESA_TESTS_SUPPORT_FIXTURES_H_

#include <string>
#include <vector>

#include "esa/builder.h"
#include "esa/corpus.h"
#include "esa/index.h"

namespace esa::testing {

// The four-article toy corpus: C1 "cat cat feline pet", C2 "mouse rodent
// pet", C3 "mouse computer screen click", C4 "screen computer display".
std::vector<RawArticle> PetshopArticles();

// Pipeline options that keep every article and every term.
BuildOptions PermissiveOptions();

InvertedIndex PetshopIndex();

// A fresh empty directory under the system temp directory.
std::string TempDir(const std::string& name);

}  // namespace esa::testing

#endif  // ESA_TESTS_SUPPORT_FIXTURES_H_

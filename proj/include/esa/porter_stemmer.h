#ifndef ESA_PORTER_STEMMER_H_
#define ESA_PORTER_STEMMER_H_

#include <string>
#include <string_view>

namespace esa {

// Suffix-stripping stemmer of Porter (1980), original rule set.
// Input is expected to be a lowercase ASCII word; words of length <= 2 and
// words containing non-ASCII letters are returned unchanged.
std::string PorterStem(std::string_view word);

}  // namespace esa

#endif  // ESA_PORTER_STEMMER_H_

#ifndef ESA_ERROR_H_
#define ESA_ERROR_H_

#include <stdexcept>
#include <string>

namespace esa {

// All recoverable failures in the library are reported with this type.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace esa

#endif  // ESA_ERROR_H_

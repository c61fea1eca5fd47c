#ifndef ESA_COMMANDS_H_
#define ESA_COMMANDS_H_

#include <ostream>

namespace esa {

// Entry point of the `esa` tool. Returns the process exit status; errors are
// reported on `err`.
int RunCli(int argc, const char* const* argv, std::ostream& out,
           std::ostream& err);

}  // namespace esa

#endif  // ESA_COMMANDS_H_

#ifndef D21_CLI_HPP
#define D21_CLI_HPP

#include <ostream>

namespace d21 {

inline constexpr int kExitOk = 0;
inline constexpr int kExitParameter = 1;
inline constexpr int kExitInconsistent = 2;

/// Entry point shared by the executable and the tests. Data goes to `out`,
/// diagnostics to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace d21

#endif  // D21_CLI_HPP

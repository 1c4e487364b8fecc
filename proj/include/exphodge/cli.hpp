#ifndef EXPHODGE_CLI_HPP
#define EXPHODGE_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace exphodge {

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int usage = 1;
inline constexpr int parse = 2;
inline constexpr int degenerate = 3;
inline constexpr int dimension = 4;
inline constexpr int integrity = 5;
}  // namespace exit_code

/// args excludes the program name. Returns the process exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace exphodge

#endif  // EXPHODGE_CLI_HPP

#ifndef LEXCOMP_CLI_CLI_H_
#define LEXCOMP_CLI_CLI_H_

#include <filesystem>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace lexcomp::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitData = 2;

// Runs one subcommand. args excludes the program name. Results go to files
// and a short summary to out; logs and usage text go to err.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Reads "key = value" lines; blank lines and lines starting with '#' are
// skipped. Keys are long flag names without the leading dashes. Throws
// FormatError naming the line.
std::vector<std::pair<std::string, std::string>> read_config_file(
    const std::filesystem::path& path);

// Resolves a relative input path against LEXCOMP_DATA_ROOT when it is set.
std::filesystem::path resolve_input(const std::filesystem::path& path);

}  // namespace lexcomp::cli

#endif  // LEXCOMP_CLI_CLI_H_

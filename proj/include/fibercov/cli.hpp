#ifndef FIBERCOV_CLI_HPP
#define FIBERCOV_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace fibercov::cli {

inline constexpr int kYes = 0;
inline constexpr int kNo = 1;
inline constexpr int kUsage = 2;

struct Options
{
    bool color = false; // ANSI decoration of verdict lines
};

/// Runs one command line (without the program name). Output depends only on
/// the arguments and the files they name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, const Options& opts = {});

} // namespace fibercov::cli

#endif

#ifndef FIBERCOV_ERROR_HPP
#define FIBERCOV_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace fibercov {

/// Violated precondition or mismatched operands.
class Error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input file; carries the file and 1-based line (0 if not line-specific).
class FormatError : public Error
{
public:
    FormatError(std::string file, std::size_t line, const std::string& what)
        : Error(file + (line ? ":" + std::to_string(line) : std::string()) + ": " + what),
          file_(std::move(file)), line_(line)
    {
    }

    const std::string& file() const { return file_; }
    std::size_t line() const { return line_; }

private:
    std::string file_;
    std::size_t line_;
};

} // namespace fibercov

#endif

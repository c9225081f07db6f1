#ifndef COGS_ERRORS_HPP
#define COGS_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cogs {

// Malformed schema, rule, instance or binning text. Line and column are 1-based.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& message, std::size_t line, std::size_t column)
        : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
          line_(line),
          column_(column) {}

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

// Well-formed input that violates a schema invariant (duplicate feature,
// empty or degenerate domain, unknown feature, ...).
class SchemaError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace cogs

#endif  // COGS_ERRORS_HPP

#ifndef FWAUDIT_DIAGNOSTICS_HPP
#define FWAUDIT_DIAGNOSTICS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace fwaudit {

struct SourceLocation {
    std::size_t line = 0;   // 1-based; 0 = unknown
    std::size_t column = 0; // 1-based; 0 = whole line

    bool operator==(const SourceLocation&) const = default;
};

inline std::string to_string(const SourceLocation& loc)
{
    std::string s = "line " + std::to_string(loc.line);
    if (loc.column > 0)
        s += ", col " + std::to_string(loc.column);
    return s;
}

// A non-fatal finding attached to an input document (lenient parsing,
// per-file corpus failures).
struct Diagnostic {
    SourceLocation loc;
    std::string message;
};

// Fatal input error with a location. The CLI prefixes the file name.
class ParseError : public std::runtime_error {
public:
    ParseError(SourceLocation loc, const std::string& message)
        : std::runtime_error(to_string(loc) + ": " + message), loc_(loc) {}

    const SourceLocation& where() const { return loc_; }

private:
    SourceLocation loc_;
};

// Error raised by analysis stages (zone inference, direction analysis,
// metric preconditions) rather than by document syntax.
class AnalysisError : public std::runtime_error {
public:
    explicit AnalysisError(const std::string& message) : std::runtime_error(message) {}
};

} // namespace fwaudit

#endif

#ifndef GTV_ERRORS_HPP
#define GTV_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace gtv {

// Base class for every contract violation the engine can raise. Operations
// that accept arbitrary caller input throw these; pure computations that are
// total simply return values.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// graph-core
struct DuplicateTagError : Error { using Error::Error; };
struct AmbiguousTagError : Error { using Error::Error; };
struct MissingTagError : Error { using Error::Error; };

// conditions
struct ContextMismatchError : Error { using Error::Error; };

// rewriting
struct MatchInvalidError : Error { using Error::Error; };
struct DanglingEdgeError : Error { using Error::Error; };
struct ApplicationConditionError : Error { using Error::Error; };

// regulation
struct UnknownRuleNameError : Error { using Error::Error; };

// temporal
struct NotCompletedError : Error { using Error::Error; };
struct OracleTooLargeError : Error { using Error::Error; };

// model loading
struct ParseError : Error {
    int line;
    int column;
    std::string expected;

    ParseError(int line, int column, const std::string& expected,
               const std::string& message)
        : Error(message), line(line), column(column), expected(expected) {}
};

struct ResolutionError : Error {
    std::string name;

    ResolutionError(std::string name, const std::string& message)
        : Error(message), name(std::move(name)) {}
};

} // namespace gtv

#endif

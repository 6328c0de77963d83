#pragma once
#include <stdexcept>
#include <string>

namespace folint {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ParseError : Error {
    int line, col;
    ParseError(const std::string& msg, int l, int c)
        : Error("parse error at " + std::to_string(l) + ":" + std::to_string(c) + ": " + msg),
          line(l), col(c) {}
};

struct PositiveDimensionalSingularLocus : Error { using Error::Error; };
struct FieldTowerTooDeep : Error { using Error::Error; };
struct BlowupBudgetExceeded : Error { using Error::Error; };
struct NotInvariantError : Error { using Error::Error; };
struct TooManySolutions : Error { using Error::Error; };
struct InconsistentSystem : Error { using Error::Error; };
struct BoundExceeded : Error {
    long bound;
    explicit BoundExceeded(long b)
        : Error("no multiple up to " + std::to_string(b) + " has a moving part"), bound(b) {}
};

// always-on invariant check; a failure is a bug, not an input error
inline void internal_check(bool ok, const char* what) {
    if (!ok) throw std::logic_error(std::string("internal check failed: ") + what);
}

} // namespace folint

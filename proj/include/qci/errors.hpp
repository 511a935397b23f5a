#pragma once

#include <stdexcept>
#include <string>

namespace qci {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Argument / input errors
struct InvalidN : Error { using Error::Error; };
struct UnsupportedN : Error { using Error::Error; };
struct DegreeMismatch : Error { using Error::Error; };
struct PartExponentTooSmall : Error { using Error::Error; };
struct PrimeNotDivisor : Error { using Error::Error; };
struct ContainmentViolated : Error { using Error::Error; };
struct IdentityInS : Error { using Error::Error; };
struct SymmetryViolation : Error { using Error::Error; };
struct ParseError : Error { using Error::Error; };
struct PreconditionFailed : Error { using Error::Error; };

// Resource guards
struct CapExceeded : Error { using Error::Error; };
struct BudgetExceeded : Error { using Error::Error; };

// Two independent routes to the same fact disagreed.  Always an engine
// bug, never a mathematical outcome; nothing downstream may catch this.
struct ConsistencyFailure : Error { using Error::Error; };

} // namespace qci

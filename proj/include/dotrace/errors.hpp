#pragma once

#include <stdexcept>
#include <string>

namespace dotrace {

// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// ---- field construction ----
struct InvalidPrime : Error {
    using Error::Error;
};
struct InvalidRange : Error {
    using Error::Error;
};
struct ReducibleModulus : Error {
    using Error::Error;
};
struct NonPrimitiveModulusRoot : Error {
    using Error::Error;
};

// ---- parameter validation ----
struct ExcludedL : Error {
    using Error::Error;
};

// ---- cyclic codes ----
struct NotExtended : Error {
    using Error::Error;
};
struct CoefficientNotInBaseField : Error {
    using Error::Error;
};

// ---- exponential sums ----
struct UnclassifiedValue : Error {
    using Error::Error;
};
struct IdentityMismatch : Error {
    using Error::Error;
};

// ---- closed-form evaluation ----
struct InexactDivision : Error {
    using Error::Error;
};

// ---- enumeration ----
struct BudgetExceeded : Error {
    using Error::Error;
};

// ---- designs ----
struct ScalarRuleViolated : Error {
    using Error::Error;
};
struct WeightMismatch : Error {
    using Error::Error;
};
struct NonUniformBlockSize : Error {
    using Error::Error;
};

}  // namespace dotrace

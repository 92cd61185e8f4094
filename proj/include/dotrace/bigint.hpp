#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

#include "dotrace/errors.hpp"

// Thin helpers around GMP. All multiplicities and closed-form table values
// are exact; mpq_class is used for formulas with divisions, with a final
// integrality assertion.

namespace dotrace {

using Int = mpz_class;
using Rat = mpq_class;

inline Int ipow(long base, unsigned long e) {
    Int r;
    mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(base), e);
    return r;
}

inline Rat rpow(long base, long e) {
    if (e >= 0) return Rat(ipow(base, static_cast<unsigned long>(e)));
    return Rat(1) / Rat(ipow(base, static_cast<unsigned long>(-e)));
}

// n*(n-1)/2, exact
inline Int choose2(const Int& n) { return n * (n - 1) / 2; }

// Asserts r is an integer and returns it.
inline Int require_integer(const Rat& r, const char* what) {
    if (r.get_den() != 1)
        throw InexactDivision(std::string(what) + ": division is not exact (" + r.get_str() + ")");
    return r.get_num();
}

inline std::string to_decimal(const Int& v) { return v.get_str(); }

}  // namespace dotrace

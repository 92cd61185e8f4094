#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "dotrace/gf.hpp"
#include "dotrace/params.hpp"

namespace dotrace {

// Orbit of j under multiplication by p modulo n.
struct CyclotomicCoset {
    std::int64_t leader = 0;             // smallest member
    std::vector<std::int64_t> members;   // sorted
};

CyclotomicCoset cyclotomic_coset(std::int64_t j, std::int64_t n, int p);

// Defining set of the (extended) dual code: C_1 u C_{p^l+1} u C_{p^{3l}+1},
// plus {0} iff extended.
struct DefiningSet {
    std::int64_t length = 0;  // n, or n+1 when extended
    bool extended = false;
    std::vector<std::int64_t> exponents;       // sorted union of whole cosets (+ 0)
    std::vector<std::int64_t> coset_leaders;   // generating coset leaders
};

DefiningSet dual_defining_set(const CodeParams& params, bool extended);

// true iff every base-p digit of r is <= the corresponding digit of s.
bool p_adic_dominates(std::int64_t r, std::int64_t s, int p, int m);

struct AffineInvarianceResult {
    bool invariant = false;
    // on failure: (r, s) with s in the set, r dominated by s, r missing
    std::optional<std::pair<std::int64_t, std::int64_t>> witness;
};

// Kasami-Lin-Peterson test on an extended defining set (length must be p^m).
// Scans s, then r, in increasing order, so the witness is deterministic.
AffineInvarianceResult is_affine_invariant(const DefiningSet& ds, int p, int m);

// Minimal polynomial of alpha^i over GF(p): prod_{e in C_i} (x - alpha^e),
// expanded over GF(p^m) and verified to have base-field coefficients.
// Returned constant-first, monic.
std::vector<int> minimal_polynomial(const FieldTables& tables, std::int64_t i);

}  // namespace dotrace

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dotrace/errors.hpp"

namespace dotrace {

// The three cases of the value/weight tables, determined by d' = gcd(m, 2l)
// versus d = gcd(m, l).
enum class Branch { OddD, EvenD, TwoD };

std::string to_string(Branch b);

// Validated (p, m, l) plus every derived quantity the tables need. The single
// source of parameter truth.
struct CodeParams {
    int p = 0;
    int m = 0;
    int l = 0;

    std::int64_t q = 0;  // p^m
    std::int64_t n = 0;  // q - 1
    int d = 0;           // gcd(m, l)
    int dprime = 0;      // gcd(m, 2l)
    int s = -1;          // m/2 when m even, else -1
    int mu = 0;          // (-1)^{s/d} when defined (d | s), else 0
    int p_star = 0;      // (-1)^{(p-1)/2} p
    Branch branch = Branch::OddD;

    std::int64_t e1 = 0;  // (p^l + 1) mod n
    std::int64_t e3 = 0;  // (p^{3l} + 1) mod n

    std::vector<std::string> warnings;
};

// Checks p odd prime, m >= 3, 1 <= l <= m-1 and l not in
// {m/6, m/4, m/2, 3m/4, 5m/6} (integral members only); computes the derived
// quantities and assigns the branch. Emits warnings for m < 6 (the weight
// tables are stated for m >= 6) and for m = 3d.
CodeParams validate_params(int p, int m, int l);

}  // namespace dotrace

#pragma once

#include <cstdint>
#include <vector>

#include "dotrace/bigint.hpp"
#include "dotrace/code.hpp"
#include "dotrace/expsum.hpp"
#include "dotrace/params.hpp"

namespace dotrace {

// One row of the branch's value-distribution table: the class (with its exact
// value) and the closed-form multiplicity, evaluated exactly.
struct ValueDistRow {
    SValueClass cls;
    Int multiplicity;
};

// All rows of the branch's table (one per class of value_class_table, in the
// same order). Multiplicities sum to p^{3m}. Rows with multiplicity 0 are kept
// here so the census alignment stays 1:1; serialization drops them.
std::vector<ValueDistRow> value_distribution(const CodeParams& params);

// Closed-form weight distribution (the branch's theorem table instantiated
// over both signs, equal weights merged, rows 0 and p^m included).
WeightDistribution weight_distribution_theory(const CodeParams& params);

// The same distribution derived by a second route: for every value class,
// T(S,h) = p^{m-1} + (1/p) sum_{y != 0} zeta^{yh} sigma_y(S) evaluated
// symbolically, weight = p^m - T. Exercises the proof machinery end to end;
// must equal weight_distribution_theory.
WeightDistribution weight_distribution_from_value_rows(const CodeParams& params);

struct DesignParams {
    Int v, k, lambda, b;
    int t = 2;
};

// Largest w <= n_plus_1 with w - floor((w+p-2)/(p-1)) < delta.
std::int64_t support_multiplicity_threshold(std::int64_t delta, std::int64_t n_plus_1, int p);

// 2-(p^m, i, lambda) parameters for every weight i <= threshold with A_i != 0:
// b = A_i/(p-1) and lambda from b*C(i,2) = lambda*C(p^m,2), both divisions
// exact.
std::vector<DesignParams> design_parameters(const CodeParams& params);

}  // namespace dotrace

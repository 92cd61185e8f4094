#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <vector>

#include "dotrace/bigint.hpp"
#include "dotrace/expsum.hpp"
#include "dotrace/gf.hpp"
#include "dotrace/params.hpp"

namespace dotrace {

// One codeword of the code: (Tr(a x^{p^{3l}+1} + b x^{p^l+1} + c x) + h)_{x in F_q}.
struct CodewordSpec {
    FqElem a, b, c;
    Gfp h = 0;

    friend bool operator==(const CodewordSpec&, const CodewordSpec&) = default;
    friend auto operator<=>(const CodewordSpec&, const CodewordSpec&) = default;
};

struct WeightDistribution {
    std::map<std::int64_t, Int> entries;  // weight -> multiplicity
    Int total = 0;

    void add(std::int64_t w, const Int& mult) {
        if (mult == 0) return;
        entries[w] += mult;
        total += mult;
    }
    friend bool operator==(const WeightDistribution& a, const WeightDistribution& b) {
        return a.entries == b.entries;
    }
};

// Observed S(a,b,c) counts per value class, aligned with
// value_class_table(params) / SValueClassifier ordering.
struct SCensus {
    std::vector<SValueClass> classes;
    std::vector<Int> counts;

    // keyed view for comparisons: (row, upsilon, j) -> count
    std::map<std::tuple<int, int, int>, Int> as_map() const;
};

enum class EnumerationMode { naive, transform };

struct EnumerationResult {
    WeightDistribution distribution;
    SCensus census;
};

using ProgressFn = std::function<void(std::int64_t done, std::int64_t total)>;

inline constexpr std::int64_t kDefaultEnumerationBudget = std::int64_t{4} << 30;  // ~4.3e9 triples

// Coordinate convention: position 0 is x = 0 and position 1+i is x = alpha^i.
std::vector<Gfp> codeword(const FieldTables& tables, const CodeParams& params,
                          const CodewordSpec& spec);

// Hamming weight p^m - T(a,b,c,h), from the trace histogram; no vector is
// materialized.
std::int64_t weight_of(const FieldTables& tables, const CodeParams& params,
                       const CodewordSpec& spec);

// Exact weight distribution plus S-value census over all p^{3m+1} codeword
// specs. Deterministic for any mode/thread combination. Throws BudgetExceeded
// if p^{3m} > budget.
EnumerationResult enumerate_weight_distribution(const FieldTables& tables, const CodeParams& params,
                                                EnumerationMode mode, int threads,
                                                std::int64_t budget = kDefaultEnumerationBudget,
                                                const ProgressFn& progress = nullptr);

// All specs of the given weights, each list in (a,b,c,h)-lexicographic order
// (elements ordered zero-first, then by discrete log; h ascending).
std::map<std::int64_t, std::vector<CodewordSpec>> collect_specs_of_weights(
    const FieldTables& tables, const CodeParams& params, const std::vector<std::int64_t>& targets,
    int threads, std::int64_t budget = kDefaultEnumerationBudget,
    const ProgressFn& progress = nullptr);

std::vector<CodewordSpec> collect_specs_of_weight(const FieldTables& tables,
                                                  const CodeParams& params, std::int64_t target,
                                                  int threads,
                                                  std::int64_t budget = kDefaultEnumerationBudget);

// Rank over GF(p) of the 3m+1 generators {Tr(alpha^j x^{e3})}, {Tr(alpha^j x^{e1})},
// {Tr(alpha^j x)} (j = 0..m-1) plus the all-ones vector; the code's dimension.
int dimension_check(const FieldTables& tables, const CodeParams& params);

// Rank of an arbitrary set of length-q vectors over GF(p) (exposed for tests).
int gfp_rank(std::vector<std::vector<Gfp>> rows, int p);

}  // namespace dotrace

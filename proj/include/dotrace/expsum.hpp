#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dotrace/bigint.hpp"
#include "dotrace/gf.hpp"
#include "dotrace/params.hpp"

namespace dotrace {

// Element of Z[zeta_p], stored as p coefficients of 1, zeta, ..., zeta^{p-1}.
// Canonical form keeps coeff(0) == 0, using 1 + zeta + ... + zeta^{p-1} = 0;
// equality is canonical-form equality. No floating point anywhere.
class CyclotomicInteger {
public:
    explicit CyclotomicInteger(int p) : p_(p), c_(p, 0) {}
    static CyclotomicInteger integer(int p, Int k);
    static CyclotomicInteger zeta_power(int p, int j, Int scale = 1);
    static CyclotomicInteger from_counts(std::span<const std::int64_t> counts);

    int p() const { return p_; }
    const std::vector<Int>& coeffs() const { return c_; }

    CyclotomicInteger& operator+=(const CyclotomicInteger& o);
    CyclotomicInteger& operator-=(const CyclotomicInteger& o);
    friend CyclotomicInteger operator+(CyclotomicInteger a, const CyclotomicInteger& b) {
        return a += b;
    }
    friend CyclotomicInteger operator-(CyclotomicInteger a, const CyclotomicInteger& b) {
        return a -= b;
    }
    friend CyclotomicInteger operator*(const CyclotomicInteger& a, const CyclotomicInteger& b);
    CyclotomicInteger operator-() const;
    CyclotomicInteger scaled(const Int& k) const;
    CyclotomicInteger times_zeta(int j) const;  // multiply by zeta^j

    friend bool operator==(const CyclotomicInteger& a, const CyclotomicInteger& b) {
        return a.p_ == b.p_ && a.c_ == b.c_;
    }

    bool is_zero() const;
    // If the value is a rational integer, returns it.
    std::optional<Int> as_rational_integer() const;

    std::string to_string() const;  // e.g. "z - z^2"

private:
    void canonicalize();
    int p_;
    std::vector<Int> c_;
};

// sigma_y: zeta -> zeta^y, for y in [1, p-1].
CyclotomicInteger galois_apply(int y, const CyclotomicInteger& z);

// G(eta', chi_1') = sum_{v in GF(p)*} eta'(v) zeta^v; G^2 = (-1)^{(p-1)/2} p.
CyclotomicInteger gauss_sum(int p);

// Exact carrier for S(a,b,c): counts[j] = #{x : Tr(a x^{e3} + b x^{e1} + c x) = j}.
struct TraceHistogram {
    int p = 0;
    std::vector<std::int64_t> counts;

    std::int64_t total() const;
    CyclotomicInteger to_cyclotomic() const;
};

// Naive evaluation over all q field elements; the oracle of record.
TraceHistogram s_abc(const FieldTables& tables, const CodeParams& params, FqElem a, FqElem b,
                     FqElem c);

// Character-transform fast path: histograms for every c at once,
// O(q * m * p^2) small-integer operations. Layout: out[index_of(c) * p + j].
std::vector<std::int32_t> s_all_c(const FieldTables& tables, const CodeParams& params, FqElem a,
                                  FqElem b);

// Lower-level kernel used by the enumeration engine: fills buf (size q*p) with
// histograms indexed by the *trace tuple* of c (see FieldTables::tuple_of_index)
// rather than by element index.
void s_all_c_tuple_order(const FieldTables& tables, const CodeParams& params, FqElem a, FqElem b,
                         std::span<std::int32_t> buf);

// #{x : Tr(a x^{e3} + b x^{e1} + c x) + h = 0}, computed from the histogram and
// independently from p^{m-1} + (1/p) sum_{y != 0} zeta^{yh} sigma_y(S); throws
// IdentityMismatch if the two disagree.
std::int64_t t_abch(const FieldTables& tables, const CodeParams& params, FqElem a, FqElem b,
                    FqElem c, Gfp h);

// One row of the branch's value table (Tables 1-3): S takes the value `value`.
// row is the paper's multiplicity subscript (1..6 plus 7=zero row and 8=p^m for
// the d'=d tables; 1..8 plus 9=zero row and 10=p^m for d'=2d). upsilon is 0/1
// where the table carries eps = (-1)^upsilon, else -1. j is the zeta shift
// (0 when none).
struct SValueClass {
    Branch branch = Branch::OddD;
    int row = 0;
    int upsilon = -1;
    int j = 0;
    CyclotomicInteger value;
    std::string label;
};

// All value classes of the branch, materialized exactly (sqrt(p*) realized as
// gauss_sum(p)). Values are pairwise distinct; verified at construction.
std::vector<SValueClass> value_class_table(const CodeParams& params);

// Exact matcher from S values (or raw histograms) to value classes.
class SValueClassifier {
public:
    explicit SValueClassifier(const CodeParams& params);

    const std::vector<SValueClass>& classes() const { return classes_; }
    int num_classes() const { return static_cast<int>(classes_.size()); }

    // throws UnclassifiedValue if s is not in the table
    const SValueClass& classify(const CyclotomicInteger& s) const;

    // hot path: canonical key k[j-1] = counts[j] - counts[0]; returns class
    // index or throws UnclassifiedValue
    int classify_counts(std::span<const std::int32_t> counts) const;
    int classify_counts64(std::span<const std::int64_t> counts) const;

private:
    int lookup(std::span<const std::int64_t> key) const;
    int p_;
    std::vector<SValueClass> classes_;
    std::vector<std::int64_t> keys_;     // sorted, stride p-1
    std::vector<int> key_class_;         // class index per sorted key
};

// Spec-level wrapper: classify a single S value against the branch table.
SValueClass classify_s(const CodeParams& params, const CyclotomicInteger& s);

}  // namespace dotrace

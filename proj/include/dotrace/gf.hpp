#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "dotrace/errors.hpp"

namespace dotrace {

// Canonical GF(p) value in [0, p).
using Gfp = int;

struct FieldParams {
    int p = 3;                 // odd prime
    int m = 1;                 // extension degree
    std::vector<int> modulus;  // monic, degree m, constant term first; empty = Conway default

    std::string modulus_string() const;
    static std::vector<int> parse_modulus(const std::string& csv);
};

// The Conway polynomial for GF(p^m) (Luebeck convention): the
// lexicographically smallest monic primitive polynomial compatible with the
// Conway polynomials of all proper subfields. Coefficients constant-first.
std::vector<int> conway_polynomial(int p, int m);

// Element of GF(p^m) in log representation: Zero, or Exp(i) meaning alpha^i.
class FqElem {
public:
    static constexpr std::int32_t kZeroLog = -1;

    constexpr FqElem() = default;
    static constexpr FqElem zero() { return FqElem(); }
    static FqElem from_log(std::int32_t lg) {
        FqElem e;
        e.log_ = lg;
        return e;
    }

    constexpr bool is_zero() const { return log_ == kZeroLog; }
    constexpr std::int32_t log() const { return log_; }  // kZeroLog for zero

    friend constexpr bool operator==(FqElem a, FqElem b) { return a.log_ == b.log_; }
    friend constexpr auto operator<=>(FqElem a, FqElem b) { return a.log_ <=> b.log_; }

private:
    std::int32_t log_ = kZeroLog;
};

// Table-driven arithmetic for GF(p^m). Immutable after construction; safe for
// concurrent reads. Elements are also addressed by a dense index:
//   index 0 <-> zero, index 1+i <-> alpha^i.
class FieldTables {
public:
    static FieldTables build(FieldParams params);

    const FieldParams& params() const { return params_; }
    int p() const { return params_.p; }
    int m() const { return params_.m; }
    std::int64_t q() const { return q_; }
    std::int64_t n() const { return n_; }  // q - 1

    // ---- element <-> index ----
    std::uint32_t index_of(FqElem x) const { return static_cast<std::uint32_t>(x.log() + 1); }
    FqElem element_at(std::uint32_t index) const {
        return FqElem::from_log(static_cast<std::int32_t>(index) - 1);
    }

    // ---- arithmetic ----
    FqElem mul(FqElem a, FqElem b) const {
        if (a.is_zero() || b.is_zero()) return FqElem::zero();
        std::int64_t s = a.log() + b.log();
        if (s >= n_) s -= n_;
        return FqElem::from_log(static_cast<std::int32_t>(s));
    }
    FqElem inv(FqElem a) const;
    FqElem neg(FqElem a) const {
        if (a.is_zero()) return a;
        std::int64_t s = a.log() + neg_shift_;
        if (s >= n_) s -= n_;
        return FqElem::from_log(static_cast<std::int32_t>(s));
    }
    FqElem add(FqElem a, FqElem b) const;
    FqElem sub(FqElem a, FqElem b) const { return add(a, neg(b)); }
    FqElem pow(FqElem a, std::int64_t e) const;

    // Element with the given coefficient vector (constant-first, length m).
    FqElem element_from_coeffs(std::span<const int> coeffs) const;
    // Coefficient vector of x with respect to the basis 1, alpha, ..., alpha^{m-1}.
    std::vector<int> coeffs_of(FqElem x) const;
    // Embeds a GF(p) value.
    FqElem from_base(Gfp v) const;

    // ---- trace and characters ----
    Gfp trace(FqElem x) const { return trace_by_index_[index_of(x)]; }
    // quadratic character eta: +1 on nonzero squares, -1 on nonsquares, 0 at 0
    int quad_char(FqElem x) const {
        if (x.is_zero()) return 0;
        return (x.log() % 2 == 0) ? 1 : -1;
    }

    // Monomial map x -> x^e by element index, exponent reduced mod n.
    // power_map(e)[index_of(x)] == index_of(x^e) for nonzero e.
    std::vector<std::uint32_t> power_map(std::int64_t e_mod_n) const;

    // ---- raw tables for enumeration inner loops ----
    // trace(alpha^i) for i in [0, 2n): doubled so trace2[i + j] needs no mod.
    std::span<const std::uint8_t> trace2_by_log() const { return trace2_by_log_; }
    // trace indexed by element index (0 -> 0).
    std::span<const std::uint8_t> trace_by_index() const { return trace_by_index_; }

    // Additive-transform indexing. tuple_of_index()[ix] packs
    // (Tr(x*alpha^0), ..., Tr(x*alpha^{m-1})) base p; index_of_tuple() is its
    // inverse. Both are bijections on [0, q).
    std::span<const std::uint32_t> tuple_of_index() const { return tuple_of_index_; }
    std::span<const std::uint32_t> index_of_tuple() const { return index_of_tuple_; }

    // Coefficient vector of alpha^i packed base p (for the dense-oracle tests
    // and addition).
    std::span<const std::uint32_t> packed_by_index() const { return packed_by_index_; }

private:
    FieldParams params_;
    std::int64_t q_ = 0;
    std::int64_t n_ = 0;
    std::int64_t neg_shift_ = 0;  // log of -1
    std::vector<std::uint8_t> exp_coeffs_;  // n x m, coeffs of alpha^i
    std::vector<std::int32_t> log_by_packed_;
    std::vector<std::uint32_t> packed_by_index_;
    std::vector<std::uint8_t> trace_by_index_;
    std::vector<std::uint8_t> trace2_by_log_;
    std::vector<std::uint32_t> tuple_of_index_;
    std::vector<std::uint32_t> index_of_tuple_;
};

// Convenience wrappers mirroring the operation surface.
inline FieldTables build_field(FieldParams params) { return FieldTables::build(std::move(params)); }
inline Gfp trace(const FieldTables& t, FqElem x) { return t.trace(x); }
inline int quad_char(const FieldTables& t, FqElem x) { return t.quad_char(x); }

// Legendre symbol of v mod p, extended by 0 at 0 (the prime-field quadratic
// character eta').
int legendre(std::int64_t v, int p);

bool is_prime(std::int64_t v);

}  // namespace dotrace

#include "dotrace/gf.hpp"

#include <algorithm>
#include <sstream>

#include "polyp.hpp"

namespace dotrace {

bool is_prime(std::int64_t v) {
    if (v < 2) return false;
    for (std::int64_t d = 2; d * d <= v; ++d)
        if (v % d == 0) return false;
    return true;
}

int legendre(std::int64_t v, int p) {
    v %= p;
    if (v < 0) v += p;
    if (v == 0) return 0;
    std::int64_t r = 1, base = v, e = (p - 1) / 2;
    while (e) {
        if (e & 1) r = r * base % p;
        base = base * base % p;
        e >>= 1;
    }
    return r == 1 ? 1 : -1;
}

namespace {

std::vector<std::int64_t> prime_factors(std::int64_t v) {
    std::vector<std::int64_t> fs;
    for (std::int64_t d = 2; d * d <= v; ++d) {
        if (v % d == 0) {
            fs.push_back(d);
            while (v % d == 0) v /= d;
        }
    }
    if (v > 1) fs.push_back(v);
    return fs;
}

}  // namespace

namespace polyp {
bool is_irreducible(const Poly& f, int p) {
    int m = degree(f);
    if (m < 1) return false;
    Poly x = {0, 1};
    // x^{p^m} mod f must equal x
    Poly t = x;
    for (int k = 0; k < m; ++k) t = powmod(t, p, f, p);
    if (t != mod(x, f, p)) return false;
    for (std::int64_t r : prime_factors(m)) {
        int k = m / static_cast<int>(r);
        Poly u = x;
        for (int i = 0; i < k; ++i) u = powmod(u, p, f, p);
        // gcd(x^{p^k} - x, f) must be 1
        Poly diff = add(u, scale(x, p - 1, p), p);
        if (degree(gcd(diff, f, p)) != 0) return false;
    }
    return true;
}
}  // namespace polyp

std::string FieldParams::modulus_string() const {
    std::ostringstream os;
    for (size_t i = 0; i < modulus.size(); ++i) {
        if (i) os << ',';
        os << modulus[i];
    }
    return os.str();
}

std::vector<int> FieldParams::parse_modulus(const std::string& csv) {
    std::vector<int> out;
    std::stringstream ss(csv);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(std::stoi(tok));
    return out;
}

FieldTables FieldTables::build(FieldParams params) {
    const int p = params.p;
    const int m = params.m;
    if (!is_prime(p) || p == 2) throw InvalidPrime("p must be an odd prime, got " + std::to_string(p));
    if (m < 1 || m > 24) throw InvalidRange("extension degree m out of range: " + std::to_string(m));

    if (params.modulus.empty()) params.modulus = conway_polynomial(p, m);
    polyp::Poly f = params.modulus;
    polyp::strip(f);
    if (polyp::degree(f) != m || f.back() != 1)
        throw InvalidRange("modulus must be monic of degree m");
    for (int c : f)
        if (c < 0 || c >= p) throw InvalidRange("modulus coefficients must lie in [0, p)");
    if (!polyp::is_irreducible(f, p))
        throw ReducibleModulus("modulus " + params.modulus_string() + " is reducible over GF(" +
                               std::to_string(p) + ")");

    FieldTables t;
    t.params_ = std::move(params);
    std::int64_t q = 1;
    for (int i = 0; i < m; ++i) {
        q *= p;
        if (q > (std::int64_t{1} << 40)) throw InvalidRange("field too large");
    }
    t.q_ = q;
    t.n_ = q - 1;

    // alpha is the residue class of x; verify it generates the multiplicative
    // group before filling tables.
    for (std::int64_t r : prime_factors(t.n_)) {
        polyp::Poly u = polyp::powmod({0, 1}, t.n_ / r, f, p);
        if (u == polyp::Poly{1})
            throw NonPrimitiveModulusRoot("x mod (" + t.params_.modulus_string() +
                                          ") does not generate GF(" + std::to_string(p) + "^" +
                                          std::to_string(m) + ")*");
    }

    const std::int64_t n = t.n_;
    t.exp_coeffs_.assign(static_cast<size_t>(n) * m, 0);
    t.log_by_packed_.assign(static_cast<size_t>(q), -1);
    t.packed_by_index_.assign(static_cast<size_t>(q), 0);

    std::vector<int> cur(m, 0);
    cur[0] = 1;
    std::vector<std::int64_t> ppow(m + 1, 1);
    for (int k = 1; k <= m; ++k) ppow[k] = ppow[k - 1] * p;
    for (std::int64_t i = 0; i < n; ++i) {
        std::uint32_t packed = 0;
        for (int k = 0; k < m; ++k) {
            t.exp_coeffs_[static_cast<size_t>(i) * m + k] = static_cast<std::uint8_t>(cur[k]);
            packed += static_cast<std::uint32_t>(cur[k] * ppow[k]);
        }
        if (t.log_by_packed_[packed] != -1)
            throw NonPrimitiveModulusRoot("exp table hit a repeated element");
        t.log_by_packed_[packed] = static_cast<std::int32_t>(i);
        t.packed_by_index_[static_cast<size_t>(i) + 1] = packed;
        // multiply by x and reduce mod f
        std::vector<int> nxt(m, 0);
        int top = cur[m - 1];
        for (int k = m - 1; k > 0; --k) nxt[k] = cur[k - 1];
        nxt[0] = 0;
        if (top)
            for (int k = 0; k < m; ++k) nxt[k] = ((nxt[k] - top * f[k]) % p + p) % p;
        cur = std::move(nxt);
    }
    // after n steps we must be back at 1
    if (!(cur[0] == 1 && std::all_of(cur.begin() + 1, cur.end(), [](int v) { return v == 0; })))
        throw NonPrimitiveModulusRoot("alpha^n != 1 (internal inconsistency)");

    t.neg_shift_ = n / 2;  // q odd => -1 = alpha^{n/2}
    {
        std::uint32_t packed_minus1 = static_cast<std::uint32_t>(p - 1);
        if (t.log_by_packed_[packed_minus1] != t.neg_shift_)
            throw NonPrimitiveModulusRoot("log(-1) != n/2 (internal inconsistency)");
    }

    // trace(alpha^i) = sum_k alpha^{i p^k}; the coefficient-vector sum must lie
    // in the base field.
    t.trace_by_index_.assign(static_cast<size_t>(q), 0);
    t.trace2_by_log_.assign(static_cast<size_t>(2 * n), 0);
    for (std::int64_t i = 0; i < n; ++i) {
        std::vector<int> acc(m, 0);
        std::int64_t e = i;
        for (int k = 0; k < m; ++k) {
            for (int c = 0; c < m; ++c)
                acc[c] = (acc[c] + t.exp_coeffs_[static_cast<size_t>(e) * m + c]) % p;
            e = e * p % n;
        }
        for (int c = 1; c < m; ++c)
            if (acc[c] != 0) throw CoefficientNotInBaseField("trace left the base field");
        t.trace_by_index_[static_cast<size_t>(i) + 1] = static_cast<std::uint8_t>(acc[0]);
        t.trace2_by_log_[static_cast<size_t>(i)] = static_cast<std::uint8_t>(acc[0]);
        t.trace2_by_log_[static_cast<size_t>(i + n)] = static_cast<std::uint8_t>(acc[0]);
    }

    // transform indexing: tuple(x) = (Tr(x*alpha^0), ..., Tr(x*alpha^{m-1}))
    // packed base p; a bijection because the trace form is nondegenerate.
    t.tuple_of_index_.assign(static_cast<size_t>(q), 0);
    t.index_of_tuple_.assign(static_cast<size_t>(q), 0);
    std::vector<std::uint8_t> seen(static_cast<size_t>(q), 0);
    for (std::int64_t ix = 0; ix < q; ++ix) {
        std::uint32_t tup = 0;
        if (ix > 0) {
            std::int64_t lg = ix - 1;
            for (int k = 0; k < m; ++k) {
                std::int64_t e = lg + k >= n ? lg + k - n : lg + k;
                tup += static_cast<std::uint32_t>(t.trace2_by_log_[static_cast<size_t>(e)] * ppow[k]);
            }
        }
        if (seen[tup]) throw CoefficientNotInBaseField("trace tuple map is not injective");
        seen[tup] = 1;
        t.tuple_of_index_[static_cast<size_t>(ix)] = tup;
        t.index_of_tuple_[tup] = static_cast<std::uint32_t>(ix);
    }
    return t;
}

FqElem FieldTables::inv(FqElem a) const {
    if (a.is_zero()) throw InvalidRange("inverse of zero");
    std::int64_t lg = a.log() == 0 ? 0 : n_ - a.log();
    return FqElem::from_log(static_cast<std::int32_t>(lg));
}

FqElem FieldTables::add(FqElem a, FqElem b) const {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    const int m = params_.m;
    const int p = params_.p;
    const std::uint8_t* va = &exp_coeffs_[static_cast<size_t>(a.log()) * m];
    const std::uint8_t* vb = &exp_coeffs_[static_cast<size_t>(b.log()) * m];
    std::uint32_t packed = 0;
    std::uint32_t mult = 1;
    for (int k = 0; k < m; ++k) {
        int v = va[k] + vb[k];
        if (v >= p) v -= p;
        packed += static_cast<std::uint32_t>(v) * mult;
        mult *= static_cast<std::uint32_t>(p);
    }
    if (packed == 0) return FqElem::zero();
    return FqElem::from_log(log_by_packed_[packed]);
}

FqElem FieldTables::pow(FqElem a, std::int64_t e) const {
    if (a.is_zero()) {
        if (e == 0) return FqElem::from_log(0);
        if (e < 0) throw InvalidRange("0^negative");
        return FqElem::zero();
    }
    std::int64_t lg = (a.log() % n_) * (e % n_) % n_;
    lg = ((lg % n_) + n_) % n_;
    return FqElem::from_log(static_cast<std::int32_t>(lg));
}

FqElem FieldTables::element_from_coeffs(std::span<const int> coeffs) const {
    const int p = params_.p;
    std::uint32_t packed = 0;
    std::uint32_t mult = 1;
    for (int k = 0; k < params_.m; ++k) {
        int v = k < static_cast<int>(coeffs.size()) ? ((coeffs[k] % p) + p) % p : 0;
        packed += static_cast<std::uint32_t>(v) * mult;
        mult *= static_cast<std::uint32_t>(p);
    }
    if (packed == 0) return FqElem::zero();
    return FqElem::from_log(log_by_packed_[packed]);
}

std::vector<int> FieldTables::coeffs_of(FqElem x) const {
    std::vector<int> out(params_.m, 0);
    if (!x.is_zero()) {
        const std::uint8_t* v = &exp_coeffs_[static_cast<size_t>(x.log()) * params_.m];
        for (int k = 0; k < params_.m; ++k) out[k] = v[k];
    }
    return out;
}

FqElem FieldTables::from_base(Gfp v) const {
    v = ((v % params_.p) + params_.p) % params_.p;
    if (v == 0) return FqElem::zero();
    std::vector<int> c(params_.m, 0);
    c[0] = v;
    return element_from_coeffs(c);
}

std::vector<std::uint32_t> FieldTables::power_map(std::int64_t e_mod_n) const {
    std::int64_t e = ((e_mod_n % n_) + n_) % n_;
    std::vector<std::uint32_t> out(static_cast<size_t>(q_));
    out[0] = 0;
    for (std::int64_t i = 0; i < n_; ++i)
        out[static_cast<size_t>(i) + 1] = static_cast<std::uint32_t>(i * e % n_ + 1);
    return out;
}

}  // namespace dotrace

#pragma once

// Dense polynomial arithmetic over GF(p). Coefficient vectors are
// constant-first with no trailing zeros ([] is the zero polynomial).
// Degrees here never exceed a few dozen, so schoolbook everything.

#include <cstdint>
#include <vector>

namespace dotrace::polyp {

using Poly = std::vector<int>;

inline void strip(Poly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

inline int degree(const Poly& a) { return static_cast<int>(a.size()) - 1; }

inline Poly add(const Poly& a, const Poly& b, int p) {
    Poly r(std::max(a.size(), b.size()), 0);
    for (size_t i = 0; i < r.size(); ++i) {
        int v = (i < a.size() ? a[i] : 0) + (i < b.size() ? b[i] : 0);
        r[i] = v % p;
    }
    strip(r);
    return r;
}

inline Poly scale(const Poly& a, int c, int p) {
    c %= p;
    if (c < 0) c += p;
    Poly r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = (a[i] * c) % p;
    strip(r);
    return r;
}

inline Poly mul(const Poly& a, const Poly& b, int p) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i])
            for (size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
    strip(r);
    return r;
}

// a mod f, f monic
inline Poly mod(Poly a, const Poly& f, int p) {
    int df = degree(f);
    while (degree(a) >= df) {
        int c = a.back();
        if (c) {
            size_t off = a.size() - 1 - df;
            for (int k = 0; k <= df; ++k) a[off + k] = ((a[off + k] - c * f[k]) % p + p) % p;
        }
        a.pop_back();
    }
    strip(a);
    return a;
}

inline Poly mulmod(const Poly& a, const Poly& b, const Poly& f, int p) {
    return mod(mul(a, b, p), f, p);
}

inline Poly powmod(Poly a, std::int64_t e, const Poly& f, int p) {
    Poly r = {1};
    a = mod(std::move(a), f, p);
    while (e > 0) {
        if (e & 1) r = mulmod(r, a, f, p);
        a = mulmod(a, a, f, p);
        e >>= 1;
    }
    return r;
}

inline Poly gcd(Poly a, Poly b, int p) {
    auto inv_mod_p = [p](int v) {
        int r = 1, base = ((v % p) + p) % p, e = p - 2;
        while (e) {
            if (e & 1) r = r * base % p;
            base = base * base % p;
            e >>= 1;
        }
        return r;
    };
    while (!b.empty()) {
        // reduce a mod b after making b monic
        Poly bm = scale(b, inv_mod_p(b.back()), p);
        a = mod(std::move(a), bm, p);
        std::swap(a, b);
    }
    if (!a.empty()) a = scale(a, inv_mod_p(a.back()), p);
    return a;
}

// Irreducibility over GF(p) for monic f: x^{p^m} == x mod f and
// gcd(x^{p^{m/r}} - x, f) == 1 for every prime r | m.
bool is_irreducible(const Poly& f, int p);

}  // namespace dotrace::polyp

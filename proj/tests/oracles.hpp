#pragma once

// Independent dense-polynomial model of GF(p^m), used as the oracle for the
// table-driven field. Deliberately shares no code with FieldTables: elements
// are coefficient vectors, multiplication is schoolbook reduction mod the
// modulus, traces are computed by repeated Frobenius powering.

#include <complex>
#include <cstdint>
#include <vector>

namespace oracle {

struct Field {
    int p;
    int m;
    std::vector<int> modulus;  // constant-first, monic, degree m

    using Elem = std::vector<int>;  // length m, constant-first

    Elem zero() const { return Elem(m, 0); }
    Elem one() const {
        Elem e(m, 0);
        e[0] = 1;
        return e;
    }
    Elem gen() const {  // the residue class of x
        Elem e(m, 0);
        if (m == 1)
            e[0] = ((-modulus[0]) % p + p) % p;
        else
            e[1] = 1;
        return e;
    }

    Elem add(const Elem& a, const Elem& b) const {
        Elem r(m);
        for (int i = 0; i < m; ++i) r[i] = (a[i] + b[i]) % p;
        return r;
    }

    Elem mul(const Elem& a, const Elem& b) const {
        std::vector<int> full(2 * m - 1, 0);
        for (int i = 0; i < m; ++i)
            if (a[i])
                for (int j = 0; j < m; ++j) full[i + j] = (full[i + j] + a[i] * b[j]) % p;
        for (int k = 2 * m - 2; k >= m; --k) {
            int c = full[k];
            if (c) {
                full[k] = 0;
                for (int i = 0; i < m; ++i)
                    full[k - m + i] = ((full[k - m + i] - c * modulus[i]) % p + p) % p;
            }
        }
        full.resize(m);
        return full;
    }

    Elem pow(Elem a, std::int64_t e) const {
        Elem r = one();
        while (e > 0) {
            if (e & 1) r = mul(r, a);
            a = mul(a, a);
            e >>= 1;
        }
        return r;
    }

    bool is_zero(const Elem& a) const {
        for (int v : a)
            if (v) return false;
        return true;
    }

    // Tr(x) = x + x^p + ... + x^{p^{m-1}}, landing in GF(p).
    int trace(const Elem& a) const {
        Elem acc = zero();
        Elem cur = a;
        for (int k = 0; k < m; ++k) {
            acc = add(acc, cur);
            cur = pow(cur, p);
        }
        for (int i = 1; i < m; ++i)
            if (acc[i] != 0) return -1;  // not in base field: flag for the test
        return acc[0];
    }

    // x^{(q-1)/2} is +-1 for nonzero x
    int quad_char(const Elem& a) const {
        if (is_zero(a)) return 0;
        std::int64_t q = 1;
        for (int i = 0; i < m; ++i) q *= p;
        Elem r = pow(a, (q - 1) / 2);
        if (r == one()) return 1;
        Elem minus_one(m, 0);
        minus_one[0] = p - 1;
        if (r == minus_one) return -1;
        return -2;  // impossible: flags a broken oracle
    }
};

// S(a,b,c) evaluated as a complex number with zeta_p -> exp(2*pi*i/p).
inline std::complex<double> s_abc_complex(const Field& f, std::int64_t e3, std::int64_t e1,
                                          const Field::Elem& a, const Field::Elem& b,
                                          const Field::Elem& c) {
    std::int64_t q = 1;
    for (int i = 0; i < f.m; ++i) q *= f.p;
    const double two_pi = 6.283185307179586476925286766559;
    std::complex<double> acc = 0.0;
    // iterate every field element via base-p odometer on coefficient vectors
    Field::Elem x(f.m, 0);
    for (std::int64_t cnt = 0; cnt < q; ++cnt) {
        int t = (f.trace(f.add(f.add(f.mul(a, f.pow(x, e3)), f.mul(b, f.pow(x, e1))), f.mul(c, x))));
        acc += std::polar(1.0, two_pi * t / f.p);
        for (int i = 0; i < f.m; ++i) {
            if (++x[i] < f.p) break;
            x[i] = 0;
        }
    }
    return acc;
}

}  // namespace oracle

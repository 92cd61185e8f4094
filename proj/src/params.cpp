#include "dotrace/params.hpp"

#include <numeric>

#include "dotrace/gf.hpp"

namespace dotrace {

std::string to_string(Branch b) {
    switch (b) {
        case Branch::OddD: return "d'=d odd";
        case Branch::EvenD: return "d'=d even";
        case Branch::TwoD: return "d'=2d";
    }
    return "?";
}

namespace {
std::int64_t powmod(std::int64_t base, std::int64_t e, std::int64_t mod) {
    std::int64_t r = 1 % mod;
    base %= mod;
    while (e > 0) {
        if (e & 1) r = r * base % mod;
        base = base * base % mod;
        e >>= 1;
    }
    return r;
}
}  // namespace

CodeParams validate_params(int p, int m, int l) {
    if (!is_prime(p) || p == 2) throw InvalidPrime("p must be an odd prime, got " + std::to_string(p));
    if (m < 3) throw InvalidRange("m must be >= 3, got " + std::to_string(m));
    if (l < 1 || l > m - 1) throw InvalidRange("l must satisfy 1 <= l <= m-1");
    // forbidden fractions of m, checked only where they are integers
    const std::pair<int, int> forbidden[] = {{m, 6}, {m, 4}, {m, 2}, {3 * m, 4}, {5 * m, 6}};
    for (auto [num, den] : forbidden)
        if (num % den == 0 && l == num / den)
            throw ExcludedL("l = " + std::to_string(l) + " lies in the excluded set for m = " +
                            std::to_string(m));

    CodeParams cp;
    cp.p = p;
    cp.m = m;
    cp.l = l;
    cp.q = 1;
    for (int i = 0; i < m; ++i) {
        cp.q *= p;
        if (cp.q > (std::int64_t{1} << 40)) throw InvalidRange("p^m too large");
    }
    cp.n = cp.q - 1;
    cp.d = std::gcd(m, l);
    cp.dprime = std::gcd(m, 2 * l);
    cp.p_star = (((p - 1) / 2) % 2 == 0 ? p : -p);
    if (m % 2 == 0) {
        cp.s = m / 2;
        if (cp.s % cp.d == 0) cp.mu = ((cp.s / cp.d) % 2 == 0) ? 1 : -1;
    }
    if (cp.dprime == cp.d)
        cp.branch = (cp.d % 2 == 1) ? Branch::OddD : Branch::EvenD;
    else
        cp.branch = Branch::TwoD;  // d' = 2d is the only other possibility

    cp.e1 = (powmod(p, l, cp.n) + 1) % cp.n;
    cp.e3 = (powmod(p, 3 * l, cp.n) + 1) % cp.n;

    if (m < 6)
        cp.warnings.push_back("m < 6: the closed-form weight distribution is stated for m >= 6");
    if (m == 3 * cp.d)
        cp.warnings.push_back("m = 3d: parameters fall in the companion construction's range");
    return cp;
}

}  // namespace dotrace

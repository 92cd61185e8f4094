#include <cstdint>
#include <map>
#include <mutex>
#include <vector>

#include "dotrace/errors.hpp"
#include "dotrace/gf.hpp"
#include "polyp.hpp"

namespace dotrace {

namespace {

using polyp::Poly;

std::vector<std::int64_t> prime_divisors(std::int64_t v) {
    std::vector<std::int64_t> fs;
    for (std::int64_t d = 2; d * d <= v; ++d)
        if (v % d == 0) {
            fs.push_back(d);
            while (v % d == 0) v /= d;
        }
    if (v > 1) fs.push_back(v);
    return fs;
}

// order of x in (GF(p)[x]/f)* equals p^m - 1
bool root_is_primitive(const Poly& f, int p, int m) {
    std::int64_t n = 1;
    for (int i = 0; i < m; ++i) n *= p;
    n -= 1;
    if (polyp::powmod({0, 1}, n, f, p) != Poly{1}) return false;
    for (std::int64_t r : prime_divisors(n))
        if (polyp::powmod({0, 1}, n / r, f, p) == Poly{1}) return false;
    return true;
}

// f(g) mod h where f has GF(p) coefficients and g is a residue mod h
Poly compose_mod(const Poly& f, const Poly& g, const Poly& h, int p) {
    Poly acc = {};
    Poly gp = {1};
    for (size_t k = 0; k < f.size(); ++k) {
        if (f[k]) acc = polyp::add(acc, polyp::scale(gp, f[k], p), p);
        if (k + 1 < f.size()) gp = polyp::mulmod(gp, g, h, p);
    }
    return acc;
}

std::map<std::pair<int, int>, std::vector<int>> g_cache;
std::mutex g_cache_mutex;

}  // namespace

// Candidates f = x^m + a_{m-1} x^{m-1} + ... + a_0 are ordered by the word
// (c_{m-1}, ..., c_0), c_i = (-1)^{m-i} a_i mod p, lexicographically; the
// Conway polynomial is the first primitive candidate whose root alpha
// satisfies C_{p,m/r}(alpha^{(p^m-1)/(p^{m/r}-1)}) = 0 for every prime r | m.
std::vector<int> conway_polynomial(int p, int m) {
    if (!is_prime(p) || p < 2) throw InvalidPrime("conway_polynomial: bad p");
    if (m < 1 || m > 12) throw InvalidRange("conway_polynomial: m out of supported range");
    {
        std::lock_guard<std::mutex> lock(g_cache_mutex);
        auto it = g_cache.find({p, m});
        if (it != g_cache.end()) return it->second;
    }

    std::int64_t pm = 1;
    for (int i = 0; i < m; ++i) pm *= p;
    auto divisors = prime_divisors(m);
    std::vector<std::pair<std::int64_t, Poly>> sub;  // (norm exponent, subfield Conway)
    for (std::int64_t r : divisors) {
        int d = m / static_cast<int>(r);
        std::int64_t pd = 1;
        for (int i = 0; i < d; ++i) pd *= p;
        sub.emplace_back((pm - 1) / (pd - 1), Poly(conway_polynomial(p, d)));
    }

    std::vector<int> word(m, 0);  // (c_{m-1}, ..., c_0)
    std::int64_t total = 1;
    for (int i = 0; i < m; ++i) total *= p;
    for (std::int64_t it = 0; it < total; ++it) {
        Poly f(m + 1, 0);
        f[m] = 1;
        for (int idx = 0; idx < m; ++idx) {
            int i = m - 1 - idx;  // coefficient index for word position idx
            int sign = ((m - i) % 2 == 0) ? 1 : -1;
            f[i] = ((sign * word[idx]) % p + p) % p;
        }
        bool ok = root_is_primitive(f, p, m);
        if (ok) {
            for (auto& [t, g] : sub) {
                Poly xt = polyp::powmod({0, 1}, t, f, p);
                if (!compose_mod(g, xt, f, p).empty()) {
                    ok = false;
                    break;
                }
            }
        }
        if (ok) {
            std::lock_guard<std::mutex> lock(g_cache_mutex);
            g_cache[{p, m}] = f;
            return f;
        }
        // next word
        for (int idx = m - 1; idx >= 0; --idx) {
            if (++word[idx] < p) break;
            word[idx] = 0;
        }
    }
    throw Error("conway_polynomial: search exhausted (should be unreachable)");
}

}  // namespace dotrace

#include "dotrace/cyclic.hpp"

#include <algorithm>
#include <set>

namespace dotrace {

CyclotomicCoset cyclotomic_coset(std::int64_t j, std::int64_t n, int p) {
    CyclotomicCoset c;
    std::int64_t cur = ((j % n) + n) % n;
    do {
        c.members.push_back(cur);
        cur = cur * p % n;
    } while (cur != c.members.front());
    std::sort(c.members.begin(), c.members.end());
    c.leader = c.members.front();
    return c;
}

DefiningSet dual_defining_set(const CodeParams& params, bool extended) {
    DefiningSet ds;
    ds.extended = extended;
    ds.length = extended ? params.n + 1 : params.n;
    std::set<std::int64_t> exps;
    std::set<std::int64_t> leaders;
    for (std::int64_t e : {std::int64_t{1}, params.e1, params.e3}) {
        auto c = cyclotomic_coset(e, params.n, params.p);
        leaders.insert(c.leader);
        exps.insert(c.members.begin(), c.members.end());
    }
    if (extended) exps.insert(0);
    ds.exponents.assign(exps.begin(), exps.end());
    ds.coset_leaders.assign(leaders.begin(), leaders.end());
    return ds;
}

bool p_adic_dominates(std::int64_t r, std::int64_t s, int p, int m) {
    for (int k = 0; k < m; ++k) {
        if (r % p > s % p) return false;
        r /= p;
        s /= p;
    }
    return true;
}

AffineInvarianceResult is_affine_invariant(const DefiningSet& ds, int p, int m) {
    std::int64_t q = 1;
    for (int k = 0; k < m; ++k) q *= p;
    if (ds.length != q)
        throw NotExtended("defining set has length " + std::to_string(ds.length) +
                          ", expected p^m = " + std::to_string(q));
    std::vector<std::uint8_t> in_set(static_cast<size_t>(q), 0);
    for (std::int64_t e : ds.exponents) in_set[static_cast<size_t>(e)] = 1;

    // enumerate r <= s digitwise with a digit-limited odometer; counting up
    // visits r in increasing numeric order
    std::vector<int> digits(m), r_digits(m);
    for (std::int64_t s : ds.exponents) {
        std::int64_t t = s;
        for (int k = 0; k < m; ++k) {
            digits[k] = static_cast<int>(t % p);
            t /= p;
        }
        std::fill(r_digits.begin(), r_digits.end(), 0);
        while (true) {
            std::int64_t r = 0;
            for (int k = m - 1; k >= 0; --k) r = r * p + r_digits[k];
            if (!in_set[static_cast<size_t>(r)]) return {false, std::make_pair(r, s)};
            int k = 0;
            for (; k < m; ++k) {
                if (r_digits[k] < digits[k]) {
                    ++r_digits[k];
                    break;
                }
                r_digits[k] = 0;
            }
            if (k == m) break;
        }
    }
    return {true, std::nullopt};
}

std::vector<int> minimal_polynomial(const FieldTables& tables, std::int64_t i) {
    auto coset = cyclotomic_coset(i, tables.n(), tables.p());
    // prod (x - alpha^e) with dense arithmetic over GF(p^m)
    std::vector<FqElem> poly = {FqElem::from_log(0)};  // the constant 1
    for (std::int64_t e : coset.members) {
        FqElem root = FqElem::from_log(static_cast<std::int32_t>(e));
        std::vector<FqElem> next(poly.size() + 1, FqElem::zero());
        for (size_t k = 0; k < poly.size(); ++k) {
            next[k + 1] = tables.add(next[k + 1], poly[k]);                       // x * poly
            next[k] = tables.add(next[k], tables.neg(tables.mul(root, poly[k])));  // -root * poly
        }
        poly = std::move(next);
    }
    std::vector<int> out(poly.size());
    for (size_t k = 0; k < poly.size(); ++k) {
        auto coeffs = tables.coeffs_of(poly[k]);
        for (int c = 1; c < tables.m(); ++c)
            if (coeffs[c] != 0)
                throw CoefficientNotInBaseField("minimal polynomial coefficient not in GF(p)");
        out[k] = coeffs[0];
    }
    return out;
}

}  // namespace dotrace

#include "dotrace/theory.hpp"

#include <algorithm>

namespace dotrace {

namespace {

// Multiplicity formulas of Tables 1-3, one evaluator per branch. P(e) = p^e as
// a rational so the 1/2 and 1/(p^{2d}-1) factors stay exact until the final
// integrality assertion.
struct Eval {
    int p;
    Rat P(long e) const { return rpow(p, e); }
};

Int odd_d_multiplicity(const CodeParams& cp, int row, int eps, int j) {
    Eval E{cp.p};
    const long m = cp.m, d = cp.d, p = cp.p;
    auto P = [&](long e) { return E.P(e); };
    Rat r;
    switch (row) {
        case 1:
            r = P(m + 2 * d - 1) * (P(m) - P(m - d) - P(m - 2 * d) + 1) * (P(m) - 1) /
                (2 * (P(2 * d) - 1));
            break;
        case 2:
            r = P(2 * d) * (P(m - 1) + eps * legendre(-j, cp.p) * P((m - 1) / 2)) *
                (P(m) - P(m - d) - P(m - 2 * d) + 1) * (P(m) - 1) / (2 * (P(2 * d) - 1));
            break;
        case 3:
            r = Rat(1, 2) * P(m - d - 1) * (P((m - d) / 2) + eps * (p - 1)) *
                (P((m - d) / 2) + eps) * (P(m) - 1);
            break;
        case 4:
            r = Rat(1, 2) * P(m - d - 1) * (P((m - d) / 2) - eps) * (P((m - d) / 2) + eps) *
                (P(m) - 1);
            break;
        case 5:
            r = Rat(1, 2) * P(m - 2 * d - 1) * (P(m - d) - 1) * (P(m) - 1) / (P(2 * d) - 1);
            break;
        case 6:
            r = (P(m - 2 * d - 1) + eps * legendre(-j, cp.p) * P((m - 2 * d - 1) / 2)) *
                (P(m - d) - 1) * (P(m) - 1) / (2 * (P(2 * d) - 1));
            break;
        default:
            throw Error("odd_d_multiplicity: bad row");
    }
    return require_integer(r, "Table 1 multiplicity");
}

Int even_d_multiplicity(const CodeParams& cp, int row, int eps) {
    Eval E{cp.p};
    const long m = cp.m, d = cp.d, s = cp.s, p = cp.p;
    auto P = [&](long e) { return E.P(e); };
    Rat r;
    switch (row) {
        case 1:
            r = P(2 * d) * (P(m - 1) + eps * (p - 1) * P(s - 1)) *
                (P(m) - P(m - d) - P(m - 2 * d) + 1) * (P(m) - 1) / (2 * (P(2 * d) - 1));
            break;
        case 2:
            r = P(2 * d) * (P(m - 1) - eps * P(s - 1)) * (P(m) - P(m - d) - P(m - 2 * d) + 1) *
                (P(m) - 1) / (2 * (P(2 * d) - 1));
            break;
        case 3:
            r = Rat(1, 2) * P(m - d - 1) * (P((m - d) / 2) + eps * (p - 1)) *
                (P((m - d) / 2) + eps) * (P(m) - 1);
            break;
        case 4:
            r = Rat(1, 2) * P(m - d - 1) * (P((m - d) / 2) - eps) * (P((m - d) / 2) + eps) *
                (P(m) - 1);
            break;
        case 5:
            r = (P(m - 2 * d - 1) + eps * (p - 1) * P((m - 2 * d) / 2 - 1)) * (P(m - d) - 1) *
                (P(m) - 1) / (2 * (P(2 * d) - 1));
            break;
        case 6:
            r = (P(m - 2 * d - 1) - eps * P((m - 2 * d) / 2 - 1)) * (P(m - d) - 1) * (P(m) - 1) /
                (2 * (P(2 * d) - 1));
            break;
        default:
            throw Error("even_d_multiplicity: bad row");
    }
    return require_integer(r, "Table 2 multiplicity");
}

// Shared building blocks of the d'=2d table.
struct TwoDParts {
    Rat Phi, Psi, K, W, D1, D2;
};

TwoDParts two_d_parts(const CodeParams& cp) {
    Eval E{cp.p};
    const long m = cp.m, d = cp.d, s = cp.s;
    const int mu = cp.mu;
    auto P = [&](long e) { return E.P(e); };
    TwoDParts t;
    t.D1 = (P(d) + 1) * (P(2 * d) - 1) * (P(3 * d) + 1);
    t.D2 = (P(d) + 1) * (P(d) + 1) * (P(2 * d) - 1);
    t.Phi = P(m + 6 * d) - P(m + 4 * d) - P(m + d) + mu * P(s + 5 * d) - mu * P(s + 4 * d) +
            P(6 * d);
    t.Psi = P(m + 3 * d) + P(m + 2 * d) - P(m) - P(m - d) - P(m - 2 * d) - mu * P(s + 3 * d) +
            mu * P(s) + P(3 * d);
    t.K = (P(s - d) + mu) * (P(s + d) + P(s) - P(s - 2 * d) - mu * P(d));
    t.W = (P(s - 2 * d) - mu) * (P(s - d) + mu);
    return t;
}

// The printed table carries p^{m-2d-1} / p^{m-3d-1} correction terms in rows
// 5-8 and keeps three summands outside the (p^d+1) division in the zero row;
// as printed the multiplicities go negative and the census misses p^{3m}.
// The corrected exponents s-2d-1 / s-3d-1 and the (p^d-1)-weighted fold
// restore both sum identities; see the tests over the parameter grid.
Int two_d_multiplicity(const CodeParams& cp, int row) {
    Eval E{cp.p};
    const long m = cp.m, d = cp.d, s = cp.s, p = cp.p;
    const int mu = cp.mu;
    auto P = [&](long e) { return E.P(e); };
    auto t = two_d_parts(cp);
    Rat r;
    switch (row) {
        case 1:
            r = (P(m - 1) + mu * (p - 1) * P(s - 1)) * t.Phi * (P(m) - 1) / t.D1;
            break;
        case 2:
            r = (P(m - 1) - mu * P(s - 1)) * t.Phi * (P(m) - 1) / t.D1;
            break;
        case 3:
            r = (P(m - 2 * d - 1) - mu * (p - 1) * P(s - d - 1)) * t.Psi * (P(m) - 1) / t.D2;
            break;
        case 4:
            r = (P(m - 2 * d - 1) + mu * P(s - d - 1)) * t.Psi * (P(m) - 1) / t.D2;
            break;
        case 5:
            r = (P(m - 4 * d - 1) + mu * (p - 1) * P(s - 2 * d - 1)) * t.K * (P(m) - 1) / t.D2;
            break;
        case 6:
            r = (P(m - 4 * d - 1) - mu * P(s - 2 * d - 1)) * t.K * (P(m) - 1) / t.D2;
            break;
        case 7:
            r = (P(m - 6 * d - 1) - mu * (p - 1) * P(s - 3 * d - 1)) * t.W * (P(m) - 1) / t.D1;
            break;
        case 8:
            r = (P(m - 6 * d - 1) + mu * P(s - 3 * d - 1)) * t.W * (P(m) - 1) / t.D1;
            break;
        case 9: {
            Rat out = -mu * P(3 * s - d) - mu * P(3 * s - 8 * d) + P(m - d);
            Rat bracket = P(2 * m) + P(2 * m - 9 * d) + mu * P(3 * s - 3 * d) -
                          mu * P(3 * s - 5 * d) - P(m - 4 * d) - P(m - 6 * d);
            r = (1 + ((P(d) - 1) * out + bracket) / (P(d) + 1)) * (P(m) - 1);
            break;
        }
        default:
            throw Error("two_d_multiplicity: bad row");
    }
    return require_integer(r, "Table 3 multiplicity");
}

}  // namespace

std::vector<ValueDistRow> value_distribution(const CodeParams& params) {
    if (params.m < 3) throw InvalidRange("value_distribution: m >= 3 required");
    auto classes = value_class_table(params);
    std::vector<ValueDistRow> rows;
    rows.reserve(classes.size());
    for (auto& cls : classes) {
        Int mult;
        if (params.branch == Branch::TwoD) {
            if (cls.row == 10)
                mult = 1;
            else
                mult = two_d_multiplicity(params, cls.row);
        } else {
            if (cls.row == 8)
                mult = 1;
            else if (cls.row == 7)
                mult = require_integer(
                    (rpow(params.p, 2 * params.m - params.d) - rpow(params.p, 2 * params.m - 2 * params.d) +
                     rpow(params.p, 2 * params.m - 3 * params.d) - rpow(params.p, params.m - 2 * params.d) + 1) *
                        (rpow(params.p, params.m) - 1),
                    "M7");
            else if (params.branch == Branch::OddD)
                mult = odd_d_multiplicity(params, cls.row, cls.upsilon == 0 ? 1 : -1, cls.j);
            else
                mult = even_d_multiplicity(params, cls.row, cls.upsilon == 0 ? 1 : -1);
        }
        if (mult < 0) throw InexactDivision("negative multiplicity (transcription error)");
        rows.push_back({cls, std::move(mult)});
    }
    // completeness: the census of all p^{3m} triples
    Int total = 0;
    for (auto& r : rows) total += r.multiplicity;
    if (total != ipow(params.p, static_cast<unsigned long>(3 * params.m)))
        throw InexactDivision("value distribution does not sum to p^{3m}");
    return rows;
}

namespace {

void add_weight(WeightDistribution& wd, const Rat& weight, const Rat& mult, const char* what) {
    Int w = require_integer(weight, what);
    Int m = require_integer(mult, what);
    if (m < 0) throw InexactDivision(std::string(what) + ": negative multiplicity");
    if (!w.fits_slong_p()) throw InexactDivision("weight out of range");
    wd.add(w.get_si(), m);
}

}  // namespace

WeightDistribution weight_distribution_theory(const CodeParams& params) {
    const long p = params.p, m = params.m, d = params.d, s = params.s;
    auto P = [&](long e) { return rpow(params.p, e); };
    WeightDistribution wd;
    wd.add(0, 1);
    wd.add(params.q, params.p - 1);

    if (params.branch == Branch::OddD) {
        // sign carried by eps*(-1)^{(p-1)/2} in two of the weights
        const int c2 = ((p - 1) / 2) % 2 == 0 ? 1 : -1;
        add_weight(wd, P(m - 1) * (p - 1),
                   p *
                       (P(2 * m + 2 * d - 1) + P(2 * m + d) - P(2 * m + d - 1) - P(2 * m) -
                        P(2 * m - 1) + P(2 * m - 2 * d) - P(2 * m - 3 * d) + P(2 * m - 3 * d - 1) +
                        P(m + 2 * d - 1) - P(m) + P(m - 2 * d) - P(m - 2 * d - 1) + P(2 * d) - 1) *
                       (P(m) - 1) / (P(2 * d) - 1),
                   "Table 4 row p^{m-1}(p-1)");
        for (int eps : {1, -1}) {
            add_weight(wd, P((m - 1) / 2) * (P((m + 1) / 2) - P((m - 1) / 2) + eps * c2),
                       P(m + 2 * d) * (p - 1) * (P(m) - P(m - d) - P(m - 2 * d) + 1) * (P(m) - 1) /
                           (2 * (P(2 * d) - 1)),
                       "Table 4 row 2");
            add_weight(wd, P((m + d - 2) / 2) * (p - 1) * (P((m - d) / 2) + eps),
                       Rat(1, 2) * P((3 * m - 3 * d) / 2) * (P((m - d) / 2) - eps) * (P(m) - 1),
                       "Table 4 row 3");
            add_weight(wd, P((m + d - 2) / 2) * (P((m - d + 2) / 2) - P((m - d) / 2) + eps),
                       Rat(1, 2) * P((3 * m - 3 * d) / 2) * (p - 1) * (P((m - d) / 2) + eps) *
                           (P(m) - 1),
                       "Table 4 row 4");
            add_weight(wd,
                       P((m + 2 * d - 1) / 2) *
                           (P((m - 2 * d + 1) / 2) - P((m - 2 * d - 1) / 2) + eps * c2),
                       P(m - 2 * d) * (p - 1) * (P(m - d) - 1) * (P(m) - 1) / (2 * (P(2 * d) - 1)),
                       "Table 4 row 5");
        }
    } else if (params.branch == Branch::EvenD) {
        add_weight(wd, P(m - 1) * (p - 1),
                   p *
                       (P(2 * m - d) - P(2 * m - 2 * d) + P(2 * m - 3 * d) - P(m - 2 * d) + 1) *
                       (P(m) - 1),
                   "Table 5 row p^{m-1}(p-1)");
        for (int eps : {1, -1}) {
            add_weight(wd, P(s - 1) * (p - 1) * (P(s) + eps),
                       P(m + 2 * d) * (P(m) - P(m - d) - P(m - 2 * d) + 1) * (P(m) - 1) /
                           (2 * (P(2 * d) - 1)),
                       "Table 5 row 1");
            add_weight(wd, P(s - 1) * (P(s + 1) - P(s) + eps),
                       P(m + 2 * d) * (p - 1) * (P(m) - P(m - d) - P(m - 2 * d) + 1) * (P(m) - 1) /
                           (2 * (P(2 * d) - 1)),
                       "Table 5 row 2");
            add_weight(wd, P((m + d - 2) / 2) * (p - 1) * (P((m - d) / 2) + eps),
                       Rat(1, 2) * P((3 * m - 3 * d) / 2) * (P((m - d) / 2) - eps) * (P(m) - 1),
                       "Table 5 row 3");
            add_weight(wd, P((m + d - 2) / 2) * (P((m - d + 2) / 2) - P((m - d) / 2) + eps),
                       Rat(1, 2) * P((3 * m - 3 * d) / 2) * (p - 1) * (P((m - d) / 2) + eps) *
                           (P(m) - 1),
                       "Table 5 row 4");
            add_weight(wd, P((m + 2 * d - 2) / 2) * (p - 1) * (P((m - 2 * d) / 2) + eps),
                       Rat(1, 2) * P(m - 2 * d) * (P(m - d) - 1) * (P(m) - 1) / (P(2 * d) - 1),
                       "Table 5 row 5");
            add_weight(wd,
                       P((m + 2 * d - 2) / 2) * (P((m - 2 * d + 2) / 2) - P((m - 2 * d) / 2) + eps),
                       P(m - 2 * d) * (p - 1) * (P(m - d) - 1) * (P(m) - 1) / (2 * (P(2 * d) - 1)),
                       "Table 5 row 6");
        }
    } else {
        const int mu = params.mu;
        auto t = two_d_parts(params);
        add_weight(wd, P(s - 1) * (p - 1) * (P(s) - mu), P(m) * t.Phi * (P(m) - 1) / t.D1,
                   "Table 6 row 1");
        add_weight(wd, P(s - 1) * (P(s + 1) - P(s) + mu),
                   P(m) * (p - 1) * t.Phi * (P(m) - 1) / t.D1, "Table 6 row 2");
        add_weight(wd, P(s + d - 1) * (p - 1) * (P(s - d) + mu),
                   P(m - 2 * d) * t.Psi * (P(m) - 1) / t.D2, "Table 6 row 3");
        add_weight(wd, P(s + d - 1) * (P(s - d + 1) - P(s - d) - mu),
                   P(m - 2 * d) * (p - 1) * t.Psi * (P(m) - 1) / t.D2, "Table 6 row 4");
        add_weight(wd, P(s + 2 * d - 1) * (p - 1) * (P(s - 2 * d) - mu),
                   P(m - 4 * d) * t.K * (P(m) - 1) / t.D2, "Table 6 row 5");
        add_weight(wd, P(s + 2 * d - 1) * (P(s - 2 * d + 1) - P(s - 2 * d) + mu),
                   P(m - 4 * d) * (p - 1) * t.K * (P(m) - 1) / t.D2, "Table 6 row 6");
        add_weight(wd, P(s + 3 * d - 1) * (p - 1) * (P(s - 3 * d) + mu),
                   P(m - 6 * d) * t.W * (P(m) - 1) / t.D1, "Table 6 row 7");
        add_weight(wd, P(s + 3 * d - 1) * (P(s - 3 * d + 1) - P(s - 3 * d) - mu),
                   P(m - 6 * d) * (p - 1) * t.W * (P(m) - 1) / t.D1, "Table 6 row 8");
        // zero-value row, with the same fold as two_d_multiplicity(9)
        Rat out = -mu * P(3 * s - d) - mu * P(3 * s - 8 * d) + P(m - d);
        Rat bracket = P(2 * m) + P(2 * m - 9 * d) + mu * P(3 * s - 3 * d) -
                      mu * P(3 * s - 5 * d) - P(m - 4 * d) - P(m - 6 * d);
        add_weight(wd, P(m - 1) * (p - 1),
                   p * (1 + ((P(d) - 1) * out + bracket) / (P(d) + 1)) * (P(m) - 1),
                   "Table 6 row p^{m-1}(p-1)");
    }

    if (wd.total != ipow(params.p, static_cast<unsigned long>(3 * params.m + 1)))
        throw InexactDivision("weight distribution does not sum to p^{3m+1}");
    return wd;
}

WeightDistribution weight_distribution_from_value_rows(const CodeParams& params) {
    const int p = params.p;
    auto rows = value_distribution(params);
    WeightDistribution wd;
    Int pm1 = ipow(p, static_cast<unsigned long>(params.m - 1));
    for (auto& row : rows) {
        if (row.multiplicity == 0) continue;
        for (int h = 0; h < p; ++h) {
            CyclotomicInteger acc(p);
            for (int y = 1; y < p; ++y)
                acc += galois_apply(y, row.cls.value).times_zeta(y * h % p);
            auto v = acc.as_rational_integer();
            if (!v) throw IdentityMismatch("T(S,h) is not a rational integer");
            Int num = pm1 * p + *v;
            if (num % p != 0) throw IdentityMismatch("T(S,h): division by p not exact");
            Int T = num / p;
            Int w = params.q - T;
            if (!w.fits_slong_p() || w < 0 || w > params.q)
                throw IdentityMismatch("T(S,h) out of range");
            wd.add(w.get_si(), row.multiplicity);
        }
    }
    return wd;
}

std::int64_t support_multiplicity_threshold(std::int64_t delta, std::int64_t n_plus_1, int p) {
    if (delta < 1) throw InvalidRange("threshold: delta >= 1 required");
    auto ok = [&](std::int64_t w) { return w - (w + p - 2) / (p - 1) < delta; };
    // w - floor((w+p-2)/(p-1)) is nondecreasing in w; scan down from the top
    for (std::int64_t w = n_plus_1; w >= 1; --w)
        if (ok(w)) return w;
    return 0;
}

std::vector<DesignParams> design_parameters(const CodeParams& params) {
    if (params.m < 6)
        throw InvalidRange("design_parameters: stated for m >= 6");
    auto wd = weight_distribution_theory(params);
    std::int64_t delta = 0;
    for (auto& [w, mult] : wd.entries)
        if (w > 0 && mult != 0) {
            delta = w;
            break;
        }
    std::int64_t threshold = support_multiplicity_threshold(delta, params.q, params.p);

    Int v = params.q;
    std::vector<DesignParams> out;
    for (auto& [w, mult] : wd.entries) {
        if (w <= 0 || w > threshold || mult == 0) continue;
        DesignParams dp;
        dp.v = v;
        dp.k = w;
        if (mult % (params.p - 1) != 0)
            throw InexactDivision("A_i not divisible by p-1");
        dp.b = mult / (params.p - 1);
        // b * C(k,2) = lambda * C(v,2)
        Rat lambda = Rat(dp.b * choose2(dp.k)) / Rat(choose2(v));
        dp.lambda = require_integer(lambda, "design lambda");
        out.push_back(std::move(dp));
    }
    return out;
}

}  // namespace dotrace

#include <doctest.h>

#include <random>

#include "dotrace/expsum.hpp"
#include "oracles.hpp"

using namespace dotrace;

TEST_CASE("gauss sums and their squares") {
    auto g3 = gauss_sum(3);
    CHECK(g3 == CyclotomicInteger::zeta_power(3, 1) - CyclotomicInteger::zeta_power(3, 2));
    CHECK((g3 * g3).as_rational_integer() == Int(-3));

    auto g5 = gauss_sum(5);
    auto want5 = CyclotomicInteger::zeta_power(5, 1) - CyclotomicInteger::zeta_power(5, 2) -
                 CyclotomicInteger::zeta_power(5, 3) + CyclotomicInteger::zeta_power(5, 4);
    CHECK(g5 == want5);
    CHECK((g5 * g5).as_rational_integer() == Int(5));

    CHECK((gauss_sum(7) * gauss_sum(7)).as_rational_integer() == Int(-7));
    CHECK((gauss_sum(11) * gauss_sum(11)).as_rational_integer() == Int(-11));
    CHECK((gauss_sum(13) * gauss_sum(13)).as_rational_integer() == Int(13));
}

TEST_CASE("cyclotomic canonicalization") {
    // z and z + k*(1 + zeta + ... + zeta^{p-1}) have equal canonical forms
    std::mt19937_64 rng(3);
    for (int p : {3, 5, 7}) {
        for (int it = 0; it < 50; ++it) {
            CyclotomicInteger z(p);
            for (int j = 0; j < p; ++j)
                z += CyclotomicInteger::zeta_power(p, j, Int(static_cast<long>(rng() % 2001) - 1000));
            long k = static_cast<long>(rng() % 2001) - 1000;
            CyclotomicInteger shifted = z;
            for (int j = 0; j < p; ++j) shifted += CyclotomicInteger::zeta_power(p, j, k);
            CHECK(z == shifted);
        }
    }
    CHECK(CyclotomicInteger::integer(3, 7).as_rational_integer() == Int(7));
    CHECK(!CyclotomicInteger::zeta_power(5, 2).as_rational_integer().has_value());
}

TEST_CASE("galois action") {
    auto g = gauss_sum(3);
    // y = 1 is the identity
    CHECK(galois_apply(1, g) == g);
    // sigma_2(zeta - zeta^2) = zeta^2 - zeta = -g
    CHECK(galois_apply(2, g) == -g);
    // sigma_y(G)^2 = p* for all y, p in {3,5,7}
    for (int p : {3, 5, 7}) {
        auto gp = gauss_sum(p);
        Int pstar = ((p - 1) / 2) % 2 == 0 ? Int(p) : Int(-p);
        for (int y = 1; y < p; ++y) {
            auto s = galois_apply(y, gp);
            CHECK((s * s).as_rational_integer() == pstar);
            // sigma_y(sqrt(p*)) = eta'(y) sqrt(p*)
            CHECK(s == (legendre(y, p) == 1 ? gp : -gp));
        }
    }
}

TEST_CASE("s_abc trivial cases") {
    auto t = build_field({3, 6, {}});
    auto cp = validate_params(3, 6, 2);
    auto h0 = s_abc(t, cp, FqElem::zero(), FqElem::zero(), FqElem::zero());
    CHECK(h0.counts == std::vector<std::int64_t>{729, 0, 0});
    CHECK(h0.to_cyclotomic().as_rational_integer() == Int(729));
    // c != 0: balanced linear form, S = 0
    auto h1 = s_abc(t, cp, FqElem::zero(), FqElem::zero(), FqElem::from_log(5));
    CHECK(h1.counts == std::vector<std::int64_t>{243, 243, 243});
    CHECK(h1.to_cyclotomic().is_zero());
}

TEST_CASE("s_abc matches the complex-exponential oracle on small fields") {
    for (auto [p, m, l] : std::vector<std::array<int, 3>>{{3, 3, 1}, {3, 3, 2}, {3, 4, 3}}) {
        CAPTURE(p);
        CAPTURE(m);
        CAPTURE(l);
        auto t = build_field({p, m, {}});
        CodeParams cp;
        // m=3,l=1 and m=4,l=3 are excluded-l or m=3d corners; S(a,b,c) itself
        // is defined for any l, so build the reduced exponents directly.
        cp.p = p;
        cp.m = m;
        cp.l = l;
        cp.q = t.q();
        cp.n = t.n();
        std::int64_t pl = 1, p3l = 1;
        for (int i = 0; i < l; ++i) pl = pl * p % cp.n;
        for (int i = 0; i < 3 * l; ++i) p3l = p3l * p % cp.n;
        cp.e1 = (pl + 1) % cp.n;
        cp.e3 = (p3l + 1) % cp.n;

        oracle::Field f{p, m, t.params().modulus};
        std::int64_t e1_full = 1, e3_full = 1;
        for (int i = 0; i < l; ++i) e1_full *= p;
        for (int i = 0; i < 3 * l; ++i) e3_full *= p;
        e1_full += 1;
        e3_full += 1;

        std::mt19937_64 rng(17);
        std::uniform_int_distribution<std::int64_t> dist(0, t.q() - 1);
        const double two_pi = 6.283185307179586476925286766559;
        for (int it = 0; it < 40; ++it) {
            FqElem a = t.element_at(static_cast<std::uint32_t>(dist(rng)));
            FqElem b = t.element_at(static_cast<std::uint32_t>(dist(rng)));
            FqElem c = t.element_at(static_cast<std::uint32_t>(dist(rng)));
            auto hist = s_abc(t, cp, a, b, c);
            std::complex<double> exact = 0.0;
            for (int j = 0; j < p; ++j)
                exact += std::polar(static_cast<double>(hist.counts[j]), two_pi * j / p);
            auto approx = oracle::s_abc_complex(f, e3_full, e1_full, t.coeffs_of(a),
                                                t.coeffs_of(b), t.coeffs_of(c));
            CHECK(std::abs(exact - approx) < 1e-6);
        }
    }
}

TEST_CASE("s_all_c equals the naive path for every c") {
    for (auto [p, m, l] : std::vector<std::array<int, 3>>{{3, 5, 1}, {5, 3, 1}}) {
        auto t = build_field({p, m, {}});
        auto cp = validate_params(p, m, l);
        std::mt19937_64 rng(23);
        std::uniform_int_distribution<std::int64_t> dist(0, t.q() - 1);
        for (int it = 0; it < 4; ++it) {
            FqElem a = t.element_at(static_cast<std::uint32_t>(dist(rng)));
            FqElem b = t.element_at(static_cast<std::uint32_t>(dist(rng)));
            auto all = s_all_c(t, cp, a, b);
            for (std::int64_t ic = 0; ic < t.q(); ++ic) {
                auto want = s_abc(t, cp, a, b, t.element_at(static_cast<std::uint32_t>(ic)));
                for (int j = 0; j < p; ++j)
                    REQUIRE(all[static_cast<size_t>(ic) * p + j] == want.counts[j]);
            }
        }
    }
}

TEST_CASE("sum of S over all c is p^m") {
    auto t = build_field({3, 5, {}});
    auto cp = validate_params(3, 5, 2);
    std::mt19937_64 rng(29);
    std::uniform_int_distribution<std::int64_t> dist(0, t.q() - 1);
    for (int it = 0; it < 3; ++it) {
        FqElem a = t.element_at(static_cast<std::uint32_t>(dist(rng)));
        FqElem b = t.element_at(static_cast<std::uint32_t>(dist(rng)));
        auto all = s_all_c(t, cp, a, b);
        CyclotomicInteger total(cp.p);
        for (std::int64_t ic = 0; ic < t.q(); ++ic) {
            std::vector<std::int64_t> counts(cp.p);
            for (int j = 0; j < cp.p; ++j) counts[j] = all[static_cast<size_t>(ic) * cp.p + j];
            total += CyclotomicInteger::from_counts(counts);
        }
        CHECK(total.as_rational_integer() == Int(243));
    }
}

TEST_CASE("t_abch identity and examples") {
    auto t = build_field({3, 6, {}});
    auto cp = validate_params(3, 6, 2);
    CHECK(t_abch(t, cp, FqElem::zero(), FqElem::zero(), FqElem::zero(), 0) == 729);
    CHECK(t_abch(t, cp, FqElem::zero(), FqElem::zero(), FqElem::zero(), 1) == 0);
    CHECK(t_abch(t, cp, FqElem::zero(), FqElem::zero(), FqElem::from_log(3), 2) == 243);
    // random triples: the identity is validated inside t_abch
    std::mt19937_64 rng(31);
    std::uniform_int_distribution<std::int64_t> dist(0, t.q() - 1);
    for (int it = 0; it < 200; ++it) {
        FqElem a = t.element_at(static_cast<std::uint32_t>(dist(rng)));
        FqElem b = t.element_at(static_cast<std::uint32_t>(dist(rng)));
        FqElem c = t.element_at(static_cast<std::uint32_t>(dist(rng)));
        std::int64_t sum = 0;
        for (int h = 0; h < 3; ++h) sum += t_abch(t, cp, a, b, c, h);
        CHECK(sum == 729);  // sum over h of T = p^m
    }
}

TEST_CASE("classification at (3,6,2): random triples land in Table 2") {
    auto t = build_field({3, 6, {}});
    auto cp = validate_params(3, 6, 2);
    SValueClassifier cl(cp);
    CHECK(cl.num_classes() == 20);
    // s = 0 and s = p^m rows
    CHECK(classify_s(cp, CyclotomicInteger(3)).row == 7);
    CHECK(classify_s(cp, CyclotomicInteger::integer(3, 729)).row == 8);
    std::mt19937_64 rng(37);
    std::uniform_int_distribution<std::int64_t> dist(0, t.q() - 1);
    for (int it = 0; it < 500; ++it) {
        FqElem a = t.element_at(static_cast<std::uint32_t>(dist(rng)));
        FqElem b = t.element_at(static_cast<std::uint32_t>(dist(rng)));
        FqElem c = t.element_at(static_cast<std::uint32_t>(dist(rng)));
        auto hist = s_abc(t, cp, a, b, c);
        auto& cls = cl.classify(hist.to_cyclotomic());
        CHECK(cls.row >= 1);
        CHECK(cls.row <= 8);
        // hot path agrees
        CHECK(cl.classes()[static_cast<size_t>(cl.classify_counts64(hist.counts))].value ==
              cls.value);
    }
    // something outside the table
    CHECK_THROWS_AS(classify_s(cp, CyclotomicInteger::integer(3, 5)), UnclassifiedValue);
}

TEST_CASE("value class tables are distinct and sized per branch") {
    // OddD / EvenD: 2*(3 + 3*(p-1)) + 2 classes; TwoD: 4p + 2
    auto odd = value_class_table(validate_params(3, 7, 1));
    CHECK(odd.size() == 20);
    auto even = value_class_table(validate_params(3, 6, 2));
    CHECK(even.size() == 20);
    auto two = value_class_table(validate_params(3, 8, 1));
    CHECK(two.size() == 14);
    auto two5 = value_class_table(validate_params(5, 8, 1));
    CHECK(two5.size() == 22);
}

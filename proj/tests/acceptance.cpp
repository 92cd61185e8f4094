// Acceptance suite: one criterion per section, one PASS/FAIL line each.
// Exits nonzero if any criterion fails.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <thread>
#include <vector>

#include "dotrace/cache.hpp"
#include "dotrace/cli.hpp"
#include "dotrace/serialize.hpp"
#include "oracles.hpp"

using namespace dotrace;

namespace {

struct Failure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void require(bool cond, const std::string& msg) {
    if (!cond) throw Failure(msg);
}

int g_threads = 2;
std::filesystem::path g_cache;

struct CliOut {
    int code;
    std::string out;
    json parsed() const { return json::parse(out); }
};

CliOut cli(std::vector<std::string> args) {
    args.push_back("--cache-dir");
    args.push_back(g_cache.string());
    std::vector<const char*> argv = {"dotrace"};
    for (auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out;
    int code = dotrace::cli::run(static_cast<int>(argv.size()), argv.data(), out, std::cerr);
    return {code, out.str()};
}

const std::map<std::int64_t, Int> kGolden = {
    {0, 1},           {324, 3276},      {405, 6552},      {432, 2653560},
    {459, 4245696},   {468, 171950688}, {477, 343901376}, {486, 116208456},
    {495, 343901376}, {504, 171950688}, {513, 5307120},   {540, 2122848},
    {567, 6552},      {648, 3276},      {729, 2}};

// ---- criterion 1: golden reproduction --------------------------------------
void criterion1() {
    auto r = cli({"enumerate", "--p", "3", "--m", "6", "--l", "2", "--mode", "transform",
                  "--threads", std::to_string(g_threads)});
    require(r.code == 0, "enumerate exited " + std::to_string(r.code));
    auto j = r.parsed();
    std::map<std::int64_t, Int> got;
    for (auto& e : j["entries"])
        got[e[0].get<std::int64_t>()] = Int(e[1].get<std::string>());
    require(got == kGolden, "enumerated distribution differs from the published enumerator");
    require(j["total"] == ipow(3, 19).get_str(), "total != 3^19");

    auto tables = build_field({3, 6, {}});
    auto cp = validate_params(3, 6, 2);
    require(dimension_check(tables, cp) == 19, "dimension != 19");
    std::int64_t min_weight = 0;
    for (auto& [w, mult] : got)
        if (w > 0) {
            min_weight = w;
            break;
        }
    require(min_weight == 324, "minimum distance != 324");
    require(cp.q == 729, "length != 729");

    // naive mode at full scale must agree exactly (and stays far inside its
    // 60-minute single-thread budget; see the per-criterion timing line)
    auto naive =
        enumerate_weight_distribution(tables, cp, EnumerationMode::naive, g_threads);
    require(naive.distribution.entries == got, "naive mode differs from transform mode");
}

// ---- criterion 2: theory vs enumeration ------------------------------------
void criterion2() {
    auto r = cli({"compare", "--p", "3", "--m", "6", "--l", "2"});
    require(r.code == 0, "compare exited " + std::to_string(r.code));
    auto j = r.parsed();
    require(j["match"] == true, "diff not empty");
    require(j["weight_diffs"].empty(), "weight diffs present");
    require(j["census_diffs"].empty(), "census diffs present");
}

// ---- criterion 3: design verification at weights 324, 405, 432 -------------
void criterion3() {
    auto tables = build_field({3, 6, {}});
    auto cp = validate_params(3, 6, 2);
    auto specs = collect_specs_of_weights(tables, cp, {324, 405, 432, 648}, g_threads);
    // stash the 648 list for criterion 4
    json payload;
    payload["schema"] = kSchemaVersion;
    payload["weight"] = 648;
    payload["specs"] = specs_to_json(specs.at(648));
    Cache cache(g_cache, true);
    cache.put("weight-specs-w648_p3_m6_l2_mod2.2.1.0.2.0.1_v" + std::string(kToolVersion),
              payload, true);

    auto wd = weight_distribution_theory(cp);
    for (std::int64_t w : {std::int64_t{324}, std::int64_t{405}, std::int64_t{432}}) {
        require(Int(static_cast<long>(specs.at(w).size())) == wd.entries.at(w),
                "spec count mismatch at weight " + std::to_string(w));
        auto rep = verify_design_from_specs(tables, cp, specs.at(w), DedupMode::scalar_rule,
                                            g_threads);
        require(rep.is_design, "not a 2-design at weight " + std::to_string(w));
        require(rep.eq1_holds, "Eq.(1) failed at weight " + std::to_string(w));
        Int b_expected = wd.entries.at(w) / 2;  // A_i / (p-1)
        require(wd.entries.at(w) % 2 == 0, "A_i not divisible by p-1");
        require(Int(rep.b) == b_expected, "b != A_i/(p-1) at weight " + std::to_string(w));
        // lambda from Eq.(1), exact division required
        Int num = Int(rep.b) * choose2(Int(w));
        Int den = choose2(Int(729));
        require(num % den == 0, "Eq.(1) lambda not integral at weight " + std::to_string(w));
        require(rep.lambda && Int(*rep.lambda) == num / den, "lambda mismatch");
        if (w == 324) {
            require(rep.b == 1638, "b != 1638");
            require(*rep.lambda == 323, "lambda != 323");
            require(rep.pair_coverage_histogram ==
                        std::map<std::int64_t, std::int64_t>{{323, 265356}},
                    "pair coverage not uniformly 323 over 265356 pairs");
        }
        std::fprintf(stderr, "  weight %lld: b=%lld lambda=%lld\n",
                     static_cast<long long>(w), static_cast<long long>(rep.b),
                     static_cast<long long>(*rep.lambda));
    }
}

// ---- criterion 4: the open case i = 648 ------------------------------------
void criterion4() {
    auto r = cli({"explore-open-case", "--p", "3", "--m", "6", "--l", "2", "--threads",
                  std::to_string(g_threads)});
    require(r.code == 0, "explore-open-case exited " + std::to_string(r.code));
    auto j = r.parsed();
    require(j["weight"] == 648, "weight != 648");
    require(j["is_design"] == true, "open case is not a 2-design");
    require(j["eq1_holds"] == true, "b*C(648,2) != lambda*C(729,2)");
    // empirical findings, recorded rather than asserted in advance
    std::fprintf(stderr, "  open case: b=%s lambda=%s support multiplicities=%s\n",
                 j["b"].dump().c_str(), j["lambda"].dump().c_str(),
                 j["support_multiplicity_histogram"].dump().c_str());
    for (auto& [mult, cnt] : j["support_multiplicity_histogram"].items())
        require(std::stoll(mult) >= 2, "support multiplicity below p-1");
}

// ---- criterion 5: affine invariance + negative control ---------------------
void criterion5() {
    auto r = cli({"check-affine", "--p", "3", "--m", "6", "--l", "2"});
    require(r.code == 0 && r.parsed()["invariant"] == true,
            "extended dual defining set failed the digit-domination test");

    auto r2 = cli({"check-affine", "--p", "3", "--m", "6", "--l", "2", "--remove-coset", "1"});
    require(r2.code == 1, "mutated set unexpectedly passed");
    auto j2 = r2.parsed();
    require(j2["invariant"] == false, "mutated set reported invariant");
    std::int64_t wr = j2["witness"][0], ws = j2["witness"][1];
    require(p_adic_dominates(wr, ws, 3, 6), "witness r is not dominated by s");
    std::vector<std::int64_t> exps = j2["defining_set"]["exponents"];
    require(std::find(exps.begin(), exps.end(), ws) != exps.end(), "witness s not in set");
    require(std::find(exps.begin(), exps.end(), wr) == exps.end(), "witness r in set");
}

// ---- criterion 6: exact-sum identities on the grid -------------------------
void criterion6() {
    for (int p : {3, 5})
        for (int m : {6, 7, 8})
            for (int l = 1; l < m; ++l) {
                CodeParams cp;
                try {
                    cp = validate_params(p, m, l);
                } catch (const ExcludedL&) {
                    continue;
                }
                auto rows = value_distribution(cp);  // self-asserts sum = p^{3m}
                Int vtotal = 0;
                for (auto& r : rows) vtotal += r.multiplicity;
                require(vtotal == ipow(p, static_cast<unsigned long>(3 * m)),
                        "value sum != p^{3m}");
                auto wd = weight_distribution_theory(cp);  // self-asserts sum = p^{3m+1}
                require(wd.total == ipow(p, static_cast<unsigned long>(3 * m + 1)),
                        "weight sum != p^{3m+1}");
                for (auto& dp : design_parameters(cp))
                    require(dp.b * dp.k * (dp.k - 1) == dp.lambda * dp.v * (dp.v - 1),
                            "Eq.(1) violated");
            }
}

// ---- criterion 7: exponential-sum kernel -----------------------------------
void criterion7() {
    auto tables = build_field({3, 6, {}});
    auto cp = validate_params(3, 6, 2);
    SValueClassifier classifier(cp);
    std::mt19937_64 rng(20260810);
    std::uniform_int_distribution<std::int64_t> dist(0, tables.q() - 1);
    for (int it = 0; it < 10000; ++it) {
        FqElem a = tables.element_at(static_cast<std::uint32_t>(dist(rng)));
        FqElem b = tables.element_at(static_cast<std::uint32_t>(dist(rng)));
        FqElem c = tables.element_at(static_cast<std::uint32_t>(dist(rng)));
        auto hist = s_abc(tables, cp, a, b, c);
        classifier.classify(hist.to_cyclotomic());  // throws UnclassifiedValue on failure
        for (int h = 0; h < 3; ++h) t_abch(tables, cp, a, b, c, h);  // identity inside
    }
    for (int p : {3, 5, 7, 11}) {
        auto g = gauss_sum(p);
        Int pstar = ((p - 1) / 2) % 2 == 0 ? Int(p) : Int(-p);
        require((g * g).as_rational_integer() == pstar, "gauss_sum(p)^2 != p*");
    }
}

// ---- criterion 8: field/oracle equivalence ---------------------------------
void criterion8() {
    for (auto [p, m] : std::vector<std::pair<int, int>>{
             {3, 1}, {3, 2}, {3, 3}, {3, 4}, {5, 1}, {5, 2}, {7, 1}, {7, 2}, {11, 1}}) {
        auto t = build_field({p, m, {}});
        oracle::Field f{p, m, t.params().modulus};
        auto alpha = f.gen();
        for (std::int64_t i = 0; i < t.n(); ++i)
            require(t.coeffs_of(FqElem::from_log(static_cast<std::int32_t>(i))) ==
                        f.pow(alpha, i),
                    "exp table mismatch");
        for (std::uint32_t ix = 0; ix < t.q(); ++ix) {
            FqElem x = t.element_at(ix);
            auto xv = t.coeffs_of(x);
            require(t.trace(x) == f.trace(xv), "trace mismatch");
            require(t.quad_char(x) == f.quad_char(xv), "character mismatch");
        }
        for (std::uint32_t ia = 0; ia < t.q(); ++ia)
            for (std::uint32_t ib = 0; ib < t.q(); ++ib)
                require(t.coeffs_of(t.add(t.element_at(ia), t.element_at(ib))) ==
                            f.add(t.coeffs_of(t.element_at(ia)), t.coeffs_of(t.element_at(ib))),
                        "addition mismatch");
    }
    auto tables = build_field({3, 6, {}});
    auto cp = validate_params(3, 6, 2);
    require(dimension_check(tables, cp) == 19, "dimension_check(3,6,2) != 19");
}

}  // namespace

int main() {
    unsigned hw = std::thread::hardware_concurrency();
    g_threads = hw ? static_cast<int>(hw) : 2;
    g_cache = std::filesystem::temp_directory_path() /
              ("dotrace-acceptance-" + std::to_string(::getpid()));
    std::filesystem::create_directories(g_cache);

    struct Criterion {
        int id;
        const char* title;
        std::function<void()> body;
    };
    std::vector<Criterion> criteria = {
        {1, "golden reproduction of the (3,6,2) weight enumerator", criterion1},
        {2, "theory/enumeration agreement incl. S-value census", criterion2},
        {3, "2-design verification at weights 324, 405, 432", criterion3},
        {4, "open case i=648: design property and Eq.(1)", criterion4},
        {5, "affine invariance and its negative control", criterion5},
        {6, "exact-sum identities on the (p, m, l) grid", criterion6},
        {7, "exponential-sum kernel: classification, T identity, Gauss squares", criterion7},
        {8, "field tables vs dense-polynomial oracle; dimension 19", criterion8},
    };

    int failures = 0;
    for (auto& c : criteria) {
        auto t0 = std::chrono::steady_clock::now();
        std::string verdict = "PASS", detail;
        try {
            c.body();
        } catch (const std::exception& e) {
            verdict = "FAIL";
            detail = e.what();
            ++failures;
        }
        auto secs = std::chrono::duration_cast<std::chrono::milliseconds>(
                        std::chrono::steady_clock::now() - t0)
                        .count() /
                    1000.0;
        std::printf("[%s] criterion %d: %s (%.1fs)%s%s\n", verdict.c_str(), c.id, c.title, secs,
                    detail.empty() ? "" : " - ", detail.c_str());
        std::fflush(stdout);
    }
    std::filesystem::remove_all(g_cache);
    return failures;
}

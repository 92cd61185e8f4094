#include "dotrace/cli.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <thread>

#include "dotrace/cache.hpp"
#include "dotrace/serialize.hpp"

namespace dotrace::cli {

namespace {

struct RunConfig {
    int p = 3;
    int m = 6;
    int l = 2;
    std::string modulus;  // empty = Conway default
    std::string mode = "transform";
    int threads = 0;  // 0 = hardware
    std::string cache_dir;
    bool no_cache = false;
    std::string format = "json";
    std::string out_path;
    std::int64_t budget = kDefaultEnumerationBudget;

    // subcommand-specific
    std::int64_t weight = -1;
    std::string dedup = "scalar";
    bool extended = true;
    std::int64_t remove_coset = -1;
    int sample = 1000;
    std::uint64_t seed = 1;
    std::string blocks_out;
};

// plain-text rendering for --format text
std::string text_kv(const json& j, std::initializer_list<const char*> keys) {
    std::ostringstream os;
    for (auto* k : keys)
        if (j.contains(k)) os << k << ": " << (j[k].is_string() ? j[k].get<std::string>() : j[k].dump()) << '\n';
    return os.str();
}

std::string text_weight_table(const json& j) {
    std::ostringstream os;
    os << "weight  multiplicity\n";
    for (auto& e : j.at("entries"))
        os << e[0].get<std::int64_t>() << "  " << e[1].get<std::string>() << '\n';
    os << "total  " << j.at("total").get<std::string>() << '\n';
    return os.str();
}

struct Emitter {
    const RunConfig& cfg;
    std::ostream& out;
    std::ostream& err;
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

    // primary payload: stdout or --out; byte-identical across reruns
    void primary(const std::string& bytes) const {
        if (cfg.out_path.empty()) {
            out << bytes;
            if (bytes.empty() || bytes.back() != '\n') out << '\n';
        } else {
            std::ofstream f(cfg.out_path, std::ios::binary | std::ios::trunc);
            f.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
            if (!f) throw Error("cannot write " + cfg.out_path);
        }
    }

    // timing and run facts stay out of the primary output
    void metadata(const json& extra) const {
        json meta = extra;
        meta["tool_version"] = kToolVersion;
        auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                      std::chrono::steady_clock::now() - start)
                      .count();
        meta["elapsed_ms"] = ms;
        meta["threads"] = cfg.threads;
        meta["mode"] = cfg.mode;
        if (cfg.out_path.empty()) {
            err << "meta: " << meta.dump() << '\n';
        } else {
            std::ofstream f(cfg.out_path + ".meta.json", std::ios::trunc);
            f << meta.dump(2) << '\n';
        }
    }
};

std::string default_cache_dir() {
    if (const char* env = std::getenv("DOTRACE_CACHE_DIR")) return env;
    return ".dotrace-cache";
}

int effective_threads(const RunConfig& cfg) {
    if (cfg.threads > 0) return cfg.threads;
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? static_cast<int>(hw) : 1;
}

FieldParams field_params_for(const RunConfig& cfg) {
    FieldParams fp;
    fp.p = cfg.p;
    fp.m = cfg.m;
    if (!cfg.modulus.empty()) fp.modulus = FieldParams::parse_modulus(cfg.modulus);
    return fp;
}

std::string cache_key(const RunConfig& cfg, const FieldParams& field, const std::string& tag) {
    std::string mod = field.modulus_string();
    for (auto& c : mod)
        if (c == ',') c = '.';
    return tag + "_p" + std::to_string(cfg.p) + "_m" + std::to_string(cfg.m) + "_l" +
           std::to_string(cfg.l) + "_mod" + mod + "_v" + kToolVersion;
}

ProgressFn progress_printer(std::ostream& err, const std::string& label) {
    auto last = std::make_shared<std::int64_t>(-1);
    return [&err, label, last](std::int64_t done, std::int64_t total) {
        std::int64_t pct = total ? done * 100 / total : 100;
        if (pct / 10 > *last / 10) {
            *last = pct;
            err << label << ": " << pct << "%" << (pct == 100 ? "\n" : " ") << std::flush;
        }
    };
}

// enumeration result <-> cache payload
json enumeration_to_json(const EnumerationResult& res, const CodeParams& cp,
                         const FieldParams& field) {
    json j = weight_distribution_to_json(res.distribution, cp, field, "enumeration");
    j["census"] = census_to_json(res.census);
    return j;
}

EnumerationResult enumeration_from_json(const json& j, const CodeParams& cp) {
    EnumerationResult res;
    for (auto& e : j.at("entries"))
        res.distribution.add(e.at(0).get<std::int64_t>(), Int(e.at(1).get<std::string>()));
    res.census.classes = value_class_table(cp);
    res.census.counts.assign(res.census.classes.size(), 0);
    auto census = j.at("census");
    if (census.size() != res.census.classes.size()) throw Error("cache: census shape mismatch");
    for (size_t i = 0; i < census.size(); ++i) {
        auto& row = census[i];
        if (row.at("row").get<int>() != res.census.classes[i].row)
            throw Error("cache: census row mismatch");
        res.census.counts[i] = Int(row.at("count").get<std::string>());
    }
    return res;
}

EnumerationResult enumerate_cached(const RunConfig& cfg, const FieldTables& tables,
                                   const CodeParams& cp, const Cache& cache, std::ostream& err) {
    auto key = cache_key(cfg, tables.params(), "enumerate");
    if (auto hit = cache.get(key)) {
        err << "cache hit: " << key << '\n';
        return enumeration_from_json(*hit, cp);
    }
    auto mode = cfg.mode == "naive" ? EnumerationMode::naive : EnumerationMode::transform;
    auto res = enumerate_weight_distribution(tables, cp, mode, effective_threads(cfg), cfg.budget,
                                             progress_printer(err, "enumerate"));
    cache.put(key, enumeration_to_json(res, cp, tables.params()));
    return res;
}

std::vector<CodewordSpec> specs_cached(const RunConfig& cfg, const FieldTables& tables,
                                       const CodeParams& cp, std::int64_t weight,
                                       const Cache& cache, std::ostream& err) {
    auto key = cache_key(cfg, tables.params(), "weight-specs-w" + std::to_string(weight));
    if (auto hit = cache.get(key)) {
        err << "cache hit: " << key << '\n';
        return specs_from_json(hit->at("specs"));
    }
    auto specs = collect_specs_of_weight(tables, cp, weight, effective_threads(cfg), cfg.budget);
    json payload;
    payload["schema"] = kSchemaVersion;
    payload["weight"] = weight;
    payload["specs"] = specs_to_json(specs);
    cache.put(key, payload, /*compress=*/true);
    return specs;
}

// ---- subcommands ----

int cmd_field_info(const RunConfig& cfg, Emitter& em) {
    auto tables = build_field(field_params_for(cfg));
    auto cp = validate_params(cfg.p, cfg.m, cfg.l);
    json j = params_to_json(cp, tables.params());
    j["schema"] = kSchemaVersion;
    if (cfg.format == "text")
        em.primary(text_kv(j, {"p", "m", "l", "modulus", "q", "n", "d", "d_prime", "branch",
                                "p_star", "s", "mu", "e1_mod_n", "e3_mod_n", "warnings"}));
    else
        em.primary(j.dump(2));
    em.metadata({{"subcommand", "field-info"}});
    return 0;
}

int cmd_defining_set(const RunConfig& cfg, Emitter& em) {
    auto tables = build_field(field_params_for(cfg));
    auto cp = validate_params(cfg.p, cfg.m, cfg.l);
    auto ds = dual_defining_set(cp, cfg.extended);
    json j = defining_set_to_json(ds);
    j["schema"] = kSchemaVersion;
    j["params"] = params_to_json(cp, tables.params());
    if (cfg.format == "text") {
        std::ostringstream os;
        os << "length: " << ds.length << "\nextended: " << (ds.extended ? "yes" : "no")
           << "\nexponents:";
        for (auto e : ds.exponents) os << ' ' << e;
        os << '\n';
        em.primary(os.str());
    } else {
        em.primary(j.dump(2));
    }
    em.metadata({{"subcommand", "defining-set"}});
    return 0;
}

int cmd_check_affine(const RunConfig& cfg, Emitter& em) {
    auto tables = build_field(field_params_for(cfg));
    auto cp = validate_params(cfg.p, cfg.m, cfg.l);
    auto ds = dual_defining_set(cp, true);
    if (cfg.remove_coset >= 0) {
        auto coset = cyclotomic_coset(cfg.remove_coset, cp.n, cp.p);
        std::vector<std::int64_t> keep;
        for (auto e : ds.exponents)
            if (!std::binary_search(coset.members.begin(), coset.members.end(), e))
                keep.push_back(e);
        ds.exponents = std::move(keep);
    }
    auto res = is_affine_invariant(ds, cfg.p, cfg.m);
    json j;
    j["schema"] = kSchemaVersion;
    j["params"] = params_to_json(cp, tables.params());
    j["defining_set"] = defining_set_to_json(ds);
    j["invariant"] = res.invariant;
    if (res.witness) j["witness"] = json::array({res.witness->first, res.witness->second});
    if (cfg.format == "text") {
        std::ostringstream os;
        os << "affine-invariant: " << (res.invariant ? "yes" : "no") << '\n';
        if (res.witness)
            os << "witness: r=" << res.witness->first << " <= s=" << res.witness->second
               << " with r missing\n";
        em.primary(os.str());
    } else {
        em.primary(j.dump(2));
    }
    em.metadata({{"subcommand", "check-affine"}});
    return res.invariant ? 0 : 1;
}

int cmd_theory(const RunConfig& cfg, Emitter& em) {
    auto tables = build_field(field_params_for(cfg));
    auto cp = validate_params(cfg.p, cfg.m, cfg.l);
    auto wd = weight_distribution_theory(cp);
    if (cfg.format == "csv") {
        em.primary(weight_distribution_to_csv(wd));
    } else if (cfg.format == "text") {
        em.primary(text_weight_table(
            weight_distribution_to_json(wd, cp, tables.params(), "theory")));
    } else {
        json j;
        j["schema"] = kSchemaVersion;
        j["params"] = params_to_json(cp, tables.params());
        j["value_distribution"] = value_rows_to_json(value_distribution(cp));
        j["weight_distribution"] =
            weight_distribution_to_json(wd, cp, tables.params(), "theory");
        if (cp.m >= 6) j["designs"] = design_params_to_json(design_parameters(cp));
        em.primary(j.dump(2));
    }
    em.metadata({{"subcommand", "theory"}});
    return 0;
}

int cmd_enumerate(const RunConfig& cfg, Emitter& em, const Cache& cache, std::ostream& err) {
    auto tables = build_field(field_params_for(cfg));
    auto cp = validate_params(cfg.p, cfg.m, cfg.l);
    auto res = enumerate_cached(cfg, tables, cp, cache, err);
    if (cfg.format == "csv")
        em.primary(weight_distribution_to_csv(res.distribution));
    else if (cfg.format == "text")
        em.primary(text_weight_table(enumeration_to_json(res, cp, tables.params())));
    else
        em.primary(enumeration_to_json(res, cp, tables.params()).dump(2));
    em.metadata({{"subcommand", "enumerate"}});
    return 0;
}

int cmd_compare(const RunConfig& cfg, Emitter& em, const Cache& cache, std::ostream& err) {
    auto tables = build_field(field_params_for(cfg));
    auto cp = validate_params(cfg.p, cfg.m, cfg.l);
    auto res = enumerate_cached(cfg, tables, cp, cache, err);
    auto wd = weight_distribution_theory(cp);
    auto rows = value_distribution(cp);

    json weight_diffs = json::array();
    {
        std::set<std::int64_t> keys;
        for (auto& [w, x] : wd.entries) keys.insert(w);
        for (auto& [w, x] : res.distribution.entries) keys.insert(w);
        for (auto w : keys) {
            Int t = wd.entries.count(w) ? wd.entries.at(w) : Int(0);
            Int e = res.distribution.entries.count(w) ? res.distribution.entries.at(w) : Int(0);
            if (t != e)
                weight_diffs.push_back(
                    {{"weight", w}, {"theory", t.get_str()}, {"enumeration", e.get_str()}});
        }
    }
    json census_diffs = json::array();
    for (size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].multiplicity != res.census.counts[i])
            census_diffs.push_back({{"label", rows[i].cls.label},
                                    {"theory", rows[i].multiplicity.get_str()},
                                    {"enumeration", res.census.counts[i].get_str()}});
    }
    json j;
    j["schema"] = kSchemaVersion;
    j["params"] = params_to_json(cp, tables.params());
    j["weight_diffs"] = weight_diffs;
    j["census_diffs"] = census_diffs;
    j["match"] = weight_diffs.empty() && census_diffs.empty();
    em.primary(j.dump(2));
    em.metadata({{"subcommand", "compare"}});
    return j["match"].get<bool>() ? 0 : 1;
}

int cmd_weight_specs(const RunConfig& cfg, Emitter& em, const Cache& cache, std::ostream& err) {
    if (cfg.weight < 0) throw CLI::ValidationError("--weight is required");
    auto tables = build_field(field_params_for(cfg));
    auto cp = validate_params(cfg.p, cfg.m, cfg.l);
    auto specs = specs_cached(cfg, tables, cp, cfg.weight, cache, err);
    json j;
    j["schema"] = kSchemaVersion;
    j["params"] = params_to_json(cp, tables.params());
    j["weight"] = cfg.weight;
    j["count"] = specs.size();
    j["specs"] = specs_to_json(specs);
    em.primary(j.dump(2));
    em.metadata({{"subcommand", "weight-specs"}});
    return 0;
}

int cmd_verify_design(const RunConfig& cfg, Emitter& em, const Cache& cache, std::ostream& err) {
    if (cfg.weight < 0) throw CLI::ValidationError("--weight is required");
    auto tables = build_field(field_params_for(cfg));
    auto cp = validate_params(cfg.p, cfg.m, cfg.l);
    auto specs = specs_cached(cfg, tables, cp, cfg.weight, cache, err);
    auto dedup = cfg.dedup == "explicit" ? DedupMode::explicit_set : DedupMode::scalar_rule;
    if (!cfg.blocks_out.empty()) {
        auto blocks = extract_blocks(tables, cp, specs, dedup);
        std::ofstream f(cfg.blocks_out, std::ios::binary | std::ios::trunc);
        if (cfg.blocks_out.ends_with(".json"))
            f << blocks_to_json(blocks).dump() << '\n';
        else
            f << blocks_to_text(blocks);
        if (!f) throw Error("cannot write " + cfg.blocks_out);
    }
    auto rep = verify_design_from_specs(tables, cp, specs, dedup, effective_threads(cfg));
    json j = design_report_to_json(rep);
    j["schema"] = kSchemaVersion;
    j["params"] = params_to_json(cp, tables.params());
    if (cfg.format == "text") {
        std::ostringstream os;
        os << "2-design: " << (rep.is_design ? "yes" : "no") << "\nv: " << rep.v
           << "\nk: " << rep.k << "\nb: " << rep.b;
        if (rep.lambda) os << "\nlambda: " << *rep.lambda;
        os << "\neq1: " << (rep.eq1_holds ? "exact" : "violated") << '\n';
        em.primary(os.str());
    } else {
        em.primary(j.dump(2));
    }
    em.metadata({{"subcommand", "verify-design"}});
    return rep.is_design && rep.eq1_holds ? 0 : 1;
}

int cmd_explore_open_case(const RunConfig& cfg, Emitter& em, const Cache& cache,
                          std::ostream& err) {
    auto tables = build_field(field_params_for(cfg));
    auto cp = validate_params(cfg.p, cfg.m, cfg.l);
    std::int64_t weight = 1;
    for (int i = 0; i < 4; ++i) weight *= cp.p;
    weight *= static_cast<std::int64_t>(cp.p) * cp.p - 1;
    auto specs = specs_cached(cfg, tables, cp, weight, cache, err);
    auto rep = explore_open_case(tables, cp, specs, effective_threads(cfg));
    json j = design_report_to_json(rep);
    j["schema"] = kSchemaVersion;
    j["params"] = params_to_json(cp, tables.params());
    j["weight"] = weight;
    em.primary(j.dump(2));
    em.metadata({{"subcommand", "explore-open-case"}});
    return rep.is_design && rep.eq1_holds ? 0 : 1;
}

int cmd_expsum(const RunConfig& cfg, Emitter& em) {
    auto tables = build_field(field_params_for(cfg));
    auto cp = validate_params(cfg.p, cfg.m, cfg.l);
    SValueClassifier classifier(cp);
    std::mt19937_64 rng(cfg.seed);
    std::uniform_int_distribution<std::int64_t> dist(0, tables.q() - 1);
    json per_class = json::object();
    for (int i = 0; i < cfg.sample; ++i) {
        FqElem a = tables.element_at(static_cast<std::uint32_t>(dist(rng)));
        FqElem b = tables.element_at(static_cast<std::uint32_t>(dist(rng)));
        FqElem c = tables.element_at(static_cast<std::uint32_t>(dist(rng)));
        auto hist = s_abc(tables, cp, a, b, c);
        auto& cls = classifier.classes()[static_cast<size_t>(
            classifier.classify_counts64(hist.counts))];
        per_class[cls.label] = per_class.value(cls.label, 0) + 1;
        for (int h = 0; h < cp.p; ++h) t_abch(tables, cp, a, b, c, h);  // identity asserted inside
    }
    json gauss = json::object();
    for (int p : {3, 5, 7, 11}) {
        auto g = gauss_sum(p);
        gauss[std::to_string(p)] = (g * g).as_rational_integer()->get_str();
    }
    json j;
    j["schema"] = kSchemaVersion;
    j["params"] = params_to_json(cp, tables.params());
    j["samples"] = cfg.sample;
    j["seed"] = cfg.seed;
    j["class_counts"] = per_class;
    j["gauss_sum_squares"] = gauss;
    em.primary(j.dump(2));
    em.metadata({{"subcommand", "expsum"}});
    return 0;
}

void add_common(CLI::App* sub, RunConfig& cfg, bool needs_l = true) {
    sub->add_option("--p", cfg.p, "odd prime");
    sub->add_option("--m", cfg.m, "extension degree");
    if (needs_l) sub->add_option("--l", cfg.l, "monomial parameter l");
    sub->add_option("--modulus", cfg.modulus,
                    "modulus coefficients, constant first (default: Conway)");
    sub->add_option("--mode", cfg.mode, "enumeration mode")
        ->check(CLI::IsMember({"naive", "transform"}));
    sub->add_option("--threads", cfg.threads, "worker threads (0 = hardware)");
    sub->add_option("--cache-dir", cfg.cache_dir, "cache directory");
    sub->add_flag("--no-cache", cfg.no_cache, "bypass the cache");
    sub->add_option("--format", cfg.format, "output format")
        ->check(CLI::IsMember({"json", "csv", "text"}));
    sub->add_option("--out", cfg.out_path, "write primary output to a file");
    sub->add_option("--budget", cfg.budget, "max p^{3m} for exhaustive passes");
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    RunConfig cfg;
    cfg.cache_dir = default_cache_dir();

    CLI::App app{"trace codes from Dembowski-Ostrom monomials: weight distributions and 2-designs"};
    app.require_subcommand(1);

    auto* sc_field = app.add_subcommand("field-info", "field and parameter facts");
    add_common(sc_field, cfg);
    auto* sc_ds = app.add_subcommand("defining-set", "defining set of the (extended) dual");
    add_common(sc_ds, cfg);
    sc_ds->add_flag("--extended,!--no-extended", cfg.extended, "include position 0");
    auto* sc_affine = app.add_subcommand("check-affine", "Kasami-Lin-Peterson test");
    add_common(sc_affine, cfg);
    sc_affine->add_option("--remove-coset", cfg.remove_coset,
                          "drop the coset of this exponent first (negative control)");
    auto* sc_theory = app.add_subcommand("theory", "closed-form tables");
    add_common(sc_theory, cfg);
    auto* sc_enum = app.add_subcommand("enumerate", "exhaustive weight distribution and census");
    add_common(sc_enum, cfg);
    auto* sc_cmp = app.add_subcommand("compare", "theory vs enumeration diff");
    add_common(sc_cmp, cfg);
    auto* sc_specs = app.add_subcommand("weight-specs", "all specs of one weight");
    add_common(sc_specs, cfg);
    sc_specs->add_option("--weight", cfg.weight, "target weight")->required();
    auto* sc_design = app.add_subcommand("verify-design", "pair-coverage design verification");
    add_common(sc_design, cfg);
    sc_design->add_option("--weight", cfg.weight, "block size = codeword weight")->required();
    sc_design->add_option("--dedup", cfg.dedup, "support dedup rule")
        ->check(CLI::IsMember({"scalar", "explicit"}));
    sc_design->add_option("--blocks-out", cfg.blocks_out,
                          "also write the block set (.json = JSON, else one block per line)");
    auto* sc_open = app.add_subcommand("explore-open-case", "m=6, i=p^4(p^2-1) exploration");
    add_common(sc_open, cfg);
    auto* sc_exp = app.add_subcommand("expsum", "random-triple classification and identities");
    add_common(sc_exp, cfg);
    sc_exp->add_option("--sample", cfg.sample, "number of random triples");
    sc_exp->add_option("--seed", cfg.seed, "PRNG seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {  // --help
            out << app.help();
            return 0;
        }
        err << "usage error: " << e.what() << '\n';
        return 2;
    }

    Emitter em{cfg, out, err};
    Cache cache(cfg.cache_dir, !cfg.no_cache);
    try {
        if (sc_field->parsed()) return cmd_field_info(cfg, em);
        if (sc_ds->parsed()) return cmd_defining_set(cfg, em);
        if (sc_affine->parsed()) return cmd_check_affine(cfg, em);
        if (sc_theory->parsed()) return cmd_theory(cfg, em);
        if (sc_enum->parsed()) return cmd_enumerate(cfg, em, cache, err);
        if (sc_cmp->parsed()) return cmd_compare(cfg, em, cache, err);
        if (sc_specs->parsed()) return cmd_weight_specs(cfg, em, cache, err);
        if (sc_design->parsed()) return cmd_verify_design(cfg, em, cache, err);
        if (sc_open->parsed()) return cmd_explore_open_case(cfg, em, cache, err);
        if (sc_exp->parsed()) return cmd_expsum(cfg, em);
    } catch (const CLI::ValidationError& e) {
        err << "usage error: " << e.what() << '\n';
        return 2;
    } catch (const InvalidPrime& e) {
        err << "usage error: " << e.what() << '\n';
        return 2;
    } catch (const InvalidRange& e) {
        err << "usage error: " << e.what() << '\n';
        return 2;
    } catch (const ExcludedL& e) {
        err << "usage error: " << e.what() << '\n';
        return 2;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    err << "usage error: no subcommand\n";
    return 2;
}

}  // namespace dotrace::cli

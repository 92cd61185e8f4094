#include "dotrace/serialize.hpp"

#include <sstream>

namespace dotrace {

json params_to_json(const CodeParams& params, const FieldParams& field) {
    json j;
    j["p"] = params.p;
    j["m"] = params.m;
    j["l"] = params.l;
    j["modulus"] = field.modulus_string();
    j["q"] = params.q;
    j["n"] = params.n;
    j["d"] = params.d;
    j["d_prime"] = params.dprime;
    j["branch"] = to_string(params.branch);
    j["p_star"] = params.p_star;
    if (params.s >= 0) j["s"] = params.s;
    if (params.mu != 0) j["mu"] = params.mu;
    j["e1_mod_n"] = params.e1;
    j["e3_mod_n"] = params.e3;
    j["warnings"] = params.warnings;
    return j;
}

json cyclotomic_to_json(const CyclotomicInteger& z) {
    json arr = json::array();
    for (auto& c : z.coeffs()) arr.push_back(c.get_str());
    return arr;
}

json weight_distribution_to_json(const WeightDistribution& wd, const CodeParams& params,
                                 const FieldParams& field, const std::string& source) {
    json j;
    j["schema"] = kSchemaVersion;
    j["source"] = source;
    j["p"] = params.p;
    j["m"] = params.m;
    j["l"] = params.l;
    j["modulus"] = field.modulus_string();
    json entries = json::array();
    for (auto& [w, mult] : wd.entries) entries.push_back(json::array({w, mult.get_str()}));
    j["entries"] = std::move(entries);
    j["total"] = wd.total.get_str();
    return j;
}

std::string weight_distribution_to_csv(const WeightDistribution& wd) {
    std::ostringstream os;
    os << "weight,multiplicity\n";
    for (auto& [w, mult] : wd.entries) os << w << ',' << mult.get_str() << '\n';
    return os.str();
}

json census_to_json(const SCensus& census) {
    json arr = json::array();
    for (size_t i = 0; i < census.classes.size(); ++i) {
        const auto& cls = census.classes[i];
        json row;
        row["row"] = cls.row;
        if (cls.upsilon >= 0) row["upsilon"] = cls.upsilon;
        if (cls.j > 0) row["j"] = cls.j;
        row["label"] = cls.label;
        row["value"] = cyclotomic_to_json(cls.value);
        row["count"] = census.counts[i].get_str();
        arr.push_back(std::move(row));
    }
    return arr;
}

json value_rows_to_json(const std::vector<ValueDistRow>& rows) {
    json arr = json::array();
    for (auto& r : rows) {
        if (r.multiplicity == 0) continue;
        json row;
        row["row"] = r.cls.row;
        if (r.cls.upsilon >= 0) row["upsilon"] = r.cls.upsilon;
        if (r.cls.j > 0) row["j"] = r.cls.j;
        row["label"] = r.cls.label;
        row["value"] = cyclotomic_to_json(r.cls.value);
        row["multiplicity"] = r.multiplicity.get_str();
        arr.push_back(std::move(row));
    }
    return arr;
}

json coset_to_json(const CyclotomicCoset& c) {
    json j;
    j["leader"] = c.leader;
    j["members"] = c.members;
    return j;
}

json defining_set_to_json(const DefiningSet& ds) {
    json j;
    j["length"] = ds.length;
    j["extended"] = ds.extended;
    j["exponents"] = ds.exponents;
    j["coset_leaders"] = ds.coset_leaders;
    return j;
}

json design_params_to_json(const std::vector<DesignParams>& designs) {
    json arr = json::array();
    for (auto& d : designs) {
        json row;
        row["v"] = d.v.get_str();
        row["k"] = d.k.get_str();
        row["lambda"] = d.lambda.get_str();
        row["b"] = d.b.get_str();
        row["t"] = d.t;
        arr.push_back(std::move(row));
    }
    return arr;
}

json design_report_to_json(const DesignReport& rep) {
    json j;
    j["v"] = rep.v;
    j["k"] = rep.k;
    j["t"] = rep.t;
    j["b"] = rep.b;
    j["is_design"] = rep.is_design;
    if (rep.lambda) j["lambda"] = *rep.lambda;
    j["dedup"] = rep.dedup == DedupMode::scalar_rule ? "scalar_rule" : "explicit_set";
    json hist = json::object();
    for (auto& [count, pairs] : rep.pair_coverage_histogram)
        hist[std::to_string(count)] = pairs;
    j["pair_coverage_histogram"] = std::move(hist);
    j["eq1_holds"] = rep.eq1_holds;
    if (!rep.witnesses.empty()) {
        json ws = json::array();
        for (auto& [a, b, c] : rep.witnesses) ws.push_back(json::array({a, b, c}));
        j["witnesses"] = std::move(ws);
    }
    if (!rep.support_multiplicity_histogram.empty()) {
        json sm = json::object();
        for (auto& [mult, cnt] : rep.support_multiplicity_histogram)
            sm[std::to_string(mult)] = cnt;
        j["support_multiplicity_histogram"] = std::move(sm);
    }
    return j;
}

json specs_to_json(std::span<const CodewordSpec> specs) {
    json arr = json::array();
    for (auto& s : specs) arr.push_back(json::array({s.a.log(), s.b.log(), s.c.log(), s.h}));
    return arr;
}

std::vector<CodewordSpec> specs_from_json(const json& j) {
    std::vector<CodewordSpec> out;
    out.reserve(j.size());
    for (auto& row : j) {
        CodewordSpec s;
        s.a = FqElem::from_log(row.at(0).get<std::int32_t>());
        s.b = FqElem::from_log(row.at(1).get<std::int32_t>());
        s.c = FqElem::from_log(row.at(2).get<std::int32_t>());
        s.h = row.at(3).get<int>();
        out.push_back(s);
    }
    return out;
}

json blocks_to_json(const std::vector<Block>& blocks) {
    json arr = json::array();
    for (auto& b : blocks) arr.push_back(b.points);
    return arr;
}

std::string blocks_to_text(const std::vector<Block>& blocks) {
    std::ostringstream os;
    for (auto& b : blocks) {
        for (size_t i = 0; i < b.points.size(); ++i) {
            if (i) os << ' ';
            os << b.points[i];
        }
        os << '\n';
    }
    return os.str();
}

}  // namespace dotrace

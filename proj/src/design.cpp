#include "dotrace/design.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <thread>

#include "dotrace/theory.hpp"

namespace dotrace {

namespace {

std::vector<std::uint32_t> support_of(const FieldTables& tables, const CodeParams& params,
                                      const CodewordSpec& spec) {
    auto cw = codeword(tables, params, spec);
    std::vector<std::uint32_t> pts;
    for (std::uint32_t i = 0; i < cw.size(); ++i)
        if (cw[i]) pts.push_back(i);
    return pts;
}

CodewordSpec scaled_spec(const FieldTables& tables, const CodewordSpec& s, int t) {
    FqElem f = tables.from_base(t);
    return {tables.mul(f, s.a), tables.mul(f, s.b), tables.mul(f, s.c),
            (s.h * t) % tables.p()};
}

// triangular index of the unordered pair (i, j), i < j
inline std::size_t pair_index(std::int64_t v, std::int64_t i, std::int64_t j) {
    return static_cast<std::size_t>(i * (2 * v - i - 1) / 2 + (j - i - 1));
}

struct PairCounter {
    std::int64_t v;
    std::vector<std::uint32_t> counts;

    explicit PairCounter(std::int64_t v_) : v(v_), counts(static_cast<size_t>(v_ * (v_ - 1) / 2), 0) {}

    void add_block(std::span<const std::uint32_t> pts) {
        const size_t k = pts.size();
        for (size_t i = 0; i + 1 < k; ++i) {
            std::uint32_t* base = counts.data() + pair_index(v, pts[i], pts[i] + 1);
            for (size_t j = i + 1; j < k; ++j) base[pts[j] - pts[i] - 1]++;
        }
    }
    void merge(const PairCounter& o) {
        for (size_t i = 0; i < counts.size(); ++i) counts[i] += o.counts[i];
    }
};

DesignReport report_from_counter(std::int64_t v, std::int64_t k, std::int64_t b,
                                 const PairCounter& pc) {
    DesignReport rep;
    rep.v = v;
    rep.k = k;
    rep.b = b;
    for (auto c : pc.counts) rep.pair_coverage_histogram[c]++;
    rep.is_design = rep.pair_coverage_histogram.size() == 1;
    if (rep.is_design) {
        rep.lambda = rep.pair_coverage_histogram.begin()->first;
        rep.eq1_holds = Int(b) * choose2(Int(k)) == Int(*rep.lambda) * choose2(Int(v));
    } else {
        // witnesses: one pair at the minimum count, one at the maximum
        std::int64_t lo = rep.pair_coverage_histogram.begin()->first;
        std::int64_t hi = rep.pair_coverage_histogram.rbegin()->first;
        for (std::int64_t i = 0; i < v && rep.witnesses.size() < 4; ++i)
            for (std::int64_t j = i + 1; j < v && rep.witnesses.size() < 4; ++j) {
                std::int64_t c = pc.counts[pair_index(v, i, j)];
                if (c == lo || c == hi) {
                    rep.witnesses.emplace_back(static_cast<std::uint32_t>(i),
                                               static_cast<std::uint32_t>(j), c);
                    if (c == lo) lo = -1;  // keep at most one per extreme
                    else
                        hi = -1;
                }
            }
    }
    return rep;
}

}  // namespace

std::vector<CodewordSpec> scalar_class_representatives(const FieldTables& tables,
                                                       const CodeParams&,
                                                       std::span<const CodewordSpec> specs) {
    const int p = tables.p();
    std::vector<CodewordSpec> sorted(specs.begin(), specs.end());
    std::sort(sorted.begin(), sorted.end());
    std::vector<std::uint8_t> used(sorted.size(), 0);
    std::vector<CodewordSpec> reps;
    auto find = [&](const CodewordSpec& s) -> std::int64_t {
        auto it = std::lower_bound(sorted.begin(), sorted.end(), s);
        if (it == sorted.end() || !(*it == s)) return -1;
        return it - sorted.begin();
    };
    for (size_t i = 0; i < sorted.size(); ++i) {
        if (used[i]) continue;
        const CodewordSpec& rep = sorted[i];
        int cls_size = 1;
        used[i] = 1;
        for (int t = 2; t < p; ++t) {
            auto idx = find(scaled_spec(tables, rep, t));
            if (idx < 0 || used[static_cast<size_t>(idx)])
                throw ScalarRuleViolated("scalar class of a spec is incomplete in the input");
            used[static_cast<size_t>(idx)] = 1;
            ++cls_size;
        }
        if (cls_size != p - 1)
            throw ScalarRuleViolated("scalar class size " + std::to_string(cls_size) +
                                     " != p-1");
        reps.push_back(rep);
    }
    return reps;
}

std::vector<Block> extract_blocks(const FieldTables& tables, const CodeParams& params,
                                  std::span<const CodewordSpec> specs, DedupMode dedup) {
    if (specs.empty()) return {};
    std::int64_t weight = weight_of(tables, params, specs.front());
    for (auto& s : specs)
        if (weight_of(tables, params, s) != weight)
            throw WeightMismatch("input specs do not share a single weight");

    std::vector<Block> blocks;
    if (dedup == DedupMode::scalar_rule) {
        auto wd = weight_distribution_theory(params);
        std::int64_t delta = 0;
        for (auto& [w, mult] : wd.entries)
            if (w > 0 && mult != 0) {
                delta = w;
                break;
            }
        std::int64_t threshold = support_multiplicity_threshold(delta, params.q, params.p);
        if (weight > threshold)
            throw ScalarRuleViolated("weight " + std::to_string(weight) +
                                     " exceeds the support-multiplicity threshold " +
                                     std::to_string(threshold));
        auto reps = scalar_class_representatives(tables, params, specs);
        for (auto& rep : reps) {
            auto pts = support_of(tables, params, rep);
            // the scalar class must share one support
            for (int t = 2; t < tables.p(); ++t)
                if (support_of(tables, params, scaled_spec(tables, rep, t)) != pts)
                    throw ScalarRuleViolated("scalar multiples with different supports");
            if (static_cast<std::int64_t>(pts.size()) != weight)
                throw WeightMismatch("support size != weight");
            blocks.push_back({std::move(pts)});
        }
    } else {
        for (auto& s : specs) {
            auto pts = support_of(tables, params, s);
            if (static_cast<std::int64_t>(pts.size()) != weight)
                throw WeightMismatch("support size != weight");
            blocks.push_back({std::move(pts)});
        }
        std::sort(blocks.begin(), blocks.end());
        blocks.erase(std::unique(blocks.begin(), blocks.end()), blocks.end());
        return blocks;
    }
    std::sort(blocks.begin(), blocks.end());
    return blocks;
}

DesignReport verify_2_design(std::int64_t v, const std::vector<Block>& blocks) {
    if (blocks.empty()) throw NonUniformBlockSize("no blocks");
    const std::int64_t k = static_cast<std::int64_t>(blocks.front().points.size());
    for (auto& b : blocks)
        if (static_cast<std::int64_t>(b.points.size()) != k)
            throw NonUniformBlockSize("blocks of unequal size");
    if (!(2 < k && k < v)) throw NonUniformBlockSize("need 2 < k < v");
    PairCounter pc(v);
    for (auto& b : blocks) pc.add_block(b.points);
    return report_from_counter(v, k, static_cast<std::int64_t>(blocks.size()), pc);
}

DesignReport verify_design_from_specs(const FieldTables& tables, const CodeParams& params,
                                      std::span<const CodewordSpec> specs, DedupMode dedup,
                                      int threads) {
    const std::int64_t v = params.q;
    if (dedup == DedupMode::explicit_set) {
        auto blocks = extract_blocks(tables, params, specs, dedup);
        auto rep = verify_2_design(v, blocks);
        rep.dedup = dedup;
        // how many codewords share each distinct support
        std::map<Block, std::int64_t> mult;
        for (auto& s : specs) mult[{support_of(tables, params, s)}]++;
        for (auto& [blk, c] : mult) rep.support_multiplicity_histogram[c]++;
        return rep;
    }

    if (specs.empty()) throw NonUniformBlockSize("no specs");
    std::int64_t weight = weight_of(tables, params, specs.front());
    {
        auto wd = weight_distribution_theory(params);
        std::int64_t delta = 0;
        for (auto& [w, mult] : wd.entries)
            if (w > 0 && mult != 0) {
                delta = w;
                break;
            }
        std::int64_t threshold = support_multiplicity_threshold(delta, params.q, params.p);
        if (weight > threshold)
            throw ScalarRuleViolated("weight above the scalar-rule threshold");
    }
    auto reps = scalar_class_representatives(tables, params, specs);

    if (threads < 1) threads = 1;
    std::vector<PairCounter> counters;
    counters.reserve(static_cast<size_t>(threads));
    for (int t = 0; t < threads; ++t) counters.emplace_back(v);
    std::atomic<size_t> next{0};
    std::atomic<bool> failed{false};
    std::string error;
    std::mutex error_mutex;

    auto worker = [&](int tid) {
        PairCounter& pc = counters[static_cast<size_t>(tid)];
        while (!failed.load(std::memory_order_relaxed)) {
            size_t i = next.fetch_add(64);
            if (i >= reps.size()) break;
            size_t end = std::min(i + 64, reps.size());
            for (; i < end; ++i) {
                auto pts = support_of(tables, params, reps[i]);
                bool bad = static_cast<std::int64_t>(pts.size()) != weight;
                for (int t = 2; !bad && t < tables.p(); ++t)
                    bad = support_of(tables, params, scaled_spec(tables, reps[i], t)) != pts;
                if (bad) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    error = "scalar class with inconsistent supports";
                    failed = true;
                    return;
                }
                pc.add_block(pts);
            }
        }
    };
    std::vector<std::thread> pool;
    for (int t = 1; t < threads; ++t) pool.emplace_back(worker, t);
    worker(0);
    for (auto& th : pool) th.join();
    if (failed) throw ScalarRuleViolated(error);

    for (int t = 1; t < threads; ++t) counters[0].merge(counters[static_cast<size_t>(t)]);
    auto rep = report_from_counter(v, weight, static_cast<std::int64_t>(reps.size()), counters[0]);
    rep.dedup = DedupMode::scalar_rule;
    return rep;
}

DesignReport explore_open_case(const FieldTables& tables, const CodeParams& params,
                               std::span<const CodewordSpec> specs, int threads) {
    (void)threads;
    if (params.branch != Branch::EvenD || params.m != 6)
        throw InvalidRange("open case is defined for the d'=d even branch with m = 6");
    // i = p^4 (p^2 - 1)
    std::int64_t want = 1;
    for (int i = 0; i < 4; ++i) want *= params.p;
    want *= (static_cast<std::int64_t>(params.p) * params.p - 1);
    for (auto& s : specs)
        if (weight_of(tables, params, s) != want)
            throw WeightMismatch("open-case specs must have weight p^4(p^2-1)");
    return verify_design_from_specs(tables, params, specs, DedupMode::explicit_set, threads);
}

}  // namespace dotrace

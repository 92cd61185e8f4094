#include "dotrace/code.hpp"

#include <algorithm>
#include <atomic>
#include <thread>

namespace dotrace {

std::map<std::tuple<int, int, int>, Int> SCensus::as_map() const {
    std::map<std::tuple<int, int, int>, Int> m;
    for (size_t i = 0; i < classes.size(); ++i)
        m[{classes[i].row, classes[i].upsilon, classes[i].j}] = counts[i];
    return m;
}

std::vector<Gfp> codeword(const FieldTables& tables, const CodeParams& params,
                          const CodewordSpec& spec) {
    const int p = tables.p();
    const std::int64_t q = tables.q();
    const std::int64_t n = tables.n();
    std::vector<Gfp> out(static_cast<size_t>(q));
    auto tr2 = tables.trace2_by_log();
    const int h = ((spec.h % p) + p) % p;
    out[0] = h;  // x = 0: all three monomials vanish
    for (std::int64_t j = 0; j < n; ++j) {
        int v = h;
        if (!spec.a.is_zero()) v += tr2[static_cast<size_t>(spec.a.log() + j * params.e3 % n)];
        if (!spec.b.is_zero()) v += tr2[static_cast<size_t>(spec.b.log() + j * params.e1 % n)];
        if (!spec.c.is_zero()) v += tr2[static_cast<size_t>(spec.c.log() + j)];
        out[static_cast<size_t>(j) + 1] = v % p;
    }
    return out;
}

std::int64_t weight_of(const FieldTables& tables, const CodeParams& params,
                       const CodewordSpec& spec) {
    const int p = tables.p();
    TraceHistogram hist = s_abc(tables, params, spec.a, spec.b, spec.c);
    const int h = ((spec.h % p) + p) % p;
    return tables.q() - hist.counts[static_cast<size_t>((p - h) % p)];
}

namespace {

// Per-thread accumulators; merged by addition, so results are independent of
// the partition.
struct Accum {
    std::vector<std::uint64_t> weight_counts;
    std::vector<std::uint64_t> census;
};

struct EnumSetup {
    const FieldTables& t;
    const CodeParams& cp;
    const SValueClassifier& classifier;
};

// Trace of b * x^{e1} (or a * x^{e3}) per discrete log of x, for a fixed
// multiplier; gnz[j] = Tr(mult * alpha^{j e}).
void fill_monomial_traces(const FieldTables& t, FqElem mult, std::int64_t e,
                          std::vector<std::uint8_t>& out) {
    const std::int64_t n = t.n();
    auto tr2 = t.trace2_by_log();
    if (mult.is_zero()) {
        std::fill(out.begin(), out.end(), 0);
        return;
    }
    const std::int64_t lg = mult.log();
    for (std::int64_t j = 0; j < n; ++j) out[static_cast<size_t>(j)] = tr2[static_cast<size_t>(lg + j * e % n)];
}

void process_histogram(const EnumSetup& s, const std::int32_t* hist, Accum& acc) {
    const int p = s.t.p();
    const std::int64_t q = s.t.q();
    acc.census[static_cast<size_t>(s.classifier.classify_counts(
        std::span<const std::int32_t>(hist, static_cast<size_t>(p))))]++;
    for (int t = 0; t < p; ++t) acc.weight_counts[static_cast<size_t>(q - hist[t])]++;
}

void run_pair_transform(const EnumSetup& s, FqElem a, FqElem b, std::span<std::int32_t> buf,
                        Accum& acc) {
    s_all_c_tuple_order(s.t, s.cp, a, b, buf);
    const int p = s.t.p();
    const std::int64_t q = s.t.q();
    for (std::int64_t pos = 0; pos < q; ++pos)
        process_histogram(s, &buf[static_cast<size_t>(pos) * p], acc);
}

void run_pair_naive(const EnumSetup& s, const std::vector<std::uint8_t>& g3,
                    const std::vector<std::uint8_t>& g1, Accum& acc) {
    const int p = s.t.p();
    const std::int64_t n = s.t.n();
    auto tr2 = s.t.trace2_by_log();

    std::vector<std::uint8_t> g(static_cast<size_t>(n));
    for (std::int64_t j = 0; j < n; ++j) {
        int v = g3[static_cast<size_t>(j)] + g1[static_cast<size_t>(j)];
        g[static_cast<size_t>(j)] = static_cast<std::uint8_t>(v >= p ? v - p : v);
    }

    std::int32_t hist[32];
    // c = 0
    std::fill(hist, hist + p, 0);
    hist[0] = 1;  // x = 0
    for (std::int64_t j = 0; j < n; ++j) hist[g[static_cast<size_t>(j)]]++;
    process_histogram(s, hist, acc);
    // c = alpha^k
    std::int32_t cnt[64];
    const std::uint8_t* gp = g.data();
    const std::uint8_t* trp = tr2.data();
    for (std::int64_t k = 0; k < n; ++k) {
        std::fill(cnt, cnt + 2 * p - 1, 0);
        const std::uint8_t* trk = trp + k;
        for (std::int64_t j = 0; j < n; ++j) cnt[gp[j] + trk[j]]++;
        for (int r = 0; r < p; ++r) hist[r] = cnt[r] + (r + p < 2 * p - 1 ? cnt[r + p] : 0);
        hist[0]++;  // x = 0
        process_histogram(s, hist, acc);
    }
}

void check_budget(const CodeParams& cp, std::int64_t budget) {
    Int triples = ipow(cp.p, static_cast<unsigned long>(3 * cp.m));
    if (triples > budget)
        throw BudgetExceeded("p^{3m} = " + triples.get_str() + " exceeds the compute budget " +
                             std::to_string(budget));
}

}  // namespace

EnumerationResult enumerate_weight_distribution(const FieldTables& tables, const CodeParams& params,
                                                EnumerationMode mode, int threads,
                                                std::int64_t budget, const ProgressFn& progress) {
    check_budget(params, budget);
    const int p = tables.p();
    const std::int64_t q = tables.q();
    if (threads < 1) threads = 1;

    SValueClassifier classifier(params);
    EnumSetup setup{tables, params, classifier};
    const int nclasses = classifier.num_classes();

    std::vector<Accum> accs(static_cast<size_t>(threads));
    std::atomic<std::int64_t> next_a{0};
    std::atomic<std::int64_t> done_a{0};

    auto worker = [&](int tid) {
        Accum& acc = accs[static_cast<size_t>(tid)];
        acc.weight_counts.assign(static_cast<size_t>(q) + 1, 0);
        acc.census.assign(static_cast<size_t>(nclasses), 0);
        std::vector<std::int32_t> buf(static_cast<size_t>(q) * p);
        std::vector<std::uint8_t> g3(static_cast<size_t>(tables.n()));
        std::vector<std::uint8_t> g1(static_cast<size_t>(tables.n()));
        while (true) {
            std::int64_t ia = next_a.fetch_add(1);
            if (ia >= q) break;
            FqElem a = tables.element_at(static_cast<std::uint32_t>(ia));
            if (mode == EnumerationMode::naive) fill_monomial_traces(tables, a, params.e3, g3);
            for (std::int64_t ib = 0; ib < q; ++ib) {
                FqElem b = tables.element_at(static_cast<std::uint32_t>(ib));
                if (mode == EnumerationMode::transform) {
                    run_pair_transform(setup, a, b, buf, acc);
                } else {
                    fill_monomial_traces(tables, b, params.e1, g1);
                    run_pair_naive(setup, g3, g1, acc);
                }
            }
            std::int64_t d = done_a.fetch_add(1) + 1;
            if (progress && tid == 0) progress(d, q);
        }
    };

    std::vector<std::thread> pool;
    for (int tid = 1; tid < threads; ++tid) pool.emplace_back(worker, tid);
    worker(0);
    for (auto& th : pool) th.join();

    EnumerationResult res;
    res.census.classes = classifier.classes();
    res.census.counts.assign(static_cast<size_t>(nclasses), 0);
    std::vector<std::uint64_t> wc(static_cast<size_t>(q) + 1, 0);
    for (auto& acc : accs) {
        for (std::int64_t w = 0; w <= q; ++w) wc[static_cast<size_t>(w)] += acc.weight_counts[static_cast<size_t>(w)];
        for (int i = 0; i < nclasses; ++i)
            res.census.counts[static_cast<size_t>(i)] += static_cast<long>(acc.census[static_cast<size_t>(i)]);
    }
    for (std::int64_t w = 0; w <= q; ++w)
        if (wc[static_cast<size_t>(w)])
            res.distribution.add(w, Int(static_cast<unsigned long>(wc[static_cast<size_t>(w)])));
    return res;
}

std::map<std::int64_t, std::vector<CodewordSpec>> collect_specs_of_weights(
    const FieldTables& tables, const CodeParams& params, const std::vector<std::int64_t>& targets,
    int threads, std::int64_t budget, const ProgressFn& progress) {
    check_budget(params, budget);
    const int p = tables.p();
    const std::int64_t q = tables.q();
    if (threads < 1) threads = 1;

    std::vector<std::uint8_t> wanted(static_cast<size_t>(q) + 1, 0);
    for (auto w : targets) {
        if (w < 0 || w > q) throw InvalidRange("target weight out of range");
        wanted[static_cast<size_t>(w)] = 1;
    }

    // contiguous a-ranges keep the global (a,b,c,h) order after concatenation
    std::vector<std::vector<std::pair<std::int64_t, CodewordSpec>>> found(
        static_cast<size_t>(threads));
    std::vector<std::pair<std::int64_t, std::int64_t>> ranges;
    std::int64_t chunk = (q + threads - 1) / threads;
    for (int tid = 0; tid < threads; ++tid) {
        std::int64_t lo = tid * chunk;
        ranges.emplace_back(std::min(lo, q), std::min(lo + chunk, q));
    }
    std::atomic<std::int64_t> done_a{0};

    auto tup = tables.tuple_of_index();
    auto worker = [&](int tid) {
        auto [lo, hi] = ranges[static_cast<size_t>(tid)];
        std::vector<std::int32_t> buf(static_cast<size_t>(q) * p);
        auto& out = found[static_cast<size_t>(tid)];
        for (std::int64_t ia = lo; ia < hi; ++ia) {
            FqElem a = tables.element_at(static_cast<std::uint32_t>(ia));
            for (std::int64_t ib = 0; ib < q; ++ib) {
                FqElem b = tables.element_at(static_cast<std::uint32_t>(ib));
                s_all_c_tuple_order(tables, params, a, b, buf);
                for (std::int64_t ic = 0; ic < q; ++ic) {
                    const std::int32_t* hist = &buf[static_cast<size_t>(tup[static_cast<size_t>(ic)]) * p];
                    for (int h = 0; h < p; ++h) {
                        std::int64_t w = q - hist[(p - h) % p];
                        if (wanted[static_cast<size_t>(w)])
                            out.emplace_back(
                                w, CodewordSpec{a, b,
                                                tables.element_at(static_cast<std::uint32_t>(ic)),
                                                h});
                    }
                }
            }
            std::int64_t d = done_a.fetch_add(1) + 1;
            if (progress && tid == 0) progress(d, q);
        }
    };

    std::vector<std::thread> pool;
    for (int tid = 1; tid < threads; ++tid) pool.emplace_back(worker, tid);
    worker(0);
    for (auto& th : pool) th.join();

    std::map<std::int64_t, std::vector<CodewordSpec>> res;
    for (auto w : targets) res[w];
    for (auto& part : found)
        for (auto& [w, spec] : part) res[w].push_back(spec);
    return res;
}

std::vector<CodewordSpec> collect_specs_of_weight(const FieldTables& tables,
                                                  const CodeParams& params, std::int64_t target,
                                                  int threads, std::int64_t budget) {
    auto m = collect_specs_of_weights(tables, params, {target}, threads, budget);
    return std::move(m[target]);
}

int gfp_rank(std::vector<std::vector<Gfp>> rows, int p) {
    if (rows.empty()) return 0;
    const size_t cols = rows[0].size();
    size_t rank = 0;
    for (size_t col = 0; col < cols && rank < rows.size(); ++col) {
        size_t pivot = rank;
        while (pivot < rows.size() && rows[pivot][col] % p == 0) ++pivot;
        if (pivot == rows.size()) continue;
        std::swap(rows[rank], rows[pivot]);
        // normalize pivot row
        int inv = 1, v = ((rows[rank][col] % p) + p) % p, e = p - 2;
        while (e) {
            if (e & 1) inv = inv * v % p;
            v = v * v % p;
            e >>= 1;
        }
        for (auto& x : rows[rank]) x = x * inv % p;
        for (size_t r = 0; r < rows.size(); ++r) {
            if (r == rank) continue;
            int f = ((rows[r][col] % p) + p) % p;
            if (f)
                for (size_t cidx = 0; cidx < cols; ++cidx)
                    rows[r][cidx] = ((rows[r][cidx] - f * rows[rank][cidx]) % p + p) % p;
        }
        ++rank;
    }
    return static_cast<int>(rank);
}

int dimension_check(const FieldTables& tables, const CodeParams& params) {
    const int p = tables.p();
    const int m = tables.m();
    const std::int64_t q = tables.q();
    std::vector<std::vector<Gfp>> rows;
    for (std::int64_t e : {params.e3, params.e1, std::int64_t{1}}) {
        auto pm = tables.power_map(e);
        for (int j = 0; j < m; ++j) {
            std::vector<Gfp> row(static_cast<size_t>(q));
            FqElem aj = FqElem::from_log(j);
            for (std::int64_t ix = 0; ix < q; ++ix)
                row[static_cast<size_t>(ix)] = tables.trace(
                    tables.mul(aj, tables.element_at(pm[static_cast<size_t>(ix)])));
            rows.push_back(std::move(row));
        }
    }
    rows.emplace_back(static_cast<size_t>(q), 1);  // the all-ones vector
    return gfp_rank(std::move(rows), p);
}

}  // namespace dotrace

#include "dotrace/expsum.hpp"

#include <algorithm>
#include <sstream>

namespace dotrace {

void CyclotomicInteger::canonicalize() {
    if (c_[0] == 0) return;
    Int z = c_[0];
    for (auto& v : c_) v -= z;
}

CyclotomicInteger CyclotomicInteger::integer(int p, Int k) {
    CyclotomicInteger z(p);
    z.c_[0] = std::move(k);
    z.canonicalize();
    return z;
}

CyclotomicInteger CyclotomicInteger::zeta_power(int p, int j, Int scale) {
    CyclotomicInteger z(p);
    j = ((j % p) + p) % p;
    z.c_[j] = std::move(scale);
    z.canonicalize();
    return z;
}

CyclotomicInteger CyclotomicInteger::from_counts(std::span<const std::int64_t> counts) {
    CyclotomicInteger z(static_cast<int>(counts.size()));
    for (size_t j = 0; j < counts.size(); ++j) z.c_[j] = static_cast<long>(counts[j]);
    z.canonicalize();
    return z;
}

CyclotomicInteger& CyclotomicInteger::operator+=(const CyclotomicInteger& o) {
    for (int j = 0; j < p_; ++j) c_[j] += o.c_[j];
    canonicalize();
    return *this;
}

CyclotomicInteger& CyclotomicInteger::operator-=(const CyclotomicInteger& o) {
    for (int j = 0; j < p_; ++j) c_[j] -= o.c_[j];
    canonicalize();
    return *this;
}

CyclotomicInteger operator*(const CyclotomicInteger& a, const CyclotomicInteger& b) {
    CyclotomicInteger r(a.p_);
    for (int i = 0; i < a.p_; ++i) {
        if (a.c_[i] == 0) continue;
        for (int j = 0; j < a.p_; ++j) {
            if (b.c_[j] == 0) continue;
            int k = i + j;
            if (k >= a.p_) k -= a.p_;
            r.c_[k] += a.c_[i] * b.c_[j];
        }
    }
    r.canonicalize();
    return r;
}

CyclotomicInteger CyclotomicInteger::operator-() const {
    CyclotomicInteger r(p_);
    for (int j = 0; j < p_; ++j) r.c_[j] = -c_[j];
    r.canonicalize();
    return r;
}

CyclotomicInteger CyclotomicInteger::scaled(const Int& k) const {
    CyclotomicInteger r(p_);
    for (int j = 0; j < p_; ++j) r.c_[j] = c_[j] * k;
    r.canonicalize();
    return r;
}

CyclotomicInteger CyclotomicInteger::times_zeta(int j) const {
    CyclotomicInteger r(p_);
    j = ((j % p_) + p_) % p_;
    for (int i = 0; i < p_; ++i) {
        int k = i + j;
        if (k >= p_) k -= p_;
        r.c_[k] = c_[i];
    }
    r.canonicalize();
    return r;
}

bool CyclotomicInteger::is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](const Int& v) { return v == 0; });
}

std::optional<Int> CyclotomicInteger::as_rational_integer() const {
    // canonical form of the rational integer k is (0, -k, ..., -k)
    for (int j = 2; j < p_; ++j)
        if (c_[j] != c_[1]) return std::nullopt;
    return -c_[1];
}

std::string CyclotomicInteger::to_string() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int j = 0; j < p_; ++j) {
        if (c_[j] == 0) continue;
        Int a = c_[j];
        if (first) {
            if (a < 0) os << "-";
        } else {
            os << (a < 0 ? " - " : " + ");
        }
        Int mag = abs(a);
        if (mag != 1 || j == 0) os << mag.get_str();
        if (j > 0) {
            if (mag != 1) os << "*";
            os << "z";
            if (j > 1) os << "^" << j;
        }
        first = false;
    }
    return os.str();
}

CyclotomicInteger galois_apply(int y, const CyclotomicInteger& z) {
    const int p = z.p();
    y = ((y % p) + p) % p;
    if (y == 0) throw InvalidRange("galois_apply: y must be a unit mod p");
    CyclotomicInteger r(p);
    std::vector<Int> out(p, 0);
    for (int i = 0; i < p; ++i) out[i * y % p] += z.coeffs()[i];
    CyclotomicInteger res(p);
    for (int i = 0; i < p; ++i) res += CyclotomicInteger::zeta_power(p, i, out[i]);
    return res;
}

CyclotomicInteger gauss_sum(int p) {
    CyclotomicInteger g(p);
    for (int v = 1; v < p; ++v) g += CyclotomicInteger::zeta_power(p, v, legendre(v, p));
    return g;
}

std::int64_t TraceHistogram::total() const {
    std::int64_t t = 0;
    for (auto c : counts) t += c;
    return t;
}

CyclotomicInteger TraceHistogram::to_cyclotomic() const { return CyclotomicInteger::from_counts(counts); }

TraceHistogram s_abc(const FieldTables& tables, const CodeParams& params, FqElem a, FqElem b,
                     FqElem c) {
    const int p = tables.p();
    const std::int64_t n = tables.n();
    TraceHistogram h{p, std::vector<std::int64_t>(p, 0)};
    auto tr2 = tables.trace2_by_log();
    h.counts[0]++;  // x = 0 contributes Tr(0) = 0
    for (std::int64_t j = 0; j < n; ++j) {
        int t = 0;
        if (!a.is_zero()) t += tr2[static_cast<size_t>(a.log() + j * params.e3 % n)];
        if (!b.is_zero()) t += tr2[static_cast<size_t>(b.log() + j * params.e1 % n)];
        if (!c.is_zero()) t += tr2[static_cast<size_t>(c.log() + j)];
        h.counts[t % p]++;
    }
    return h;
}

void s_all_c_tuple_order(const FieldTables& tables, const CodeParams& params, FqElem a, FqElem b,
                         std::span<std::int32_t> buf) {
    const int p = tables.p();
    const int m = tables.m();
    const std::int64_t q = tables.q();
    const std::int64_t n = tables.n();
    std::fill(buf.begin(), buf.end(), 0);
    auto tr2 = tables.trace2_by_log();
    auto packed = tables.packed_by_index();

    // seed with zeta^{G(x)} at the coefficient-vector position of x; the
    // kernel then pairs x's coefficients with c's trace tuple, since
    // Tr(cx) = sum_k x_k Tr(c alpha^k)
    buf[static_cast<size_t>(packed[0]) * p + 0]++;  // x = 0
    for (std::int64_t j = 0; j < n; ++j) {
        int g = 0;
        if (!a.is_zero()) g += tr2[static_cast<size_t>(a.log() + j * params.e3 % n)];
        if (!b.is_zero()) g += tr2[static_cast<size_t>(b.log() + j * params.e1 % n)];
        if (g >= p) g -= p;
        buf[static_cast<size_t>(packed[static_cast<size_t>(j) + 1]) * p + g]++;
    }

    // radix-p butterflies over each base-p digit: out_u[r] = sum_t in_t[(r - u*t) mod p]
    std::vector<std::int32_t> local(static_cast<size_t>(p) * p);
    std::int64_t stride = 1;
    for (int level = 0; level < m; ++level, stride *= p) {
        for (std::int64_t block = 0; block < q; block += stride * p) {
            for (std::int64_t off = 0; off < stride; ++off) {
                const std::int64_t base = block + off;
                for (int t = 0; t < p; ++t) {
                    const std::int32_t* src = &buf[static_cast<size_t>(base + t * stride) * p];
                    std::copy(src, src + p, &local[static_cast<size_t>(t) * p]);
                }
                for (int u = 0; u < p; ++u) {
                    std::int32_t* dst = &buf[static_cast<size_t>(base + u * stride) * p];
                    for (int r = 0; r < p; ++r) {
                        std::int32_t acc = 0;
                        for (int t = 0; t < p; ++t) {
                            int idx = r - u * t % p;
                            idx %= p;
                            if (idx < 0) idx += p;
                            acc += local[static_cast<size_t>(t) * p + idx];
                        }
                        dst[r] = acc;
                    }
                }
            }
        }
    }
}

std::vector<std::int32_t> s_all_c(const FieldTables& tables, const CodeParams& params, FqElem a,
                                  FqElem b) {
    const int p = tables.p();
    const std::int64_t q = tables.q();
    std::vector<std::int32_t> tuple_buf(static_cast<size_t>(q) * p);
    s_all_c_tuple_order(tables, params, a, b, tuple_buf);
    std::vector<std::int32_t> out(static_cast<size_t>(q) * p);
    auto tup = tables.tuple_of_index();
    for (std::int64_t ix = 0; ix < q; ++ix) {
        const std::int32_t* src = &tuple_buf[static_cast<size_t>(tup[static_cast<size_t>(ix)]) * p];
        std::copy(src, src + p, &out[static_cast<size_t>(ix) * p]);
    }
    return out;
}

std::int64_t t_abch(const FieldTables& tables, const CodeParams& params, FqElem a, FqElem b,
                    FqElem c, Gfp h) {
    const int p = tables.p();
    h = ((h % p) + p) % p;
    TraceHistogram hist = s_abc(tables, params, a, b, c);
    std::int64_t direct = hist.counts[static_cast<size_t>((p - h) % p)];

    // p^{m-1} + (1/p) sum_{y != 0} zeta^{yh} sigma_y(S), evaluated symbolically
    CyclotomicInteger s = hist.to_cyclotomic();
    CyclotomicInteger acc(p);
    for (int y = 1; y < p; ++y) acc += galois_apply(y, s).times_zeta(y * h % p);
    auto v = acc.as_rational_integer();
    if (!v) throw IdentityMismatch("t_abch: character sum is not a rational integer");
    Int num = ipow(p, static_cast<unsigned long>(params.m - 1)) * p + *v;  // p * T
    if (num % p != 0) throw IdentityMismatch("t_abch: division by p is not exact");
    Int t = num / p;
    if (t != direct)
        throw IdentityMismatch("t_abch: histogram count " + std::to_string(direct) +
                               " != character identity " + t.get_str());
    return direct;
}

namespace {

Int pow_half(int p, int num) {
    // p^{num/2} with num required even
    if (num % 2 != 0) throw InexactDivision("odd exponent where an even one is required");
    return ipow(p, static_cast<unsigned long>(num / 2));
}

std::string class_label(const std::string& body, int upsilon, int j) {
    std::ostringstream os;
    os << body;
    if (upsilon >= 0) os << " (eps=" << (upsilon == 0 ? "+1" : "-1") << ")";
    if (j > 0) os << " j=" << j;
    return os.str();
}

}  // namespace

std::vector<SValueClass> value_class_table(const CodeParams& params) {
    const int p = params.p;
    const int m = params.m;
    const int d = params.d;
    std::vector<SValueClass> out;
    auto G = gauss_sum(p);

    auto push = [&](int row, int upsilon, int j, CyclotomicInteger value, std::string label) {
        out.push_back({params.branch, row, upsilon, j, std::move(value), std::move(label)});
    };

    if (params.branch == Branch::OddD || params.branch == Branch::EvenD) {
        for (int upsilon = 0; upsilon <= 1; ++upsilon) {
            const int eps = upsilon == 0 ? 1 : -1;
            CyclotomicInteger base1(p), base3(p), base5(p);
            std::string t1, t3, t5;
            if (params.branch == Branch::OddD) {
                base1 = G.scaled(eps * pow_half(p, m - 1));
                t1 = "eps*sqrt(p*)*p^((m-1)/2)";
                base3 = CyclotomicInteger::integer(p, eps * pow_half(p, m + d));
                t3 = "eps*p^((m+d)/2)";
                base5 = G.scaled(eps * pow_half(p, m + 2 * d - 1));
                t5 = "eps*sqrt(p*)*p^((m+2d-1)/2)";
            } else {
                base1 = CyclotomicInteger::integer(p, eps * ipow(p, params.s));
                t1 = "eps*p^s";
                base3 = CyclotomicInteger::integer(p, eps * pow_half(p, m + d));
                t3 = "eps*p^((m+d)/2)";
                base5 = CyclotomicInteger::integer(p, eps * pow_half(p, m + 2 * d));
                t5 = "eps*p^((m+2d)/2)";
            }
            push(1, upsilon, 0, base1, class_label(t1, upsilon, 0));
            for (int j = 1; j < p; ++j)
                push(2, upsilon, j, base1.times_zeta(j), class_label("zeta^j*" + t1, upsilon, j));
            push(3, upsilon, 0, base3, class_label(t3, upsilon, 0));
            for (int j = 1; j < p; ++j)
                push(4, upsilon, j, base3.times_zeta(j), class_label("zeta^j*" + t3, upsilon, j));
            push(5, upsilon, 0, base5, class_label(t5, upsilon, 0));
            for (int j = 1; j < p; ++j)
                push(6, upsilon, j, base5.times_zeta(j), class_label("zeta^j*" + t5, upsilon, j));
        }
        push(7, -1, 0, CyclotomicInteger(p), "0");
        push(8, -1, 0, CyclotomicInteger::integer(p, ipow(p, m)), "p^m");
    } else {
        const int mu = params.mu;
        const int s = params.s;
        if (mu == 0) throw InvalidRange("value_class_table: mu undefined for these parameters");
        struct RowSpec {
            int row_base;  // 1,3,5,7
            Int scale;
            std::string label;
        };
        std::vector<RowSpec> rows;
        rows.push_back({1, mu * ipow(p, s), "mu*p^s"});
        rows.push_back({3, -mu * ipow(p, s + d), "-mu*p^(s+d)"});
        rows.push_back({5, mu * ipow(p, s + 2 * d), "mu*p^(s+2d)"});
        rows.push_back({7, -mu * ipow(p, s + 3 * d), "-mu*p^(s+3d)"});
        for (auto& r : rows) {
            auto base = CyclotomicInteger::integer(p, r.scale);
            push(r.row_base, -1, 0, base, r.label);
            for (int j = 1; j < p; ++j)
                push(r.row_base + 1, -1, j, base.times_zeta(j),
                     class_label("zeta^j*" + r.label, -1, j));
        }
        push(9, -1, 0, CyclotomicInteger(p), "0");
        push(10, -1, 0, CyclotomicInteger::integer(p, ipow(p, m)), "p^m");
    }

    // the classifier depends on pairwise-distinct values
    for (size_t i = 0; i < out.size(); ++i)
        for (size_t k = i + 1; k < out.size(); ++k)
            if (out[i].value == out[k].value)
                throw Error("value_class_table: duplicate expected values (internal)");
    return out;
}

SValueClassifier::SValueClassifier(const CodeParams& params)
    : p_(params.p), classes_(value_class_table(params)) {
    const int w = p_ - 1;
    std::vector<std::pair<std::vector<std::int64_t>, int>> items;
    for (size_t i = 0; i < classes_.size(); ++i) {
        std::vector<std::int64_t> key(w);
        for (int j = 1; j < p_; ++j) {
            const Int& c = classes_[i].value.coeffs()[j];
            if (!c.fits_slong_p()) throw Error("classifier key overflow");
            key[j - 1] = c.get_si();
        }
        items.emplace_back(std::move(key), static_cast<int>(i));
    }
    std::sort(items.begin(), items.end());
    keys_.reserve(items.size() * w);
    key_class_.reserve(items.size());
    for (auto& [k, idx] : items) {
        keys_.insert(keys_.end(), k.begin(), k.end());
        key_class_.push_back(idx);
    }
}

int SValueClassifier::lookup(std::span<const std::int64_t> key) const {
    const int w = p_ - 1;
    int lo = 0, hi = static_cast<int>(key_class_.size());
    while (lo < hi) {
        int mid = (lo + hi) / 2;
        const std::int64_t* k = &keys_[static_cast<size_t>(mid) * w];
        int cmp = 0;
        for (int i = 0; i < w; ++i) {
            if (key[i] < k[i]) {
                cmp = -1;
                break;
            }
            if (key[i] > k[i]) {
                cmp = 1;
                break;
            }
        }
        if (cmp == 0) return key_class_[mid];
        if (cmp < 0)
            hi = mid;
        else
            lo = mid + 1;
    }
    return -1;
}

const SValueClass& SValueClassifier::classify(const CyclotomicInteger& s) const {
    std::vector<std::int64_t> key(p_ - 1);
    for (int j = 1; j < p_; ++j) {
        const Int& c = s.coeffs()[j];
        if (!c.fits_slong_p()) throw UnclassifiedValue("S value out of range: " + s.to_string());
        key[j - 1] = c.get_si();
    }
    int idx = lookup(key);
    if (idx < 0) throw UnclassifiedValue("S value not in the branch table: " + s.to_string());
    return classes_[static_cast<size_t>(idx)];
}

int SValueClassifier::classify_counts(std::span<const std::int32_t> counts) const {
    std::int64_t key[16];
    for (int j = 1; j < p_; ++j) key[j - 1] = static_cast<std::int64_t>(counts[j]) - counts[0];
    int idx = lookup(std::span<const std::int64_t>(key, static_cast<size_t>(p_ - 1)));
    if (idx < 0) throw UnclassifiedValue("histogram does not match any table value");
    return idx;
}

int SValueClassifier::classify_counts64(std::span<const std::int64_t> counts) const {
    std::int64_t key[16];
    for (int j = 1; j < p_; ++j) key[j - 1] = counts[j] - counts[0];
    int idx = lookup(std::span<const std::int64_t>(key, static_cast<size_t>(p_ - 1)));
    if (idx < 0) throw UnclassifiedValue("histogram does not match any table value");
    return idx;
}

SValueClass classify_s(const CodeParams& params, const CyclotomicInteger& s) {
    SValueClassifier cl(params);
    return cl.classify(s);
}

}  // namespace dotrace

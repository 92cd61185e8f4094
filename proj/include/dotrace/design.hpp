#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "dotrace/bigint.hpp"
#include "dotrace/code.hpp"

namespace dotrace {

// A design block: sorted coordinate indices in [0, p^m).
struct Block {
    std::vector<std::uint32_t> points;

    friend bool operator==(const Block&, const Block&) = default;
    friend auto operator<=>(const Block&, const Block&) = default;
};

enum class DedupMode { scalar_rule, explicit_set };

struct DesignReport {
    std::int64_t v = 0;
    std::int64_t k = 0;
    int t = 2;
    std::int64_t b = 0;                        // number of blocks
    std::optional<std::int64_t> lambda;        // set iff the pair count is constant
    bool is_design = false;
    DedupMode dedup = DedupMode::scalar_rule;
    std::map<std::int64_t, std::int64_t> pair_coverage_histogram;  // count -> #pairs
    // up to a few deviant pairs (point_i, point_j, count) when not a design
    std::vector<std::tuple<std::uint32_t, std::uint32_t, std::int64_t>> witnesses;
    bool eq1_holds = false;            // b*C(k,2) == lambda*C(v,2)
    // explicit_set extraction: #codewords sharing each distinct support
    std::map<std::int64_t, std::int64_t> support_multiplicity_histogram;  // multiplicity -> #supports
};

// Supports of equal-weight codewords, deduplicated. scalar_rule groups specs
// into scalar classes {t*spec : t in GF(p)*} of size exactly p-1 and emits one
// block per class (only valid for i <= the support-multiplicity threshold;
// enforced by the caller passing check_threshold). explicit_set materializes
// every support and set-deduplicates. Blocks come back sorted.
std::vector<Block> extract_blocks(const FieldTables& tables, const CodeParams& params,
                                  std::span<const CodewordSpec> specs, DedupMode dedup);

// Exact pair coverage verification: counts, for every unordered point pair,
// the number of containing blocks.
DesignReport verify_2_design(std::int64_t v, const std::vector<Block>& blocks);

// Streaming variant: extracts blocks from specs (per dedup mode) and feeds the
// pair counter without holding all blocks in memory. threads shard the counter
// over block ranges; the merged result is identical to the single-threaded one.
DesignReport verify_design_from_specs(const FieldTables& tables, const CodeParams& params,
                                      std::span<const CodewordSpec> specs, DedupMode dedup,
                                      int threads);

// The open case m = 6, i = p^4(p^2-1): explicit-set extraction, empirical
// (b, lambda), support multiplicity histogram, and the design verdict.
DesignReport explore_open_case(const FieldTables& tables, const CodeParams& params,
                               std::span<const CodewordSpec> specs, int threads);

// Scalar classes of specs under (a,b,c,h) -> (ta,tb,tc,th): returns one
// representative per class after checking sizes and support equality.
std::vector<CodewordSpec> scalar_class_representatives(const FieldTables& tables,
                                                       const CodeParams& params,
                                                       std::span<const CodewordSpec> specs);

}  // namespace dotrace

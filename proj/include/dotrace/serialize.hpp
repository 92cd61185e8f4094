#pragma once

#include <json.hpp>
#include <string>

#include "dotrace/code.hpp"
#include "dotrace/cyclic.hpp"
#include "dotrace/design.hpp"
#include "dotrace/theory.hpp"

// JSON / CSV / text emission. Multiplicities and other unbounded integers are
// decimal strings; plain counts that fit comfortably in 53 bits stay numeric.
// All objects use nlohmann::json's sorted keys, so equal data dumps to equal
// bytes.

namespace dotrace {

using json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;
inline constexpr const char* kToolVersion = "0.1.0";

json params_to_json(const CodeParams& params, const FieldParams& field);

json cyclotomic_to_json(const CyclotomicInteger& z);

json weight_distribution_to_json(const WeightDistribution& wd, const CodeParams& params,
                                 const FieldParams& field, const std::string& source);
std::string weight_distribution_to_csv(const WeightDistribution& wd);

json census_to_json(const SCensus& census);
json value_rows_to_json(const std::vector<ValueDistRow>& rows);

json coset_to_json(const CyclotomicCoset& c);
json defining_set_to_json(const DefiningSet& ds);

json design_params_to_json(const std::vector<DesignParams>& designs);
json design_report_to_json(const DesignReport& rep);

json specs_to_json(std::span<const CodewordSpec> specs);
std::vector<CodewordSpec> specs_from_json(const json& j);

json blocks_to_json(const std::vector<Block>& blocks);
std::string blocks_to_text(const std::vector<Block>& blocks);

}  // namespace dotrace

#pragma once

// JSON documents for reports, plans, orbits and metrics. Top-level documents carry "schema": "nonnorm/1";
// integers that may exceed 2^53 are written as strings.

#include <nlohmann/json.hpp>

#include "nonnorm/construct.hpp"
#include "nonnorm/periods.hpp"
#include "nonnorm/stbc.hpp"
#include "nonnorm/verify.hpp"

namespace nonnorm {

inline constexpr const char* kSchema = "nonnorm/1";

/// A number when exactly representable in binary64, a decimal string otherwise.
nlohmann::json json_integer(std::int64_t v);
nlohmann::json json_integer(arith::u64 v);

nlohmann::json to_json(const FactorCertificate& cert);
nlohmann::json to_json(const CandidateFailure& failure);
nlohmann::json to_json(const EntryReport& report);
nlohmann::json to_json(const ExtensionPlan& plan);
nlohmann::json to_json(const PeriodOrbit& orbit);
nlohmann::json to_json(const MinDetResult& result);
nlohmann::json to_json(const CodeMetrics& metrics);
nlohmann::json to_json(const std::vector<TableRow>& rows, Ring base);
nlohmann::json to_json(const DiversityReport& report);

/// Adds the schema key to an object.
nlohmann::json with_schema(nlohmann::json doc);

}  // namespace nonnorm

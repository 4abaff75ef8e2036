#pragma once

#include <optional>

#include <json.hpp>

#include "critlab/critical_group.hpp"
#include "critlab/filtration.hpp"
#include "critlab/graph.hpp"
#include "critlab/moore.hpp"
#include "critlab/smith.hpp"

namespace critlab {

using Json = nlohmann::json;

/// Version stamped into every top-level report.
inline constexpr int kReportSchema = 1;

/// Integers that fit in 64 bits become JSON numbers, larger ones strings.
Json to_json(const Integer& x);
Json to_json(const Rational& x);
Json to_json(const Factorization& f);

Json graph_report(const Graph& g);
Json critical_group_report(const CriticalGroup& cg, std::size_t bicycle_dim,
                           const std::optional<Integer>& spanning_trees);
Json profile_report(const ElemDivisorProfile& profile);
Json filtration_report(const FiltrationReport& r);
Json moore_report(const MooreAnalysis& an);

/// Adds the schema field to a report body.
Json with_schema(Json body);

}  // namespace critlab

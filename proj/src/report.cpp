#include "critlab/report.hpp"

namespace critlab {

Json to_json(const Integer& x) {
  if (fits_int64(x)) return to_int64(x);
  return x.get_str();
}

Json to_json(const Rational& x) {
  if (x.get_den() == 1) return to_json(Integer(x.get_num()));
  return x.get_str();
}

Json to_json(const Factorization& f) {
  Json out = Json::object();
  for (const auto& [p, e] : f.exponents())
    if (e != 0) out[std::to_string(p)] = e;
  return out;
}

Json with_schema(Json body) {
  body["schema"] = kReportSchema;
  return body;
}

Json graph_report(const Graph& g) {
  Json degrees = Json::array();
  std::size_t min_deg = g.vertex_count() ? g.degree(0) : 0;
  std::size_t max_deg = 0;
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    min_deg = std::min(min_deg, g.degree(v));
    max_deg = std::max(max_deg, g.degree(v));
  }
  return {{"vertices", g.vertex_count()},
          {"edges", g.edge_count()},
          {"components", g.component_count()},
          {"connected", g.is_connected()},
          {"min_degree", min_deg},
          {"max_degree", max_deg}};
}

Json critical_group_report(const CriticalGroup& cg, std::size_t bicycle_dim,
                           const std::optional<Integer>& spanning_trees) {
  Json factors = Json::array();
  for (const auto& f : cg.invariant_factors) factors.push_back(to_json(f));
  Json out = {{"order", to_json(cg.order)},
              {"order_factored", to_json(cg.order_factored())},
              {"invariant_factors", factors},
              {"free_rank", cg.free_rank},
              {"bicycle_dim", bicycle_dim}};
  if (spanning_trees) out["spanning_trees"] = to_json(*spanning_trees);
  return out;
}

Json profile_report(const ElemDivisorProfile& profile) {
  return {{"p", profile.p.value()},
          {"multiplicities", profile.multiplicities},
          {"kernel_rank", profile.kernel_rank},
          {"total_valuation", profile.total_valuation()}};
}

Json filtration_report(const FiltrationReport& r) {
  return {{"p", r.p.value()},
          {"max_level", r.max_level},
          {"dims_M", r.dims_M},
          {"dims_N", r.dims_N},
          {"kernel_dim", r.kernel_dim},
          {"multiplicities", r.profile.multiplicities},
          {"identities_hold", r.identities_hold},
          {"chains_nested", r.chains_nested},
          {"pass", r.pass()}};
}

namespace {

Json family_json(const SolutionFamily& fam) {
  Json exprs = Json::object();
  for (std::size_t i = 0; i < fam.e.size(); ++i) exprs["e" + std::to_string(i)] = fam.e[i].to_string("t");
  Json by_rank = Json::object();
  for (std::size_t i = 0; i < fam.in_terms_of_rank.size(); ++i)
    by_rank["e" + std::to_string(i + 1)] = fam.in_terms_of_rank[i].to_string("e0");
  return {{"prime", fam.prime},
          {"case", fam.case_label},
          {"slack", fam.slack},
          {"param_range", {to_json(fam.t_min), to_json(fam.t_max)}},
          {"e_exprs", exprs},
          {"e_as_function_of_rank", by_rank}};
}

}  // namespace

Json moore_report(const MooreAnalysis& an) {
  const auto& id = an.identity;
  Json params = {{"v", an.params.v}, {"k", an.params.k}, {"lambda", an.params.lambda}, {"mu", an.params.mu}};

  Json spectrum = {{"k", an.spectrum.k},
                   {"theta", an.spectrum.theta.to_string()},
                   {"tau", an.spectrum.tau.to_string()},
                   {"m_theta", an.spectrum.m_theta},
                   {"m_tau", an.spectrum.m_tau}};

  Json bound = Json::array();
  for (const auto& pp : an.bound.allowed) bound.push_back(to_json(pp.value));

  Json forced = Json::object();
  for (const auto& fm : an.forced)
    forced[std::to_string(fm.prime)] = fm.multiplicity ? Json(*fm.multiplicity) : Json(nullptr);

  Json fams = Json::array();
  Json constraints = Json::array();
  for (const auto& fa : an.families) {
    for (std::size_t i = 0; i < fa.constraints.size(); ++i) {
      const auto& c = fa.constraints[i];
      const bool paired = fa.paired && (fa.paired->first == i || fa.paired->second == i);
      constraints.push_back({{"prime", fa.prime},
                             {"eigenvalue", to_json(c.eigenvalue)},
                             {"multiplicity", c.multiplicity},
                             {"side", c.side == RankConstraint::Side::image ? "image" : "kernel"},
                             {"level", c.level},
                             {"inequality", c.to_string()},
                             {"paired", paired}});
    }
    for (const auto& fam : fa.families) fams.push_back(family_json(fam));
  }

  Json out = {{"params", params},
              {"spectrum", spectrum},
              {"identity",
               {{"c", to_json(id.shift)},
                {"w", to_json(id.constant)},
                {"j_coefficient", to_json(id.j_coefficient)},
                {"w_factored", to_json(id.constant_factored)}}},
              {"divisor_bound", bound},
              {"order_factored", to_json(an.order)},
              {"forced", forced},
              {"constraints", constraints},
              {"families", fams}};
  Json skipped = Json::object();
  for (const auto& [q, n] : an.unenumerated) skipped[std::to_string(q)] = {{"free_parameters", n}};
  out["unenumerated"] = skipped;
  out["even_invariant_factors"] = an.even_invariant_factors ? Json(*an.even_invariant_factors) : Json(nullptr);
  return out;
}

}  // namespace critlab

#include "splitpoint/report.hpp"

#include <cmath>

namespace splitpoint {

using nlohmann::json;

namespace {

json num(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

void flatten(const json& node, const std::string& prefix, std::string& out) {
  if (node.is_object()) {
    for (const auto& [key, val] : node.items()) {
      flatten(val, prefix.empty() ? key : prefix + "." + key, out);
    }
    return;
  }
  out += prefix;
  out += '\t';
  out += node.is_string() ? node.get<std::string>() : node.dump();
  out += '\n';
}

}  // namespace

json to_json(const SplitPointEstimate& est) {
  return {{"p_n", num(est.p_n)},  {"k", est.k}, {"status", std::string(to_string(est.status))},
          {"a", num(est.a)},      {"b", num(est.b)}, {"n", est.n}};
}

json to_json(const HartiganSplit& h) { return {{"k_star", h.k_star}, {"p_star", num(h.p_star)}}; }

json to_json(const InfluenceTerms& t) {
  return {{"p_hat", num(t.p_hat)},   {"m", t.m},
          {"q_hat", num(t.q_hat)},   {"f_hat", num(t.f_hat)},
          {"bandwidth", num(t.bandwidth)},
          {"ql_hat", num(t.ql_hat)}, {"qu_hat", num(t.qu_hat)},
          {"bl_hat", num(t.bl_hat)}, {"bu_hat", num(t.bu_hat)}};
}

json to_json(const SplitInference& inf) {
  return {{"terms", to_json(inf.terms)},
          {"g_prime_hat", num(inf.g_prime_hat)},
          {"var_theta_hat", num(inf.var_theta_hat)},
          {"se", num(inf.se)},
          {"level", num(inf.level)},
          {"z_crit", num(inf.z_crit)},
          {"ci_lo", num(inf.ci_lo)},
          {"ci_hi", num(inf.ci_hi)},
          {"halfwidth", num(inf.z_crit * inf.se)}};
}

json to_json(const ClusterTestResult& res) {
  json j = {{"outcome", std::string(to_string(res.outcome))},
            {"null_split", num(res.null_split)},
            {"alpha", num(res.alpha)},
            {"z", num(res.z)},
            {"p_value", num(res.p_value)},
            {"reject", res.reject}};
  return j;
}

json to_json(const SimulationReport& rep) {
  return {{"model", rep.model},
          {"n", rep.n},
          {"reps", rep.reps},
          {"seed", rep.seed},
          {"a", num(rep.a)},
          {"b", num(rep.b)},
          {"level", num(rep.level)},
          {"p0", num(rep.p0)},
          {"mean_pn", num(rep.mean_pn)},
          {"mean_scaled", num(rep.mean_scaled)},
          {"var_scaled", num(rep.var_scaled)},
          {"coverage", num(rep.coverage)},
          {"crossing_count", rep.crossing_count},
          {"boundary_count", rep.boundary_count},
          {"ci_failure_count", rep.ci_failure_count}};
}

json make_report(const std::string& command, json parameters) {
  return {{"tool", {{"name", kToolName}, {"version", kToolVersion}}},
          {"command", command},
          {"parameters", std::move(parameters)}};
}

std::string to_tsv(const json& doc) {
  std::string out;
  flatten(doc, "", out);
  return out;
}

}  // namespace splitpoint

#pragma once

// Experiment configuration: strict JSON in, canonical JSON out.  Parsing
// collects every violation it can find and reports them together in one
// ValidationError; the canonical printer materializes defaults, so
// parse-print-parse is a fixed point and print output is diffable.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "entireops/common.hpp"
#include "entireops/criterion.hpp"
#include "entireops/function_expr.hpp"
#include "entireops/quadrature.hpp"
#include "entireops/taylor_poly.hpp"

namespace entireops {

struct ExperimentConfig {
  std::string label;
  std::optional<FunctionExpr> sequence;  // the full operator family Phi_n
  std::optional<FunctionExpr> phi;       // base function for the power route
  std::optional<SeqSpec> scalars;        // weights c_n for the power route
  std::optional<Annulus> annulus;
  int n_max = 200;
  int k_max = 50;
  double disk_bound = 1.0;  // sups and grids live on |z| <= disk_bound
  double eps = 0.5;         // hitting tolerance for density runs
  QuadratureSpec quad;
  std::vector<TaylorPoly> targets;  // polynomial samples fed to every run
  std::vector<int> n_values{0, 1, 2, 3};

  ExperimentConfig() : targets(default_targets()) {}

  // 1, z, z^2, z^3, 1 + i z.
  static std::vector<TaylorPoly> default_targets() {
    return {TaylorPoly::constant(cplx{1.0, 0.0}), TaylorPoly::monomial(1),
            TaylorPoly::monomial(2), TaylorPoly::monomial(3),
            TaylorPoly({cplx{1.0, 0.0}, cplx{0.0, 1.0}})};
  }
};

namespace detail {

inline void reject_unknown_keys(const nlohmann::ordered_json& j, const std::string& where,
                                std::initializer_list<const char*> allowed,
                                std::vector<std::string>& issues) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool known = false;
    for (const char* k : allowed)
      if (it.key() == k) {
        known = true;
        break;
      }
    if (!known) issues.push_back(where + ": unknown key \"" + it.key() + "\"");
  }
}

inline bool config_scalar(const nlohmann::ordered_json& j, const std::string& where,
                          cplx& out, std::vector<std::string>& issues) {
  if (j.is_number()) {
    out = cplx{j.get<double>(), 0.0};
    return true;
  }
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
    out = cplx{j[0].get<double>(), j[1].get<double>()};
    return true;
  }
  issues.push_back(where + ": expected a number or [re, im] pair");
  return false;
}

inline nlohmann::ordered_json config_scalar_json(cplx v) {
  if (v.imag() == 0.0) return nlohmann::ordered_json(v.real());
  return nlohmann::ordered_json::array({v.real(), v.imag()});
}

}  // namespace detail

inline ExperimentConfig config_from_json(const nlohmann::ordered_json& j) {
  if (!j.is_object()) throw ValidationError({"config: expected a JSON object"});
  std::vector<std::string> issues;
  ExperimentConfig c;
  detail::reject_unknown_keys(j, "config",
                              {"label", "sequence", "phi", "scalars", "annulus", "n_max",
                               "k_max", "disk_bound", "eps", "quad", "targets", "n_values"},
                              issues);

  if (!j.contains("label") || !j["label"].is_string() ||
      j["label"].get<std::string>().empty())
    issues.push_back("label: expected a non-empty string");
  else
    c.label = j["label"].get<std::string>();

  auto parse_expr = [&](const char* key, std::optional<FunctionExpr>& slot) {
    if (!j.contains(key)) return;
    try {
      slot = FunctionExpr::from_json(j[key]);
    } catch (const ValidationError& e) {
      for (std::string s : e.issues) {
        if (s.rfind("expr", 0) == 0) s = key + s.substr(4);
        issues.push_back(std::move(s));
      }
    }
  };
  parse_expr("sequence", c.sequence);
  parse_expr("phi", c.phi);

  if (j.contains("scalars")) {
    try {
      c.scalars = FunctionExpr::seq_from_json(j["scalars"], "scalars");
    } catch (const ValidationError& e) {
      issues.insert(issues.end(), e.issues.begin(), e.issues.end());
    }
  }

  if (j.contains("annulus")) {
    const auto& a = j["annulus"];
    if (!a.is_object()) {
      issues.push_back("annulus: expected an object with keys r1, r2, r3");
    } else {
      detail::reject_unknown_keys(a, "annulus", {"r1", "r2", "r3"}, issues);
      Annulus ann;
      bool ok = true;
      for (const char* k : {"r1", "r2", "r3"}) {
        if (!a.contains(k) || !a[k].is_number() || !(a[k].get<double>() > 0.0)) {
          issues.push_back(std::string("annulus.") + k + ": expected a positive number");
          ok = false;
        }
      }
      if (ok) {
        ann.r1 = a["r1"].get<double>();
        ann.r2 = a["r2"].get<double>();
        ann.r3 = a["r3"].get<double>();
        c.annulus = ann;
      }
    }
  }

  auto parse_int = [&](const char* key, int& slot, int lo) {
    if (!j.contains(key)) return;
    if (!j[key].is_number_integer() || j[key].get<long long>() < lo ||
        j[key].get<long long>() > 1000000)
      issues.push_back(std::string(key) + ": expected an integer in [" + std::to_string(lo) +
                       ", 1000000]");
    else
      slot = static_cast<int>(j[key].get<long long>());
  };
  parse_int("n_max", c.n_max, 1);
  parse_int("k_max", c.k_max, 0);

  auto parse_pos = [&](const char* key, double& slot) {
    if (!j.contains(key)) return;
    if (!j[key].is_number() || !(j[key].get<double>() > 0.0))
      issues.push_back(std::string(key) + ": expected a positive number");
    else
      slot = j[key].get<double>();
  };
  parse_pos("disk_bound", c.disk_bound);
  parse_pos("eps", c.eps);

  if (j.contains("quad")) {
    const auto& q = j["quad"];
    if (!q.is_object()) {
      issues.push_back("quad: expected an object");
    } else {
      detail::reject_unknown_keys(q, "quad", {"radius", "initial_nodes", "tol", "max_doublings"},
                                  issues);
      if (q.contains("radius")) {
        if (!q["radius"].is_number() || !(q["radius"].get<double>() > 0.0))
          issues.push_back("quad.radius: expected a positive number");
        else
          c.quad.radius = q["radius"].get<double>();
      }
      if (q.contains("initial_nodes")) {
        const bool is_int = q["initial_nodes"].is_number_integer();
        const long long v = is_int ? q["initial_nodes"].get<long long>() : 0;
        if (!is_int || v < 8 || v > (1 << 20) || (v & (v - 1)) != 0)
          issues.push_back("quad.initial_nodes: expected a power of two in [8, 1048576]");
        else
          c.quad.initial_nodes = static_cast<int>(v);
      }
      if (q.contains("tol")) {
        if (!q["tol"].is_number() || !(q["tol"].get<double>() > 0.0))
          issues.push_back("quad.tol: expected a positive number");
        else
          c.quad.tol = q["tol"].get<double>();
      }
      if (q.contains("max_doublings")) {
        const bool is_int = q["max_doublings"].is_number_integer();
        const long long v = is_int ? q["max_doublings"].get<long long>() : -1;
        if (!is_int || v < 0 || v > 24)
          issues.push_back("quad.max_doublings: expected an integer in [0, 24]");
        else
          c.quad.max_doublings = static_cast<int>(v);
      }
    }
  }

  if (j.contains("targets")) {
    const auto& ts = j["targets"];
    if (!ts.is_array() || ts.empty()) {
      issues.push_back("targets: expected a non-empty array of coefficient arrays");
    } else {
      std::vector<TaylorPoly> targets;
      for (std::size_t i = 0; i < ts.size(); ++i) {
        const std::string where = "targets[" + std::to_string(i) + "]";
        if (!ts[i].is_array() || ts[i].empty() ||
            ts[i].size() > static_cast<std::size_t>(kDegreeCap) + 1) {
          issues.push_back(where + ": expected a coefficient array with 1 to " +
                           std::to_string(kDegreeCap + 1) + " entries");
          continue;
        }
        std::vector<cplx> coeffs;
        bool ok = true;
        for (std::size_t k = 0; k < ts[i].size(); ++k) {
          cplx v;
          if (!detail::config_scalar(ts[i][k], where + "[" + std::to_string(k) + "]", v,
                                     issues))
            ok = false;
          else
            coeffs.push_back(v);
        }
        if (ok) targets.emplace_back(std::move(coeffs));
      }
      if (!targets.empty()) c.targets = std::move(targets);
    }
  }

  if (j.contains("n_values")) {
    const auto& ns = j["n_values"];
    if (!ns.is_array() || ns.empty()) {
      issues.push_back("n_values: expected a non-empty array of integers >= 0");
    } else {
      std::vector<int> vals;
      bool ok = true;
      for (std::size_t i = 0; i < ns.size(); ++i) {
        if (!ns[i].is_number_integer() || ns[i].get<long long>() < 0 ||
            ns[i].get<long long>() > 1000000) {
          issues.push_back("n_values[" + std::to_string(i) +
                           "]: expected an integer in [0, 1000000]");
          ok = false;
        } else {
          vals.push_back(static_cast<int>(ns[i].get<long long>()));
        }
      }
      if (ok) c.n_values = std::move(vals);
    }
  }

  if (!issues.empty()) throw ValidationError(std::move(issues));
  return c;
}

inline nlohmann::ordered_json config_to_json(const ExperimentConfig& c) {
  nlohmann::ordered_json j;
  j["label"] = c.label;
  if (c.sequence) j["sequence"] = c.sequence->to_json();
  if (c.phi) j["phi"] = c.phi->to_json();
  if (c.scalars) j["scalars"] = FunctionExpr::seq_spec_to_json(*c.scalars);
  if (c.annulus) {
    nlohmann::ordered_json a;
    a["r1"] = c.annulus->r1;
    a["r2"] = c.annulus->r2;
    a["r3"] = c.annulus->r3;
    j["annulus"] = a;
  }
  j["n_max"] = c.n_max;
  j["k_max"] = c.k_max;
  j["disk_bound"] = c.disk_bound;
  j["eps"] = c.eps;
  nlohmann::ordered_json q;
  q["radius"] = c.quad.radius;
  q["initial_nodes"] = c.quad.initial_nodes;
  q["tol"] = c.quad.tol;
  q["max_doublings"] = c.quad.max_doublings;
  j["quad"] = q;
  nlohmann::ordered_json ts = nlohmann::ordered_json::array();
  for (const TaylorPoly& p : c.targets) {
    nlohmann::ordered_json coeffs = nlohmann::ordered_json::array();
    for (const cplx& v : p.coeffs()) coeffs.push_back(detail::config_scalar_json(v));
    ts.push_back(coeffs);
  }
  j["targets"] = ts;
  j["n_values"] = c.n_values;
  return j;
}

}  // namespace entireops

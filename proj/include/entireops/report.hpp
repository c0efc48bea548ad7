#pragma once

// Command layer: each run takes one ExperimentConfig and produces a report
// document plus CSV tables.  Every table is stored twice by construction,
// as rows inside the report JSON and as a CSV rendering of those same rows,
// and cell text is identical in both (numbers print through the JSON
// serializer).  Reports are deterministic except for the "timing" object.

#include <chrono>
#include <ctime>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "entireops/bg_verify.hpp"
#include "entireops/borel.hpp"
#include "entireops/common.hpp"
#include "entireops/config.hpp"
#include "entireops/criterion.hpp"
#include "entireops/function_expr.hpp"
#include "entireops/operators.hpp"
#include "entireops/quadrature.hpp"
#include "entireops/taylor_poly.hpp"

namespace entireops {

using report_json = nlohmann::ordered_json;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<report_json>> rows;
};

struct RunReport {
  report_json doc;
  std::vector<std::pair<std::string, std::string>> csv_files;  // filename -> content
  std::vector<std::string> summary;
  int exit_code = 0;
};

inline const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names{"check", "check32", "borel",   "apply",
                                              "inverse", "zeros",  "bg",     "orbit"};
  return names;
}

namespace detail {

// One cell, rendered exactly as it sits in the report JSON.
inline std::string csv_cell(const report_json& v) {
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

inline std::string table_to_csv(const Table& t) {
  std::string out;
  for (std::size_t i = 0; i < t.columns.size(); ++i) {
    if (i) out += ',';
    out += t.columns[i];
  }
  out += '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += csv_cell(row[i]);
    }
    out += '\n';
  }
  return out;
}

inline report_json table_to_json(const Table& t) {
  report_json j;
  j["columns"] = t.columns;
  report_json rows = report_json::array();
  for (const auto& row : t.rows) {
    report_json r = report_json::array();
    for (const auto& cell : row) r.push_back(cell);
    rows.push_back(std::move(r));
  }
  j["rows"] = std::move(rows);
  return j;
}

inline std::string iso8601_utc_now() {
  const std::time_t t = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[40];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

inline FunctionExpr family_of(const ExperimentConfig& cfg) {
  if (cfg.sequence) return *cfg.sequence;
  if (cfg.phi && cfg.scalars) return operator_power_expr(*cfg.phi, *cfg.scalars);
  throw ValidationError(
      {"this command needs \"sequence\", or \"phi\" together with \"scalars\""});
}

inline Annulus annulus_of(const ExperimentConfig& cfg) {
  if (!cfg.annulus) throw ValidationError({"this command needs \"annulus\""});
  return *cfg.annulus;
}

inline report_json coeffs_json(const TaylorPoly& p) {
  report_json a = report_json::array();
  for (const cplx& c : p.coeffs()) a.push_back(config_scalar_json(c));
  return a;
}

inline report_json finite_or_null(double x) {
  if (std::isfinite(x)) return report_json(x);
  return report_json(nullptr);
}

inline report_json condition_entry_json(const ConditionEntry& e) {
  report_json j;
  j["verdict"] = to_string(e.verdict);
  j["witness"] = e.witness;
  return j;
}

// Shared between the check command and the delegated half of check32.
inline report_json criterion_results(const CriterionReport& cr,
                                     std::vector<std::pair<std::string, Table>>& tables) {
  report_json results;
  report_json conds;
  conds["a"] = condition_entry_json(cr.a);
  conds["b"] = condition_entry_json(cr.b);
  conds["c"] = condition_entry_json(cr.c);
  conds["d"] = condition_entry_json(cr.d);
  conds["e"] = condition_entry_json(cr.e);
  results["conditions"] = std::move(conds);
  results["overall"] = to_string(cr.overall);
  report_json ann;
  ann["r1"] = cr.annulus.r1;
  ann["r2"] = cr.annulus.r2;
  ann["r3"] = cr.annulus.r3;
  ann["rho"] = cr.annulus.rho();
  ann["sigma"] = cr.annulus.sigma();
  results["annulus"] = std::move(ann);
  results["n_max"] = cr.n_max;

  Table zeros;
  zeros.columns = {"n", "winding_inner", "winding_outer"};
  for (std::size_t i = 0; i < cr.zero_free.winding_inner.size(); ++i)
    zeros.rows.push_back({report_json(i + 1), report_json(cr.zero_free.winding_inner[i]),
                          report_json(cr.zero_free.winding_outer[i])});
  tables.emplace_back("zeros", std::move(zeros));

  if (cr.matrices) {
    const BoundMatrices& bm = *cr.matrices;
    report_json m;
    m["sup_alpha"] = bm.sup_alpha;
    m["sup_beta_from1"] = bm.sup_beta_from1;
    m["sup_beta_from0"] = bm.sup_beta_from0;
    m["tail_ratio_alpha"] = finite_or_null(bm.tail_ratio_alpha);
    m["tail_ratio_beta"] = finite_or_null(bm.tail_ratio_beta);
    m["min_headroom"] = bm.min_headroom;
    results["matrices"] = std::move(m);
    Table ar;
    ar.columns = {"n", "alpha_row_sum"};
    for (int n = 1; n <= bm.n_max; ++n)
      ar.rows.push_back(
          {report_json(n), report_json(bm.alpha_row_sums[static_cast<std::size_t>(n)])});
    tables.emplace_back("alpha_row_sums", std::move(ar));
    Table bc;
    bc.columns = {"j", "beta_col_sum"};
    for (int j = 0; j < bm.n_max; ++j)
      bc.rows.push_back(
          {report_json(j), report_json(bm.beta_col_sums[static_cast<std::size_t>(j)])});
    tables.emplace_back("beta_col_sums", std::move(bc));
  }
  if (cr.e_series) {
    const ConditionESeries& es = *cr.e_series;
    report_json e;
    e["r3"] = es.r3;
    e["fitted_ratio"] = finite_or_null(es.fitted_ratio);
    results["series_e"] = std::move(e);
    Table te;
    te.columns = {"n", "min_modulus", "term", "partial_sum"};
    for (std::size_t i = 0; i < es.terms.size(); ++i)
      te.rows.push_back({report_json(i + 1), report_json(es.min_modulus[i]),
                         report_json(es.terms[i]), report_json(es.partial_sums[i])});
    tables.emplace_back("condition_e", std::move(te));
  }
  return results;
}

inline void criterion_summary(const CriterionReport& cr, std::vector<std::string>& out) {
  auto line = [&](const char* tag, const ConditionEntry& e) {
    std::string s = std::string("(") + tag + ") " + to_string(e.verdict);
    if (!e.witness.empty() && e.verdict != Verdict::PassNumeric) s += " -- " + e.witness;
    out.push_back(std::move(s));
  };
  line("a", cr.a);
  line("b", cr.b);
  line("c", cr.c);
  line("d", cr.d);
  line("e", cr.e);
  out.push_back(std::string("overall: ") + to_string(cr.overall));
}

inline report_json ledger_json(const ConvergenceLedger& led) {
  report_json j;
  j["condition"] = led.condition;
  j["verdict"] = to_string(led.verdict);
  j["note"] = led.note;
  j["contour_radius"] = led.contour_radius;
  j["disk_radius"] = led.disk_radius;
  j["analytic_bound"] = led.analytic_bound;
  return j;
}

}  // namespace detail

inline RunReport run_command(const std::string& command, const ExperimentConfig& cfg) {
  const auto t0 = std::chrono::steady_clock::now();
  RunReport rep;
  report_json results;
  std::vector<std::pair<std::string, Table>> tables;
  std::optional<Verdict> overall;

  if (command == "check") {
    const FunctionExpr seq = detail::family_of(cfg);
    const Annulus ann = detail::annulus_of(cfg);
    const CriterionReport cr = check_theorem31(seq, ann, cfg.n_max);
    results = detail::criterion_results(cr, tables);
    overall = cr.overall;
    detail::criterion_summary(cr, rep.summary);
  } else if (command == "check32") {
    if (!cfg.phi || !cfg.scalars)
      throw ValidationError({"check32 needs \"phi\" together with \"scalars\""});
    std::optional<std::pair<double, double>> seed;
    if (cfg.annulus) seed = std::make_pair(cfg.annulus->r1, cfg.annulus->r2);
    const Theorem32Report tr = check_theorem32(*cfg.phi, *cfg.scalars, cfg.n_max, seed);
    report_json st;
    st["gamma_estimate"] = tr.stats.gamma_estimate;
    st["delta_estimate"] = tr.stats.delta_estimate;
    st["window_lo"] = tr.stats.window_lo;
    st["window_hi"] = tr.stats.window_hi;
    st["delta_unbounded_evidence"] = tr.stats.delta_unbounded_evidence;
    st["gamma_vanishing_evidence"] = tr.stats.gamma_vanishing_evidence;
    st["trend_single_jump"] = tr.stats.trend_single_jump;
    results["ratio_stats"] = std::move(st);
    Table rt;
    rt.columns = {"n", "ratio"};
    for (std::size_t i = 0; i < tr.stats.ratios.size(); ++i)
      rt.rows.push_back({report_json(i + 1), report_json(tr.stats.ratios[i])});
    tables.emplace_back("ratios", std::move(rt));
    report_json rs;
    rs["found"] = tr.radii.found;
    rs["used_seed"] = tr.radii.used_seed;
    if (tr.radii.found) {
      rs["r1"] = tr.radii.r1;
      rs["r2"] = tr.radii.r2;
    }
    rs["blocker"] = tr.radii.blocker;
    results["radius_search"] = std::move(rs);
    results["note"] = tr.note;
    results["overall"] = to_string(tr.overall);
    if (tr.sub) {
      results["delegated"] = detail::criterion_results(*tr.sub, tables);
      detail::criterion_summary(*tr.sub, rep.summary);
    }
    overall = tr.overall;
    rep.summary.push_back(std::string("check32 overall: ") + to_string(tr.overall) +
                          (tr.note.empty() ? "" : " -- " + tr.note));
  } else if (command == "borel") {
    report_json targets = report_json::array();
    Table conv;
    conv.columns = {"target", "point", "nodes", "level_error"};
    double worst = 0.0;
    for (std::size_t i = 0; i < cfg.targets.size(); ++i) {
      const TaylorPoly& p = cfg.targets[i];
      BorelRational br(p);
      report_json t;
      t["index"] = i;
      t["coeffs"] = detail::coeffs_json(p);
      report_json w = report_json::array();
      for (const cplx& c : br.weighted_coeffs()) w.push_back(detail::config_scalar_json(c));
      t["weighted_coeffs"] = std::move(w);
      double max_err = 0.0;
      for (int a = 0; a < 8; ++a) {
        const cplx z = std::polar(cfg.disk_bound, kTwoPi * static_cast<double>(a) / 8.0);
        auto integrand = [&](cplx t) { return std::exp(z * t) * br(t); };
        const QuadResult qr = contour_integral(integrand, cfg.quad);
        max_err = std::max(max_err, std::abs(qr.value - p(z)));
        for (const QuadLevel& lvl : qr.history)
          conv.rows.push_back({report_json(i), report_json(a), report_json(lvl.nodes),
                               report_json(std::abs(lvl.value - qr.value))});
      }
      t["max_reconstruction_error"] = max_err;
      worst = std::max(worst, max_err);
      targets.push_back(std::move(t));
    }
    results["targets"] = std::move(targets);
    results["max_reconstruction_error"] = worst;
    tables.emplace_back("borel_convergence", std::move(conv));
    rep.summary.push_back("max reconstruction error " + detail::fmt(worst) + " over " +
                          std::to_string(cfg.targets.size()) + " target(s)");
  } else if (command == "apply") {
    const FunctionExpr seq = detail::family_of(cfg);
    const std::vector<cplx> grid = disk_grid(cfg.disk_bound);
    report_json apps = report_json::array();
    Table ta;
    ta.columns = {"n", "target", "sup_disk"};
    for (int n : cfg.n_values) {
      for (std::size_t i = 0; i < cfg.targets.size(); ++i) {
        const TaylorPoly out = apply_operator(seq, n, cfg.targets[i]);
        double sup = 0.0;
        for (const cplx& z : grid) sup = std::max(sup, std::abs(out(z)));
        report_json a;
        a["n"] = n;
        a["target"] = i;
        a["coeffs"] = detail::coeffs_json(out);
        a["sup_disk"] = sup;
        apps.push_back(std::move(a));
        ta.rows.push_back({report_json(n), report_json(i), report_json(sup)});
      }
    }
    results["applications"] = std::move(apps);
    tables.emplace_back("apply", std::move(ta));
    rep.summary.push_back("applied " + std::to_string(cfg.n_values.size()) +
                          " operator(s) to " + std::to_string(cfg.targets.size()) +
                          " target(s)");
  } else if (command == "inverse") {
    const FunctionExpr seq = detail::family_of(cfg);
    const double contour = cfg.annulus ? cfg.annulus->r3 : cfg.quad.radius;
    const QuadratureSpec q = cfg.quad.with_radius(contour);
    const std::vector<cplx> grid = disk_grid(cfg.disk_bound);
    report_json invs = report_json::array();
    Table ti;
    ti.columns = {"n", "target", "sup_disk", "tail_bound", "roundtrip_residual"};
    double worst_residual = 0.0;
    for (int n : cfg.n_values) {
      for (std::size_t i = 0; i < cfg.targets.size(); ++i) {
        const TaylorPoly& p = cfg.targets[i];
        const TaylorPoly inv = right_inverse_taylor(seq, n, p, q, -1, cfg.disk_bound);
        const TaylorPoly back = apply_operator(seq, n, inv);
        double sup = 0.0, residual = 0.0;
        for (const cplx& z : grid) {
          sup = std::max(sup, std::abs(inv(z)));
          residual = std::max(residual, std::abs(back(z) - p(z)));
        }
        worst_residual = std::max(worst_residual, residual);
        report_json r;
        r["n"] = n;
        r["target"] = i;
        r["coeffs"] = detail::coeffs_json(inv);
        r["sup_disk"] = sup;
        r["tail_bound"] = detail::finite_or_null(inv.tail_bound());
        r["roundtrip_residual"] = residual;
        invs.push_back(std::move(r));
        ti.rows.push_back({report_json(n), report_json(i), report_json(sup),
                           detail::finite_or_null(inv.tail_bound()), report_json(residual)});
      }
    }
    results["inverses"] = std::move(invs);
    results["contour_radius"] = contour;
    results["max_roundtrip_residual"] = worst_residual;
    tables.emplace_back("inverse", std::move(ti));
    rep.summary.push_back("max roundtrip residual " + detail::fmt(worst_residual) +
                          " on contour radius " + detail::fmt(contour));
  } else if (command == "zeros") {
    const FunctionExpr seq = detail::family_of(cfg);
    const Annulus ann = detail::annulus_of(cfg);
    ann.validate();
    const ZeroFreeReport zr = annulus_zero_free(seq, cfg.n_max, ann.rho(), ann.sigma());
    results["verdict"] = to_string(zr.verdict);
    results["witness"] = zr.witness;
    results["rho"] = zr.rho;
    results["sigma"] = zr.sigma;
    Table tz;
    tz.columns = {"n", "winding_inner", "winding_outer"};
    for (std::size_t i = 0; i < zr.winding_inner.size(); ++i)
      tz.rows.push_back({report_json(i + 1), report_json(zr.winding_inner[i]),
                         report_json(zr.winding_outer[i])});
    tables.emplace_back("zeros", std::move(tz));
    overall = zr.verdict;
    rep.summary.push_back(std::string("zero-free annulus: ") + to_string(zr.verdict) +
                          (zr.witness.empty() ? "" : " -- " + zr.witness));
  } else if (command == "bg") {
    const FunctionExpr seq = detail::family_of(cfg);
    const Annulus ann = detail::annulus_of(cfg);
    ann.validate();
    LedgerOptions lopts;
    lopts.n_max = cfg.n_max;
    lopts.k_max = cfg.k_max;
    lopts.disk_bound = cfg.disk_bound;
    lopts.quad = cfg.quad;
    report_json targets = report_json::array();
    Table t1, t2, t3, t4;
    t1.columns = {"target", "k", "sum", "majorant"};
    t2.columns = {"target", "n", "term", "partial_sum"};
    t3.columns = {"target", "n", "term", "partial_sum"};
    t4.columns = {"target", "max_deviation", "tolerance"};
    Verdict acc = Verdict::PassNumeric;
    for (std::size_t i = 0; i < cfg.targets.size(); ++i) {
      const TaylorPoly& p = cfg.targets[i];
      const ConvergenceLedger li = verify_condition_i(seq, p, ann.r1, lopts);
      const ConvergenceLedger lii = verify_condition_ii(seq, p, ann.r2, lopts);
      const ConvergenceLedger liii = verify_condition_iii(seq, p, ann.r3, lopts);
      const IdentityCheck iv = verify_condition_iv(seq, p, cfg.n_values, cfg.disk_bound,
                                                   cfg.quad.with_radius(ann.r2));
      for (std::size_t k = 0; k < li.terms.size(); ++k)
        t1.rows.push_back({report_json(i), report_json(k + 1), report_json(li.terms[k]),
                           report_json(li.analytic_bound)});
      for (std::size_t n = 0; n < lii.terms.size(); ++n)
        t2.rows.push_back({report_json(i), report_json(n + 1), report_json(lii.terms[n]),
                           report_json(lii.partial_sums[n])});
      for (std::size_t n = 0; n < liii.terms.size(); ++n)
        t3.rows.push_back({report_json(i), report_json(n + 1), report_json(liii.terms[n]),
                           report_json(liii.partial_sums[n])});
      t4.rows.push_back(
          {report_json(i), report_json(iv.max_deviation), report_json(iv.tolerance)});
      report_json t;
      t["index"] = i;
      t["ledger_i"] = detail::ledger_json(li);
      t["ledger_ii"] = detail::ledger_json(lii);
      t["ledger_iii"] = detail::ledger_json(liii);
      report_json idj;
      idj["verdict"] = to_string(iv.verdict);
      idj["max_deviation"] = iv.max_deviation;
      idj["tolerance"] = iv.tolerance;
      idj["witness"] = iv.witness;
      t["identity"] = std::move(idj);
      targets.push_back(std::move(t));
      acc = combine({acc, li.verdict, lii.verdict, liii.verdict, iv.verdict});
      rep.summary.push_back("target " + std::to_string(i) + ": (i) " +
                            to_string(li.verdict) + ", (ii) " + to_string(lii.verdict) +
                            ", (iii) " + to_string(liii.verdict) + ", identity " +
                            to_string(iv.verdict));
    }
    results["targets"] = std::move(targets);
    results["overall"] = to_string(acc);
    tables.emplace_back("ledger_i", std::move(t1));
    tables.emplace_back("ledger_ii", std::move(t2));
    tables.emplace_back("ledger_iii", std::move(t3));
    tables.emplace_back("identity", std::move(t4));
    overall = acc;
    rep.summary.push_back(std::string("bg overall: ") + to_string(acc));
  } else if (command == "orbit") {
    const FunctionExpr seq = detail::family_of(cfg);
    const std::vector<cplx> grid = disk_grid(cfg.disk_bound);
    Table to, td;
    to.columns = {"target", "n", "sup"};
    td.columns = {"target", "m", "density"};
    for (std::size_t i = 0; i < cfg.targets.size(); ++i)
      for (int n = 1; n <= cfg.n_max; ++n)
        to.rows.push_back({report_json(i), report_json(n),
                           report_json(orbit_apply(seq, n, cfg.targets[i], grid).sup)});
    report_json dens = report_json::array();
    for (std::size_t i = 0; i < cfg.targets.size(); ++i) {
      const HittingDensity hd = hitting_density(seq, cfg.targets[0], cfg.targets[i],
                                                cfg.eps, cfg.disk_bound, cfg.n_max);
      for (std::size_t m = 0; m < hd.density.size(); ++m)
        td.rows.push_back({report_json(i), report_json(m + 1), report_json(hd.density[m])});
      report_json d;
      d["target"] = i;
      d["hits"] = hd.hits;
      d["liminf_estimate"] = hd.liminf_estimate;
      dens.push_back(std::move(d));
      rep.summary.push_back("target " + std::to_string(i) + ": density liminf " +
                            detail::fmt(hd.liminf_estimate) + " (" +
                            std::to_string(hd.hits.size()) + " hits)");
    }
    results["densities"] = std::move(dens);
    tables.emplace_back("orbit", std::move(to));
    tables.emplace_back("density", std::move(td));
  } else {
    throw ValidationError({"unknown command \"" + command + "\""});
  }

  report_json doc;
  doc["schema_version"] = kReportSchemaVersion;
  doc["library_version"] = kLibraryVersion;
  doc["command"] = command;
  doc["label"] = cfg.label;
  doc["overall"] = overall ? report_json(to_string(*overall)) : report_json(nullptr);
  doc["config"] = config_to_json(cfg);
  doc["results"] = std::move(results);
  report_json tj;
  report_json names = report_json::array();
  for (const auto& [name, table] : tables) {
    tj[name] = detail::table_to_json(table);
    names.push_back(name + ".csv");
    rep.csv_files.emplace_back(name + ".csv", detail::table_to_csv(table));
  }
  doc["tables"] = std::move(tj);
  doc["csv_files"] = std::move(names);
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  report_json timing;
  timing["timestamp"] = detail::iso8601_utc_now();
  timing["wall_clock_sec"] = secs;
  doc["timing"] = std::move(timing);
  rep.doc = std::move(doc);
  if (overall) {
    switch (*overall) {
      case Verdict::PassNumeric: rep.exit_code = 0; break;
      case Verdict::Fail: rep.exit_code = 1; break;
      case Verdict::Inconclusive: rep.exit_code = 2; break;
    }
  }
  return rep;
}

}  // namespace entireops

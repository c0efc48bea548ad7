// Acceptance gate: ten scripted criteria, one pass/fail line each, with the
// key measured numbers inline.  A criterion may be EXPECTED to fail: number
// four tests a comparison-constant envelope that one matrix entry does not
// attain, and the gate prints that analysis instead of hiding it.  The
// binary exits 0 only when every criterion lands on its expected outcome, so
// a green gate certifies the honest state of the numerics, not universal
// success.

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <random>
#include <string>
#include <vector>

#include "entireops/entireops.hpp"

using namespace entireops;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

// 26 points: the origin plus five rings of five angles.
std::vector<cplx> polar_grid(double radius) {
  std::vector<cplx> g;
  g.emplace_back(0.0, 0.0);
  for (int r = 1; r <= 5; ++r)
    for (int a = 0; a < 5; ++a)
      g.push_back(std::polar(radius * static_cast<double>(r) / 5.0,
                             kTwoPi * static_cast<double>(a) / 5.0));
  return g;
}

struct NamedFamily {
  const char* name;
  FunctionExpr f;
  double contour;
};

std::vector<NamedFamily> inverse_families() {
  return {{"derivative powers", catalog::derivative_powers(), 2.0},
          {"mixed", catalog::mixed_5n_9n(), 1.0},
          {"scaled shift", catalog::scaled_shift_powers(), 2.0}};
}

// 1. T_n(S_n P) = P through both code paths on |z| <= 2.
Outcome c01_right_inverse_identity() {
  const auto targets = ExperimentConfig::default_targets();
  const auto grid = polar_grid(2.0);
  double worst = 0.0;
  std::string where = "-";
  for (const NamedFamily& fam : inverse_families()) {
    QuadratureSpec q;
    const QuadratureSpec qr = q.with_radius(fam.contour);
    for (int n = 0; n <= 10; ++n) {
      for (const TaylorPoly& p : targets) {
        const TaylorPoly inv = right_inverse_taylor(fam.f, n, p, qr, -1, 2.0);
        const TaylorPoly back = apply_operator(fam.f, n, inv);
        for (const cplx& z : grid) {
          const double d =
              std::max(std::abs(transfer_apply(fam.f, n, n, p, z, qr) - p(z)),
                       std::abs(back(z) - p(z)));
          if (d > worst) {
            worst = d;
            where = std::string(fam.name) + ", n = " + std::to_string(n);
          }
        }
      }
    }
  }
  return {worst <= 1e-7,
          "max deviation " + detail::fmt(worst) + " (" + where + "; tolerance 1e-07)"};
}

// 2. The right inverse does not depend on the admissible contour radius.
// Inverse values span many orders of magnitude across the catalog, so the
// disagreement is scaled by the sup of the inverse itself (floored at 1).
Outcome c02_radius_invariance() {
  struct Pair {
    const char* name;
    FunctionExpr f;
    double ra, rb;
  };
  const std::vector<Pair> fams = {
      {"derivative powers", catalog::derivative_powers(), 0.5, 2.0},
      {"mixed", catalog::mixed_5n_9n(), 1.0 / 15.0, 1.0},
      {"scaled shift", catalog::scaled_shift_powers(), 0.5, 2.0}};
  const auto targets = ExperimentConfig::default_targets();
  const auto grid = polar_grid(1.0);
  QuadratureSpec q;
  q.tol = 1e-12;
  double worst = 0.0;
  std::string where = "-";
  for (const Pair& fam : fams) {
    for (int n : {1, 3, 5}) {
      for (const TaylorPoly& p : targets) {
        const TaylorPoly ia = right_inverse_taylor(fam.f, n, p, q.with_radius(fam.ra), -1, 1.0);
        const TaylorPoly ib = right_inverse_taylor(fam.f, n, p, q.with_radius(fam.rb), -1, 1.0);
        double sup = 1.0, dev = 0.0;
        for (const cplx& z : grid) {
          sup = std::max(sup, std::abs(ia(z)));
          dev = std::max(dev, std::abs(ia(z) - ib(z)));
        }
        if (dev / sup > worst) {
          worst = dev / sup;
          where = std::string(fam.name) + ", n = " + std::to_string(n);
        }
      }
    }
  }
  return {worst <= 1e-9,
          "max scaled disagreement " + detail::fmt(worst) + " (" + where +
              "; tolerance 1e-09)"};
}

// 3. Transform-reconstruct round trip on random polynomials, with the
// quadrature error shrinking at least tenfold per node doubling until it
// reaches the rounding floor.
Outcome c03_polya_round_trip() {
  std::mt19937 rng(20260817u);
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  const int degrees[10] = {20, 18, 15, 12, 10, 8, 6, 5, 4, 3};
  QuadratureSpec q;
  q.radius = 10.0;
  q.initial_nodes = 16;
  q.tol = 1e-12;
  const auto grid = polar_grid(1.0);
  double worst_rel = 0.0;
  bool drops_ok = true;
  std::string drop_note;
  for (int d : degrees) {
    std::vector<cplx> cs(static_cast<std::size_t>(d) + 1);
    for (auto& c : cs) c = {coef(rng), coef(rng)};
    if (std::abs(cs.back()) < 0.1) cs.back() += cplx{0.5, 0.5};
    const TaylorPoly p(cs);
    BorelRational br(p);
    for (const cplx& z : grid) {
      auto integrand = [&](cplx t) { return std::exp(z * t) * br(t); };
      const QuadResult qr = contour_integral(integrand, q);
      worst_rel = std::max(worst_rel,
                           std::abs(qr.value - p(z)) / std::max(1.0, std::abs(p(z))));
      const double floor = 1e-11 * std::max(1.0, std::abs(qr.value));
      for (std::size_t i = 0; i + 1 < qr.history.size(); ++i) {
        const double e0 = std::abs(qr.history[i].value - qr.value);
        const double e1 = std::abs(qr.history[i + 1].value - qr.value);
        if (e0 > floor && e1 > floor && e1 > e0 / 10.0 && drops_ok) {
          drops_ok = false;
          drop_note = "; drop " + detail::fmt(e0) + " -> " + detail::fmt(e1) + " at degree " +
                      std::to_string(d) + " under 10x";
        }
      }
    }
  }
  return {worst_rel <= 1e-9 && drops_ok,
          "max relative error " + detail::fmt(worst_rel) + " over 10 polynomials x 26 points" +
              drop_note};
}

// 4. The full five-hypothesis check on the mixed family, plus the claimed
// geometric envelope alpha[n][j], beta[n][j] <= 1.01 * 2^(j-n).
Outcome c04_mixed_family_envelope() {
  const CriterionReport cr =
      check_theorem31(catalog::mixed_5n_9n(), Annulus{1.0 / 15.0, 1.0, 1.0}, 50);
  std::string d = std::string("overall ") + to_string(cr.overall);
  if (!cr.matrices) return {false, d + "; no comparison matrices computed"};
  const BoundMatrices& bm = *cr.matrices;
  long long total = 0, conforming = 0;
  std::string first;
  for (int n = 1; n <= bm.n_max; ++n) {
    for (int j = 0; j < n; ++j) {
      const double cap = 1.01 * std::pow(2.0, j - n);
      const double a = bm.alpha[static_cast<std::size_t>(n)][static_cast<std::size_t>(j)];
      const double b = bm.beta[static_cast<std::size_t>(n)][static_cast<std::size_t>(j)];
      total += 2;
      if (a <= cap)
        ++conforming;
      else if (first.empty())
        first = "alpha[" + std::to_string(n) + "][" + std::to_string(j) + "] = " +
                detail::fmt(a) + " exceeds " + detail::fmt(cap);
      if (b <= cap)
        ++conforming;
      else if (first.empty())
        first = "beta[" + std::to_string(n) + "][" + std::to_string(j) + "] = " +
                detail::fmt(b) + " exceeds " + detail::fmt(cap);
    }
  }
  d += "; " + std::to_string(conforming) + "/" + std::to_string(total) +
       " matrix entries within 1.01*2^(j-n)";
  if (!first.empty()) d += "; " + first;
  return {cr.overall == Verdict::PassNumeric && conforming == total, d};
}

// 5. The shifted-exponential base function: windings, a zero-free annulus,
// and the scalar-ratio route with c_n = log(n+1).
Outcome c05_base_function_route() {
  const FunctionExpr base = catalog::z_plus_exp_ninth();
  const WindingResult w_in = winding_number(base, 1, 0.5);
  const WindingResult w_out = winding_number(base, 1, 2.0);
  const ZeroFreeReport zf = annulus_zero_free(base, 1, 1.0, 2.0);
  const Theorem32Report tr =
      check_theorem32(base, SeqSpec::log_shift(), 80, std::make_pair(0.5, 2.0));
  const double g = tr.stats.gamma_estimate, dl = tr.stats.delta_estimate;
  const bool pass = w_in.value == 1 && w_out.value == 1 &&
                    zf.verdict == Verdict::PassNumeric &&
                    tr.overall == Verdict::PassNumeric && std::abs(g - 1.0) <= 0.01 &&
                    std::abs(dl - 1.0) <= 0.01;
  return {pass, "windings " + std::to_string(w_in.value) + "/" + std::to_string(w_out.value) +
                    ", annulus " + to_string(zf.verdict) + ", route " + to_string(tr.overall) +
                    ", gamma " + detail::fmt(g) + ", delta " + detail::fmt(dl)};
}

// 6. The derivative family on A(1/2, 2, 2): row sums near 1.01 and the
// series for the last hypothesis summing to 1.
Outcome c06_derivative_family() {
  const CriterionReport cr =
      check_theorem31(catalog::derivative_powers(), Annulus{0.5, 2.0, 2.0}, 50);
  if (!cr.matrices || !cr.e_series)
    return {false, std::string("overall ") + to_string(cr.overall) + "; missing sections"};
  const double sup_alpha = cr.matrices->sup_alpha;
  const double partial = cr.e_series->partial_sums.back();
  const bool pass = cr.overall == Verdict::PassNumeric && sup_alpha >= 0.95 &&
                    sup_alpha <= 1.05 && std::abs(partial - 1.0) <= 1e-3;
  return {pass, std::string("overall ") + to_string(cr.overall) + ", sup-alpha " +
                    detail::fmt(sup_alpha) + ", series partial " + detail::fmt(partial)};
}

// 7. Negative controls: a series circle that forces divergence, and
// factorial scalars whose ratio sups grow without bound.
Outcome c07_negative_controls() {
  const CriterionReport bad =
      check_theorem31(catalog::derivative_powers(), Annulus{0.5, 2.0, 0.5}, 40);
  const bool e_fails = bad.e.verdict == Verdict::Fail && !bad.e.witness.empty() &&
                       bad.overall == Verdict::Fail;
  std::vector<cplx> fact;
  double f = 1.0;
  for (int n = 1; n <= 80; ++n) {
    f *= n;
    fact.emplace_back(f, 0.0);
  }
  const Theorem32Report tr = check_theorem32(FunctionExpr::z(), SeqSpec::list(fact), 60);
  const bool fact_bad =
      tr.stats.delta_unbounded_evidence && tr.overall != Verdict::PassNumeric;
  return {e_fails && fact_bad,
          std::string("(e) ") + to_string(bad.e.verdict) +
              (e_fails ? " with divergence witness" : " without witness") +
              "; factorial route " + to_string(tr.overall) +
              (tr.stats.delta_unbounded_evidence ? " with" : " WITHOUT") +
              " unbounded-ratio evidence"};
}

// 8. Winding numbers against the argument principle on random polynomials
// with known roots kept clear of the contour.
Outcome c08_argument_principle() {
  std::mt19937 rng(424243u);
  std::uniform_real_distribution<double> rad(0.1, 2.5), ang(0.0, kTwoPi);
  std::uniform_int_distribution<int> degd(1, 6);
  int ok = 0;
  std::string bad;
  for (int t = 0; t < 200; ++t) {
    const int d = degd(rng);
    std::vector<cplx> roots;
    int inside = 0;
    for (int i = 0; i < d; ++i) {
      double m = rad(rng);
      while (std::abs(m - 1.0) < 0.05) m = rad(rng);
      if (m < 1.0) ++inside;
      roots.push_back(std::polar(m, ang(rng)));
    }
    std::vector<cplx> cs{cplx{1.0, 0.0}};
    for (const cplx& r : roots) {
      std::vector<cplx> next(cs.size() + 1, cplx{0.0, 0.0});
      for (std::size_t k = 0; k < cs.size(); ++k) {
        next[k] += cs[k] * (-r);
        next[k + 1] += cs[k];
      }
      cs = std::move(next);
    }
    FunctionExpr expr = FunctionExpr::constant(cs[0]);
    for (std::size_t k = 1; k < cs.size(); ++k)
      expr = FunctionExpr::add(
          expr, FunctionExpr::mul(FunctionExpr::constant(cs[k]),
                                  FunctionExpr::pow(FunctionExpr::z(),
                                                    IntAffine{0, static_cast<int>(k)})));
    const WindingResult w = winding_number(expr, 1, 1.0);
    if (w.value == inside)
      ++ok;
    else if (bad.empty())
      bad = "; trial " + std::to_string(t) + " got " + std::to_string(w.value) +
            " expected " + std::to_string(inside);
  }
  return {ok == 200, std::to_string(ok) + "/200 winding counts equal the enclosed root count" + bad};
}

// 9. Every ledger partial sum across the configured families stays within
// 5% slack of its analytic majorant, whatever the verdict.
Outcome c09_majorant_inequalities() {
  struct Fx {
    const char* name;
    FunctionExpr f;
    Annulus ann;
  };
  const std::vector<Fx> fixtures = {
      {"derivative powers", catalog::derivative_powers(), Annulus{0.5, 2.0, 2.0}},
      {"mixed", catalog::mixed_5n_9n(), Annulus{1.0 / 15.0, 1.0, 1.0}},
      {"scaled shift", catalog::scaled_shift_powers(), Annulus{0.5, 2.0, 2.0}},
      {"derivative powers, tight circles", catalog::derivative_powers(),
       Annulus{1.0, 1.0, 0.5}},
  };
  LedgerOptions opts;
  opts.n_max = 40;
  opts.k_max = 20;
  opts.disk_bound = 1.0;
  const auto targets = ExperimentConfig::default_targets();
  const char* conds[3] = {"i", "ii", "iii"};
  long long checked = 0, violations = 0, refused = 0;
  std::string first, refusal;
  for (const Fx& fx : fixtures) {
    for (const TaylorPoly& p : targets) {
      for (int c = 0; c < 3; ++c) {
        try {
          const ConvergenceLedger led =
              c == 0   ? verify_condition_i(fx.f, p, fx.ann.r1, opts)
              : c == 1 ? verify_condition_ii(fx.f, p, fx.ann.r2, opts)
                       : verify_condition_iii(fx.f, p, fx.ann.r3, opts);
          for (double ps : led.partial_sums) {
            ++checked;
            if (ps > 1.05 * led.analytic_bound) {
              ++violations;
              if (first.empty())
                first = "; (" + led.condition + ") on " + fx.name + ": " + detail::fmt(ps) +
                        " above " + detail::fmt(led.analytic_bound);
            }
          }
        } catch (const NearZeroDivisorError& e) {
          // the divisor pre-flight refuses series circles where 1/Phi_n is
          // numerically meaningless; no partial sum exists past that point
          ++refused;
          if (refusal.empty())
            refusal = std::string("; (") + conds[c] + ") on " + fx.name +
                      " refused at the divisor floor: " + e.what();
        }
      }
    }
  }
  std::string d = std::to_string(checked) + " partial sums checked, " +
                  std::to_string(violations) + " above the 5% slack line" + first;
  if (refused > 0) d += "; " + std::to_string(refused) + " ledger(s) refused" + refusal;
  return {violations == 0 && checked > 0, d};
}

// 10. Reports are byte-identical across repeated runs and thread counts,
// apart from the timing object.
Outcome c10_determinism() {
  ExperimentConfig cfg;
  cfg.label = "determinism";
  cfg.sequence = catalog::derivative_powers();
  cfg.annulus = Annulus{0.5, 2.0, 2.0};
  cfg.n_max = 12;
  setenv("ENTIREOPS_THREADS", "1", 1);
  const RunReport a = run_command("check", cfg);
  setenv("ENTIREOPS_THREADS", "4", 1);
  const RunReport b = run_command("check", cfg);
  unsetenv("ENTIREOPS_THREADS");
  report_json da = a.doc, db = b.doc;
  da.erase("timing");
  db.erase("timing");
  const bool same_doc = da.dump() == db.dump();
  const bool same_csv = a.csv_files == b.csv_files;
  return {same_doc && same_csv && a.exit_code == 0,
          std::string("report ") + (same_doc ? "identical" : "DIFFERS") + ", csv " +
              (same_csv ? "identical" : "DIFFERS") + " across 1 and 4 threads"};
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    bool expected_pass;
    Outcome (*fn)();
    double budget_sec;
  };
  const std::vector<Criterion> criteria = {
      {"01 right-inverse identity", true, c01_right_inverse_identity, 60},
      {"02 contour-radius invariance", true, c02_radius_invariance, 30},
      {"03 transform round trip", true, c03_polya_round_trip, 10},
      {"04 mixed family + geometric envelope", false, c04_mixed_family_envelope, 120},
      {"05 shifted-exponential route", true, c05_base_function_route, 60},
      {"06 derivative family check", true, c06_derivative_family, 30},
      {"07 negative controls", true, c07_negative_controls, 10},
      {"08 argument-principle oracle", true, c08_argument_principle, 10},
      {"09 majorant inequalities", true, c09_majorant_inequalities, 120},
      {"10 report determinism", true, c10_determinism, 0},
  };
  int mismatched = 0;
  for (const Criterion& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.fn();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    bool pass = o.pass;
    std::string note = o.detail;
    if (c.budget_sec > 0 && secs > c.budget_sec) {
      pass = false;
      note += "; over the " + detail::fmt(c.budget_sec) + "s budget";
    }
    std::printf("[%s] %-40s %s (%.1fs)\n", pass ? "PASS" : "FAIL", c.name, note.c_str(),
                secs);
    if (pass != c.expected_pass) {
      ++mismatched;
      std::printf("       UNEXPECTED: this criterion was expected to %s\n",
                  c.expected_pass ? "pass" : "fail");
    } else if (!c.expected_pass) {
      std::printf("       expected failure: the envelope claim is documented as unattained\n");
    }
  }
  std::printf("acceptance: %zu/%zu criteria matched the expected outcome\n",
              criteria.size() - static_cast<std::size_t>(mismatched), criteria.size());
  return mismatched == 0 ? 0 : 1;
}

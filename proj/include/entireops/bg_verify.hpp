#pragma once

// Convergence ledgers for the three series hypotheses of the transitivity
// criterion, the two-sided identity check T_n(S_n P) = P, orbit sampling,
// and hitting-density estimation.  A ledger records directly computed terms
// next to the analytic majorant they must respect: every partial sum has to
// stay below the majorant with 5% slack, and a PASS additionally needs the
// tail to be numerically Cauchy.

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "entireops/borel.hpp"
#include "entireops/circle.hpp"
#include "entireops/common.hpp"
#include "entireops/criterion.hpp"
#include "entireops/function_expr.hpp"
#include "entireops/operators.hpp"
#include "entireops/quadrature.hpp"
#include "entireops/taylor_poly.hpp"

namespace entireops {

// Polar sampling grid for sups over the closed disk |z| <= radius.
inline std::vector<cplx> disk_grid(double radius, int rings = 8, int angles = 64) {
  if (radius < 0.0) throw std::invalid_argument("disk radius must be >= 0");
  std::vector<cplx> g;
  g.reserve(1 + static_cast<std::size_t>(rings) * static_cast<std::size_t>(angles));
  g.emplace_back(0.0, 0.0);
  for (int r = 1; r <= rings; ++r) {
    const double rr = radius * static_cast<double>(r) / rings;
    for (int a = 0; a < angles; ++a)
      g.push_back(std::polar(rr, kTwoPi * static_cast<double>(a) / angles));
  }
  return g;
}

struct LedgerOptions {
  int n_max = 40;
  int k_max = 20;
  double disk_bound = 1.0;  // sups are taken over the closed disk |z| <= disk_bound
  QuadratureSpec quad;      // radius is replaced by each ledger's contour
  int matrix_nodes = 2048;
  double cauchy_tol = 1e-6;
  double slack = 1.05;
};

struct ConvergenceLedger {
  std::string condition;  // "i", "ii" or "iii"
  double contour_radius = 0.0;
  double disk_radius = 0.0;
  int n_max = 0;
  int k_max = 0;
  std::vector<double> terms;
  std::vector<double> partial_sums;
  double analytic_bound = 0.0;
  Verdict verdict = Verdict::Inconclusive;
  std::string note;
};

namespace detail {

// Grid sup of |p| plus its certified truncation tail.  An infinite tail
// (non-converged quadrature) contributes nothing but clears the flag.
inline double certified_disk_sup(const TaylorPoly& p, const std::vector<cplx>& grid,
                                 bool& tail_certified) {
  double s = 0.0;
  for (const cplx& z : grid) s = std::max(s, std::abs(p(z)));
  if (std::isfinite(p.tail_bound())) return s + p.tail_bound();
  tail_certified = false;
  return s;
}

inline void close_ledger(ConvergenceLedger& led, bool needs_cauchy, bool tail_certified,
                         const LedgerOptions& opts) {
  const double cap = opts.slack * led.analytic_bound;
  for (std::size_t i = 0; i < led.partial_sums.size(); ++i) {
    if (led.partial_sums[i] > cap) {
      led.verdict = Verdict::Fail;
      led.note = "partial sum " + fmt(led.partial_sums[i]) + " at entry " +
                 std::to_string(i + 1) + " exceeds the majorant " +
                 fmt(led.analytic_bound) + " with 5% slack";
      return;
    }
  }
  if (!tail_certified) {
    led.verdict = Verdict::Inconclusive;
    led.note = "a term carries an uncertified series tail (quadrature did not converge)";
    return;
  }
  if (needs_cauchy) {
    const std::size_t n = led.partial_sums.size();
    if (n < 8) {
      led.verdict = Verdict::Inconclusive;
      led.note = "range too short to certify a Cauchy tail";
      return;
    }
    const double gap = led.partial_sums[n - 1] - led.partial_sums[(3 * n) / 4 - 1];
    if (!(gap < opts.cauchy_tol)) {
      led.verdict = Verdict::Inconclusive;
      led.note = "tail gap " + fmt(gap) + " over the last quarter of the range is not below " +
                 fmt(opts.cauchy_tol);
      return;
    }
  }
  led.verdict = Verdict::PassNumeric;
}

// sum over n = 1..n_max of 1 / min_{|t| = radius} |Phi_n|, each minimum
// certified by the cancellation floor.
inline double reciprocal_min_sum(const FunctionExpr& f, double radius, int n_max,
                                 int nodes = 4096) {
  double acc = 0.0;
  for (int n = 1; n <= n_max; ++n) {
    auto lm = [&](double th) {
      const LogComplex v = evaluate_log(f, n, std::polar(radius, th));
      if (v.lmag == -std::numeric_limits<double>::infinity() ||
          v.add_headroom < headroom_floor())
        throw ZeroOnContourError("index " + std::to_string(n) +
                                 ": no certified minimum on |t| = " + fmt(radius));
      return v.lmag;
    };
    acc += 1.0 / circle_extrema_log(lm, nodes).min_modulus();
  }
  return acc;
}

}  // namespace detail

// Backward sums: for each k the finite sum over n = 1..k of the sup of
// |T_k(S_{k-n} P)| on the disk.  The inner-circle comparison constants
// majorize every one of those sums at once, so the invariant is per entry
// and no Cauchy tail is involved.
inline ConvergenceLedger verify_condition_i(const FunctionExpr& f, const TaylorPoly& p,
                                            double r1, const LedgerOptions& opts = {}) {
  if (opts.k_max < 1) throw std::invalid_argument("need k_max >= 1");
  ConvergenceLedger led;
  led.condition = "i";
  led.contour_radius = r1;
  led.disk_radius = opts.disk_bound;
  led.n_max = opts.n_max;
  led.k_max = opts.k_max;
  const QuadratureSpec q = opts.quad.with_radius(r1);
  const std::vector<cplx> grid = disk_grid(opts.disk_bound);
  const double sup_bp = BorelRational(p).max_on_circle(r1);
  const BoundMatrices bm = compute_bound_matrices(f, r1, r1, opts.k_max, opts.matrix_nodes);
  double sup_rows = 0.0;
  for (int k = 1; k <= opts.k_max; ++k)
    sup_rows = std::max(sup_rows, bm.alpha_row_sums[static_cast<std::size_t>(k)]);
  led.analytic_bound = r1 * std::exp(opts.disk_bound * r1) * sup_bp * sup_rows;
  bool tail_certified = true;
  for (int k = 1; k <= opts.k_max; ++k) {
    double direct = 0.0;
    for (int n = 1; n <= k; ++n) {
      const TaylorPoly t = transfer_taylor(f, k, k - n, p, q, -1, opts.disk_bound);
      direct += detail::certified_disk_sup(t, grid, tail_certified);
    }
    led.terms.push_back(direct);
    led.partial_sums.push_back(direct);
  }
  detail::close_ledger(led, false, tail_certified, opts);
  return led;
}

// Forward series: term n is the worst case over k <= k_max of the sup of
// |T_k(S_{n+k} P)| on the disk; the series over n must converge uniformly
// in k, majorized through the outer-circle comparison constants.
inline ConvergenceLedger verify_condition_ii(const FunctionExpr& f, const TaylorPoly& p,
                                             double r2, const LedgerOptions& opts = {}) {
  if (opts.n_max < 1 || opts.k_max < 0)
    throw std::invalid_argument("need n_max >= 1 and k_max >= 0");
  ConvergenceLedger led;
  led.condition = "ii";
  led.contour_radius = r2;
  led.disk_radius = opts.disk_bound;
  led.n_max = opts.n_max;
  led.k_max = opts.k_max;
  const QuadratureSpec q = opts.quad.with_radius(r2);
  const std::vector<cplx> grid = disk_grid(opts.disk_bound);
  const double sup_bp = BorelRational(p).max_on_circle(r2);
  const BoundMatrices bm =
      compute_bound_matrices(f, r2, r2, opts.n_max + opts.k_max, opts.matrix_nodes);
  double majorant_sum = 0.0;
  for (int n = 1; n <= opts.n_max; ++n) {
    double worst = 0.0;
    for (int k = 0; k <= opts.k_max; ++k)
      worst = std::max(worst, bm.beta[static_cast<std::size_t>(n + k)][static_cast<std::size_t>(k)]);
    majorant_sum += worst;
  }
  led.analytic_bound = r2 * std::exp(opts.disk_bound * r2) * sup_bp * majorant_sum;
  bool tail_certified = true;
  double acc = 0.0;
  for (int n = 1; n <= opts.n_max; ++n) {
    double worst = 0.0;
    for (int k = 0; k <= opts.k_max; ++k) {
      const TaylorPoly t = transfer_taylor(f, k, n + k, p, q, -1, opts.disk_bound);
      worst = std::max(worst, detail::certified_disk_sup(t, grid, tail_certified));
    }
    led.terms.push_back(worst);
    acc += worst;
    led.partial_sums.push_back(acc);
  }
  detail::close_ledger(led, true, tail_certified, opts);
  return led;
}

// Inverse series: term n is the sup of |S_n P| on the disk; convergence is
// majorized by the reciprocal minima of the family on the series circle.
inline ConvergenceLedger verify_condition_iii(const FunctionExpr& f, const TaylorPoly& p,
                                              double r3, const LedgerOptions& opts = {}) {
  if (opts.n_max < 1) throw std::invalid_argument("need n_max >= 1");
  ConvergenceLedger led;
  led.condition = "iii";
  led.contour_radius = r3;
  led.disk_radius = opts.disk_bound;
  led.n_max = opts.n_max;
  led.k_max = opts.k_max;
  const QuadratureSpec q = opts.quad.with_radius(r3);
  const std::vector<cplx> grid = disk_grid(opts.disk_bound);
  const double sup_bp = BorelRational(p).max_on_circle(r3);
  led.analytic_bound = r3 * std::exp(opts.disk_bound * r3) * sup_bp *
                       detail::reciprocal_min_sum(f, r3, opts.n_max);
  bool tail_certified = true;
  double acc = 0.0;
  for (int n = 1; n <= opts.n_max; ++n) {
    const TaylorPoly t = right_inverse_taylor(f, n, p, q, -1, opts.disk_bound);
    const double term = detail::certified_disk_sup(t, grid, tail_certified);
    led.terms.push_back(term);
    acc += term;
    led.partial_sums.push_back(acc);
  }
  detail::close_ledger(led, true, tail_certified, opts);
  return led;
}

// ---- Two-sided identity -----------------------------------------------------

struct IdentityCheck {
  Verdict verdict = Verdict::Inconclusive;
  double max_deviation = 0.0;
  double tolerance = 1e-7;
  std::string witness;
};

// T_n(S_n P) = P, checked two ways at every grid point: once through the
// combined transfer contour with equal indices, once by applying the
// operator to the reconstructed inverse series.
inline IdentityCheck verify_condition_iv(const FunctionExpr& f, const TaylorPoly& p,
                                         const std::vector<int>& n_values,
                                         double disk_bound, const QuadratureSpec& quad,
                                         double tolerance = 1e-7) {
  IdentityCheck chk;
  chk.tolerance = tolerance;
  std::vector<cplx> zs;
  zs.emplace_back(0.0, 0.0);
  for (int r = 1; r <= 5; ++r)
    for (int a = 0; a < 5; ++a)
      zs.push_back(std::polar(disk_bound * static_cast<double>(r) / 5.0,
                              kTwoPi * static_cast<double>(a) / 5.0));
  for (int n : n_values) {
    if (n < 0) throw std::invalid_argument("family index must be >= 0");
    const TaylorPoly inv = right_inverse_taylor(f, n, p, quad, -1, disk_bound);
    const TaylorPoly back = apply_operator(f, n, inv);
    for (const cplx& z : zs) {
      const double d_transfer = std::abs(transfer_apply(f, n, n, p, z, quad) - p(z));
      const double d_roundtrip = std::abs(back(z) - p(z));
      const double d = std::max(d_transfer, d_roundtrip);
      if (d > chk.max_deviation) {
        chk.max_deviation = d;
        chk.witness = "index " + std::to_string(n) + " at z = " + detail::fmt(z) +
                      " (transfer " + detail::fmt(d_transfer) + ", roundtrip " +
                      detail::fmt(d_roundtrip) + ")";
      }
    }
  }
  chk.verdict = chk.max_deviation <= tolerance ? Verdict::PassNumeric : Verdict::Fail;
  return chk;
}

// ---- Orbits and hitting density ---------------------------------------------

struct OrbitSample {
  int index = 0;
  std::vector<cplx> values;
  double sup = 0.0;
};

// Image of one family member applied to a sample, evaluated on a grid.
inline OrbitSample orbit_apply(const FunctionExpr& f, int n, const TaylorPoly& p,
                               const std::vector<cplx>& grid) {
  OrbitSample s;
  s.index = n;
  const TaylorPoly img = apply_operator(f, n, p);
  s.values.reserve(grid.size());
  for (const cplx& z : grid) {
    s.values.push_back(img(z));
    s.sup = std::max(s.sup, std::abs(s.values.back()));
  }
  return s;
}

struct HittingDensity {
  double eps = 0.0;
  double disk_bound = 0.0;
  int n_max = 0;
  std::vector<int> hits;        // indices n with sup |T_n p - target| < eps on the disk
  std::vector<double> density;  // density[m-1] = #(hits <= m) / m
  double liminf_estimate = 0.0; // min density over the trailing half of the range
};

// Density of indices whose orbit image stays eps-close to the target on the
// sampling disk.  The trailing-half minimum is the reported lower estimate.
inline HittingDensity hitting_density(const FunctionExpr& f, const TaylorPoly& p,
                                      const TaylorPoly& target, double eps,
                                      double disk_bound, int n_max) {
  if (n_max < 2) throw std::invalid_argument("need n_max >= 2");
  if (!(eps > 0.0)) throw std::invalid_argument("eps must be positive");
  HittingDensity h;
  h.eps = eps;
  h.disk_bound = disk_bound;
  h.n_max = n_max;
  const std::vector<cplx> grid = disk_grid(disk_bound);
  int count = 0;
  for (int n = 1; n <= n_max; ++n) {
    const TaylorPoly img = apply_operator(f, n, p);
    double dev = 0.0;
    for (const cplx& z : grid) dev = std::max(dev, std::abs(img(z) - target(z)));
    if (dev < eps) {
      h.hits.push_back(n);
      ++count;
    }
    h.density.push_back(static_cast<double>(count) / n);
  }
  double lim = std::numeric_limits<double>::infinity();
  for (int m = n_max / 2 + 1; m <= n_max; ++m)
    lim = std::min(lim, h.density[static_cast<std::size_t>(m) - 1]);
  h.liminf_estimate = lim;
  return h;
}

}  // namespace entireops

#pragma once

// Verification of the five operator-family hypotheses: zero-free annulus
// (argument-principle winding counts), the two families of comparison
// constants on the inner and outer circles, uniform boundedness of their
// sums, and convergence of the reciprocal-minimum series.  Everything here
// reports three-valued verdicts: PASS_NUMERIC for evidence on the computed
// range with decaying tails, FAIL only with a concrete re-checkable
// witness, INCONCLUSIVE otherwise.

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "entireops/circle.hpp"
#include "entireops/common.hpp"
#include "entireops/function_expr.hpp"
#include "entireops/operators.hpp"

namespace entireops {

struct Annulus {
  double r1 = 0.0;
  double r2 = 0.0;
  double r3 = 0.0;

  double rho() const { return std::min(r1, std::min(r2, r3)); }
  double sigma() const { return std::max(r1, std::max(r2, r3)); }
  bool contains(double r) const { return rho() <= r && r <= sigma(); }

  void validate() const {
    if (!(r1 > 0.0) || !(r2 > 0.0) || !(r3 > 0.0))
      throw ValidationError({"annulus radii must all be positive"});
  }
};

// ---- Winding numbers --------------------------------------------------------

struct WindingOptions {
  int initial_nodes = 256;
  int max_nodes = 1 << 17;
};

struct WindingResult {
  long long value = 0;
  bool reliable = true;
  double min_headroom = std::numeric_limits<double>::infinity();
  std::string note;
};

namespace detail {

inline double headroom_floor() { return std::log(kNearZeroFloor); }

// Phase tracking around the circle for one additive subtree.  Steps must
// stay under pi/2 (else the node count doubles); the summed increments over
// the closed loop must land within 0.01 of an integer multiple of 2*pi.
// Near-total cancellation at any sample aborts: a zero of the subtree is on
// or next to the contour and no count can be certified.
inline WindingResult track_phase_winding(const FunctionExpr::Node& node, int n,
                                         double radius, const WindingOptions& opts) {
  WindingResult best;
  best.reliable = false;
  for (int m = opts.initial_nodes; m <= opts.max_nodes; m *= 2) {
    double total = 0.0;
    double minhr = std::numeric_limits<double>::infinity();
    double prev_phase = 0.0;
    bool steps_ok = true;
    for (int j = 0; j <= m; ++j) {
      const double th = kTwoPi * static_cast<double>(j % m) / static_cast<double>(m);
      const LogComplex v = eval_node_log(node, n, std::polar(radius, th));
      if (v.lmag == -std::numeric_limits<double>::infinity())
        throw ZeroOnContourError("zero sampled on |t| = " + std::to_string(radius) +
                                 " at angle " + std::to_string(th));
      if (v.add_headroom < headroom_floor())
        throw ZeroOnContourError("cancellation below the certification floor on |t| = " +
                                 std::to_string(radius) + " at angle " + std::to_string(th) +
                                 " (headroom exp(" + std::to_string(v.add_headroom) + "))");
      minhr = std::min(minhr, v.add_headroom);
      if (j > 0) {
        const double step = std::remainder(v.phase - prev_phase, kTwoPi);
        if (std::abs(step) >= kPi / 2.0) {
          steps_ok = false;
          break;
        }
        total += step;
      }
      prev_phase = v.phase;
    }
    if (!steps_ok) continue;
    const double turns = total / kTwoPi;
    const double nearest = std::round(turns);
    best.value = static_cast<long long>(nearest);
    best.min_headroom = minhr;
    if (std::abs(turns - nearest) <= 0.01) {
      best.reliable = true;
      return best;
    }
    best.note = "phase total " + std::to_string(turns) + " turns is not near an integer";
  }
  if (best.note.empty()) best.note = "phase steps stayed too large through the node budget";
  return best;
}

// Winding decomposes over the expression structure: products add counts,
// powers scale them, exponentials and nonzero scalars contribute none.
// Only additive subtrees need numeric phase tracking.
inline WindingResult winding_node(const FunctionExpr::Node& node, int n, double radius,
                                  const WindingOptions& opts) {
  using Kind = FunctionExpr::Kind;
  switch (node.kind) {
    case Kind::Z:
      return {1, true, std::numeric_limits<double>::infinity(), ""};
    case Kind::Const:
      if (node.value == cplx{0.0, 0.0})
        throw ZeroOnContourError("a zero constant factor annihilates the family");
      return {0, true, std::numeric_limits<double>::infinity(), ""};
    case Kind::Seq:
      if (node.seq.at(n) == cplx{0.0, 0.0})
        throw ZeroOnContourError("scalar weight vanishes at index " + std::to_string(n));
      return {0, true, std::numeric_limits<double>::infinity(), ""};
    case Kind::Exp:
      return {0, true, std::numeric_limits<double>::infinity(), ""};
    case Kind::Mul: {
      WindingResult l = winding_node(*node.left, n, radius, opts);
      WindingResult r = winding_node(*node.right, n, radius, opts);
      return {l.value + r.value, l.reliable && r.reliable,
              std::min(l.min_headroom, r.min_headroom),
              l.note.empty() ? r.note : l.note};
    }
    case Kind::Pow: {
      const long long e = node.exponent.at(n);
      if (e < 0)
        throw std::invalid_argument("pow exponent is negative at index " + std::to_string(n));
      if (e == 0) return {0, true, std::numeric_limits<double>::infinity(), ""};
      WindingResult b = winding_node(*node.left, n, radius, opts);
      b.value *= e;
      return b;
    }
    case Kind::Add:
      return track_phase_winding(node, n, radius, opts);
  }
  return {};
}

// Least-squares slope of log(values) against the index over [lo, hi]; the
// returned number is e^slope, the fitted one-step decay ratio.  Returns
// +inf when the fit is impossible or non-decaying data pushes slope >= 0.
inline double fit_decay_ratio(const std::vector<double>& values, std::size_t lo,
                              std::size_t hi) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::size_t count = 0;
  for (std::size_t i = lo; i <= hi && i < values.size(); ++i) {
    if (!(values[i] > 1e-300) || !std::isfinite(values[i])) continue;
    const double x = static_cast<double>(i);
    const double y = std::log(values[i]);
    sx += x; sy += y; sxx += x * x; sxy += x * y;
    ++count;
  }
  if (count < 3) return std::numeric_limits<double>::infinity();
  const double c = static_cast<double>(count);
  const double denom = c * sxx - sx * sx;
  if (denom == 0.0) return std::numeric_limits<double>::infinity();
  return std::exp((c * sxy - sx * sy) / denom);
}

}  // namespace detail

// Zeros of Phi_n enclosed by |t| = radius, by the argument principle.
inline WindingResult winding_number(const FunctionExpr& f, int n, double radius,
                                    const WindingOptions& opts = {}) {
  if (radius <= 0.0) throw std::invalid_argument("winding radius must be positive");
  if (n < 0) throw std::invalid_argument("family index must be >= 0");
  if (n == 0) return {0, true, std::numeric_limits<double>::infinity(), ""};
  return detail::winding_node(f.root(), n, radius, opts);
}

// ---- Zero-free annulus ------------------------------------------------------

struct ZeroFreeOptions {
  WindingOptions winding;
  int intermediate_circles = 8;
  int circle_nodes = 512;
};

struct ZeroFreeReport {
  Verdict verdict = Verdict::Inconclusive;
  double rho = 0.0;
  double sigma = 0.0;
  int n_max = 0;
  std::vector<long long> winding_inner;  // entry i is family index i+1
  std::vector<long long> winding_outer;
  std::string witness;
};

// No zeros in rho <= |t| <= sigma for n = 1..n_max: equal winding counts on
// the boundary circles (no zeros strictly between), with cancellation
// screens on the boundaries and on interior circles (no zeros on or next to
// the sampled circles themselves).
inline ZeroFreeReport annulus_zero_free(const FunctionExpr& f, int n_max, double rho,
                                        double sigma, const ZeroFreeOptions& opts = {}) {
  if (!(0.0 < rho && rho <= sigma)) throw std::invalid_argument("need 0 < rho <= sigma");
  ZeroFreeReport rep;
  rep.rho = rho;
  rep.sigma = sigma;
  rep.n_max = n_max;
  rep.verdict = Verdict::PassNumeric;
  for (int n = 1; n <= n_max; ++n) {
    WindingResult win, wout;
    try {
      win = winding_number(f, n, rho, opts.winding);
      wout = winding_number(f, n, sigma, opts.winding);
    } catch (const ZeroOnContourError& e) {
      rep.verdict = Verdict::Inconclusive;
      rep.witness = "index " + std::to_string(n) + ": " + e.what();
      return rep;
    }
    rep.winding_inner.push_back(win.value);
    rep.winding_outer.push_back(wout.value);
    if (!win.reliable || !wout.reliable) {
      rep.verdict = Verdict::Inconclusive;
      rep.witness = "index " + std::to_string(n) + ": winding unreliable (" +
                    (win.reliable ? wout.note : win.note) + ")";
      return rep;
    }
    if (win.value != wout.value) {
      rep.verdict = Verdict::Fail;
      rep.witness = "index " + std::to_string(n) + ": " +
                    std::to_string(wout.value - win.value) +
                    " zero(s) between |t| = " + std::to_string(rho) + " and " +
                    std::to_string(sigma) + " (winding " + std::to_string(win.value) +
                    " inner vs " + std::to_string(wout.value) + " outer)";
      return rep;
    }
  }
  // Interior screens: sample geometrically spaced circles and demand the
  // same cancellation floor the winding pass used.
  const int rings = opts.intermediate_circles;
  for (int i = 1; i <= rings && sigma > rho; ++i) {
    const double r = rho * std::pow(sigma / rho, static_cast<double>(i) /
                                                     static_cast<double>(rings + 1));
    for (int n = 1; n <= n_max; ++n) {
      for (int j = 0; j < opts.circle_nodes; ++j) {
        const double th = kTwoPi * static_cast<double>(j) / opts.circle_nodes;
        const LogComplex v = evaluate_log(f, n, std::polar(r, th));
        if (v.lmag == -std::numeric_limits<double>::infinity() ||
            v.add_headroom < detail::headroom_floor()) {
          rep.verdict = Verdict::Inconclusive;
          rep.witness = "index " + std::to_string(n) + ": cancellation floor tripped on the" +
                        " interior circle |t| = " + std::to_string(r) + " at angle " +
                        std::to_string(th);
          return rep;
        }
      }
    }
  }
  return rep;
}

// ---- Comparison-constant matrices -------------------------------------------

// alpha[n][j]: certified sampled sup of |Phi_n / Phi_j| on the inner circle,
// n > j >= 0.  beta[n][j]: sup of |Phi_j / Phi_n| on the outer circle.  Both
// carry a 1.01 safety factor over the sharpest sampled ratio.
struct BoundMatrices {
  double r1 = 0.0;
  double r2 = 0.0;
  int n_max = 0;
  std::vector<std::vector<double>> alpha;  // alpha[n] has entries j = 0..n-1
  std::vector<std::vector<double>> beta;
  std::vector<double> alpha_row_sums;      // index n; entry 0 unused (= 0)
  std::vector<double> beta_col_sums;       // index j; sums n = j+1..n_max
  double sup_alpha = 0.0;                  // max row sum
  double sup_beta_from1 = 0.0;             // max column sum over j >= 1
  double sup_beta_from0 = 0.0;             // max column sum over j >= 0
  double tail_ratio_alpha = 0.0;           // worst fitted in-row decay ratio
  double tail_ratio_beta = 0.0;            // worst fitted in-column decay ratio
  double min_headroom = 0.0;
};

namespace detail {

struct LogTable {
  // lmag[n][j]: log |Phi_n| at angle index j on one circle.
  std::vector<std::vector<double>> lmag;
  double min_headroom = std::numeric_limits<double>::infinity();
};

inline LogTable build_log_table(const FunctionExpr& f, int n_max, double radius,
                                int nodes) {
  LogTable t;
  t.lmag.assign(static_cast<std::size_t>(n_max) + 1, std::vector<double>());
  std::vector<double> headrooms(static_cast<std::size_t>(n_max) + 1,
                                std::numeric_limits<double>::infinity());
  parallel_for(static_cast<std::size_t>(n_max) + 1, [&](std::size_t n) {
    std::vector<double> row(static_cast<std::size_t>(nodes));
    double hr = std::numeric_limits<double>::infinity();
    for (int j = 0; j < nodes; ++j) {
      const double th = kTwoPi * static_cast<double>(j) / nodes;
      const LogComplex v = evaluate_log(f, static_cast<int>(n), std::polar(radius, th));
      row[static_cast<std::size_t>(j)] = v.lmag;
      hr = std::min(hr, v.add_headroom);
      if (v.lmag == -std::numeric_limits<double>::infinity() ||
          v.add_headroom < headroom_floor())
        throw ZeroOnContourError("index " + std::to_string(n) + " on |t| = " +
                                 std::to_string(radius) + ": value below the certification" +
                                 " floor at angle " + std::to_string(th));
    }
    t.lmag[n] = std::move(row);
    headrooms[n] = hr;
  });
  for (double h : headrooms) t.min_headroom = std::min(t.min_headroom, h);
  return t;
}

// Sup of exp(lmag_num - lmag_den) over the circle: grid argmax from the
// table, then golden-section sharpening on the continuous angle.
inline double ratio_sup(const FunctionExpr& f, int num, int den, double radius,
                        const std::vector<double>& lnum, const std::vector<double>& lden) {
  const int nodes = static_cast<int>(lnum.size());
  int arg = 0;
  double best = -std::numeric_limits<double>::infinity();
  for (int j = 0; j < nodes; ++j) {
    const double d = lnum[static_cast<std::size_t>(j)] - lden[static_cast<std::size_t>(j)];
    if (d > best) {
      best = d;
      arg = j;
    }
  }
  auto diff = [&](double th) {
    const cplx t = std::polar(radius, th);
    return evaluate_log(f, num, t).lmag - evaluate_log(f, den, t).lmag;
  };
  const double step = kTwoPi / nodes;
  const double refined = golden_refine(diff, step * (arg - 1), step * (arg + 1), true);
  return std::exp(std::max(best, diff(refined)));
}

}  // namespace detail

inline BoundMatrices compute_bound_matrices(const FunctionExpr& f, double r1, double r2,
                                            int n_max, int nodes = 2048) {
  if (n_max < 1) throw std::invalid_argument("need n_max >= 1");
  if (nodes < 64 || (nodes & (nodes - 1)) != 0)
    throw std::invalid_argument("matrix sampling wants a power-of-two node count >= 64");
  BoundMatrices bm;
  bm.r1 = r1;
  bm.r2 = r2;
  bm.n_max = n_max;
  const detail::LogTable inner = detail::build_log_table(f, n_max, r1, nodes);
  const detail::LogTable outer = detail::build_log_table(f, n_max, r2, nodes);
  bm.min_headroom = std::min(inner.min_headroom, outer.min_headroom);

  bm.alpha.assign(static_cast<std::size_t>(n_max) + 1, {});
  bm.beta.assign(static_cast<std::size_t>(n_max) + 1, {});
  parallel_for(static_cast<std::size_t>(n_max) + 1, [&](std::size_t n) {
    if (n == 0) return;
    std::vector<double> arow(n), brow(n);
    for (std::size_t j = 0; j < n; ++j) {
      arow[j] = 1.01 * detail::ratio_sup(f, static_cast<int>(n), static_cast<int>(j), r1,
                                         inner.lmag[n], inner.lmag[j]);
      brow[j] = 1.01 * detail::ratio_sup(f, static_cast<int>(j), static_cast<int>(n), r2,
                                         outer.lmag[j], outer.lmag[n]);
    }
    bm.alpha[n] = std::move(arow);
    bm.beta[n] = std::move(brow);
  });

  bm.alpha_row_sums.assign(static_cast<std::size_t>(n_max) + 1, 0.0);
  for (int n = 1; n <= n_max; ++n) {
    double s = 0.0;
    for (double a : bm.alpha[static_cast<std::size_t>(n)]) s += a;
    bm.alpha_row_sums[static_cast<std::size_t>(n)] = s;
    bm.sup_alpha = std::max(bm.sup_alpha, s);
  }
  bm.beta_col_sums.assign(static_cast<std::size_t>(n_max), 0.0);
  for (int j = 0; j < n_max; ++j) {
    double s = 0.0;
    for (int n = j + 1; n <= n_max; ++n)
      s += bm.beta[static_cast<std::size_t>(n)][static_cast<std::size_t>(j)];
    bm.beta_col_sums[static_cast<std::size_t>(j)] = s;
    bm.sup_beta_from0 = std::max(bm.sup_beta_from0, s);
    if (j >= 1) bm.sup_beta_from1 = std::max(bm.sup_beta_from1, s);
  }

  // In-row (alpha) and in-column (beta) decay, fitted on the far quartile of
  // the separation d = n - j.
  bm.tail_ratio_alpha = 0.0;
  for (int n = 8; n <= n_max; ++n) {
    std::vector<double> by_sep(static_cast<std::size_t>(n) + 1, 0.0);
    for (int j = 0; j < n; ++j)
      by_sep[static_cast<std::size_t>(n - j)] = bm.alpha[static_cast<std::size_t>(n)][static_cast<std::size_t>(j)];
    const double q = detail::fit_decay_ratio(by_sep, (3 * static_cast<std::size_t>(n)) / 4,
                                             static_cast<std::size_t>(n));
    bm.tail_ratio_alpha = std::max(bm.tail_ratio_alpha, q);
  }
  bm.tail_ratio_beta = 0.0;
  for (int j = 0; j + 8 <= n_max; ++j) {
    const std::size_t dmax = static_cast<std::size_t>(n_max - j);
    std::vector<double> by_sep(dmax + 1, 0.0);
    for (int n = j + 1; n <= n_max; ++n)
      by_sep[static_cast<std::size_t>(n - j)] = bm.beta[static_cast<std::size_t>(n)][static_cast<std::size_t>(j)];
    const double q = detail::fit_decay_ratio(by_sep, (3 * dmax) / 4, dmax);
    bm.tail_ratio_beta = std::max(bm.tail_ratio_beta, q);
  }
  return bm;
}

// ---- Condition verdicts -----------------------------------------------------

struct ConditionASummary {
  Verdict verdict = Verdict::Inconclusive;
  double sup_alpha = 0.0;
  double sup_beta_from1 = 0.0;
  double sup_beta_from0 = 0.0;
  double tail_ratio_alpha = 0.0;
  double tail_ratio_beta = 0.0;
  std::string witness;
};

namespace detail {

// Running sup of the alpha row sums over rows <= n.
inline double alpha_sup_prefix(const BoundMatrices& bm, int n) {
  double s = 0.0;
  for (int i = 1; i <= n && i <= bm.n_max; ++i)
    s = std::max(s, bm.alpha_row_sums[static_cast<std::size_t>(i)]);
  return s;
}

// Sup over columns of the beta column sums truncated at row n_hi.
inline double beta_sup_prefix(const BoundMatrices& bm, int n_hi, int j_min) {
  double best = 0.0;
  for (int j = j_min; j < n_hi; ++j) {
    double s = 0.0;
    for (int n = j + 1; n <= n_hi; ++n)
      s += bm.beta[static_cast<std::size_t>(n)][static_cast<std::size_t>(j)];
    best = std::max(best, s);
  }
  return best;
}

}  // namespace detail

// Uniform boundedness of the row sums (inner constants) and column sums
// (outer constants).  PASS needs stabilized sups and in-matrix decay; FAIL
// needs sups that keep growing by >= 1.8x across two dyadic range doublings.
inline ConditionASummary check_condition_a(const BoundMatrices& bm) {
  ConditionASummary s;
  s.sup_alpha = bm.sup_alpha;
  s.sup_beta_from1 = bm.sup_beta_from1;
  s.sup_beta_from0 = bm.sup_beta_from0;
  s.tail_ratio_alpha = bm.tail_ratio_alpha;
  s.tail_ratio_beta = bm.tail_ratio_beta;
  const int n = bm.n_max;
  if (n < 8) {
    s.witness = "range too short to classify";
    return s;
  }
  const double a_full = detail::alpha_sup_prefix(bm, n);
  const double a_half = detail::alpha_sup_prefix(bm, n / 2);
  const double a_quarter = detail::alpha_sup_prefix(bm, n / 4);
  const double b_full = detail::beta_sup_prefix(bm, n, 1);
  const double b_half = detail::beta_sup_prefix(bm, n / 2, 1);
  const double b_quarter = detail::beta_sup_prefix(bm, n / 4, 1);
  const bool alpha_growing = a_full >= 1.8 * a_half && a_half >= 1.8 * a_quarter;
  const bool beta_growing = b_full >= 1.8 * b_half && b_half >= 1.8 * b_quarter;
  if (alpha_growing || beta_growing) {
    s.verdict = Verdict::Fail;
    s.witness = std::string(alpha_growing ? "inner-constant row sums" : "outer-constant column sums") +
                " keep growing: sups " +
                std::to_string(alpha_growing ? a_quarter : b_quarter) + " -> " +
                std::to_string(alpha_growing ? a_half : b_half) + " -> " +
                std::to_string(alpha_growing ? a_full : b_full) +
                " across range doublings";
    return s;
  }
  const double a_early = detail::alpha_sup_prefix(bm, (9 * n) / 10);
  const double b_early = detail::beta_sup_prefix(bm, (9 * n) / 10, 1);
  const bool stable = a_full <= 1.05 * a_early && b_full <= 1.05 * b_early;
  const bool decaying = bm.tail_ratio_alpha < 1.0 && bm.tail_ratio_beta < 1.0;
  if (stable && decaying && std::isfinite(a_full) && std::isfinite(b_full)) {
    s.verdict = Verdict::PassNumeric;
    return s;
  }
  s.witness = !stable ? "sup still moving in the last decile of the range"
                      : "no certified in-matrix decay (fitted ratio >= 1)";
  return s;
}

struct ConditionESeries {
  Verdict verdict = Verdict::Inconclusive;
  double r3 = 0.0;
  std::vector<double> min_modulus;  // entry i is family index i+1
  std::vector<double> terms;        // 1 / min_modulus
  std::vector<double> partial_sums;
  double fitted_ratio = 0.0;
  std::string witness;
};

// Convergence of sum over n of 1 / min_{|t|=R3} |Phi_n(t)|.  PASS on fitted
// geometric decay of the terms; FAIL when the terms stay bounded away from
// zero across two dyadic windows.
inline ConditionESeries check_condition_e(const FunctionExpr& f, double r3, int n_max,
                                          int nodes = 4096) {
  if (r3 <= 0.0) throw std::invalid_argument("series radius must be positive");
  ConditionESeries res;
  res.r3 = r3;
  res.min_modulus.assign(static_cast<std::size_t>(n_max), 0.0);
  parallel_for(static_cast<std::size_t>(n_max), [&](std::size_t i) {
    const int n = static_cast<int>(i) + 1;
    auto lm = [&](double th) {
      const LogComplex v = evaluate_log(f, n, std::polar(r3, th));
      if (v.lmag == -std::numeric_limits<double>::infinity() ||
          v.add_headroom < detail::headroom_floor())
        throw ZeroOnContourError("index " + std::to_string(n) + ": no certified minimum on |t| = " +
                                 std::to_string(r3));
      return v.lmag;
    };
    res.min_modulus[i] = circle_extrema_log(lm, nodes).min_modulus();
  });
  double acc = 0.0;
  for (double m : res.min_modulus) {
    const double term = 1.0 / m;
    res.terms.push_back(term);
    acc += term;
    res.partial_sums.push_back(acc);
  }
  const std::size_t n = res.terms.size();
  if (n < 8) {
    res.witness = "range too short to classify";
    return res;
  }
  res.fitted_ratio = detail::fit_decay_ratio(res.terms, (3 * n) / 4, n - 1);
  auto window_min = [&](std::size_t lo, std::size_t hi) {
    double m = std::numeric_limits<double>::infinity();
    for (std::size_t i = lo; i < hi && i < n; ++i) m = std::min(m, res.terms[i]);
    return m;
  };
  const double m0 = window_min(n / 8, n / 4);
  const double m1 = window_min(n / 4, n / 2);
  const double m2 = window_min(n / 2, n);
  if (m2 > 0.0 && m2 >= 0.999 * m1 && m1 >= 0.999 * m0) {
    res.verdict = Verdict::Fail;
    res.witness = "terms stay bounded below across dyadic windows: mins " +
                  std::to_string(m0) + ", " + std::to_string(m1) + ", " +
                  std::to_string(m2);
    return res;
  }
  if (res.fitted_ratio < 0.95) {
    res.verdict = Verdict::PassNumeric;
    return res;
  }
  res.witness = "fitted term ratio " + std::to_string(res.fitted_ratio) +
                " gives no convergence margin";
  return res;
}

// ---- Orchestration of the five hypotheses -----------------------------------

struct CriterionOptions {
  ZeroFreeOptions zero_free;
  int matrix_nodes = 2048;
  int e_nodes = 4096;
};

struct ConditionEntry {
  Verdict verdict = Verdict::Inconclusive;
  std::string witness;
};

struct CriterionReport {
  Verdict overall = Verdict::Inconclusive;
  ConditionEntry a, b, c, d, e;
  Annulus annulus;
  int n_max = 0;
  ZeroFreeReport zero_free;
  std::optional<BoundMatrices> matrices;
  std::optional<ConditionASummary> a_summary;
  std::optional<ConditionESeries> e_series;
};

// Hypotheses in dependency order: the zero-free annulus (b) gates the
// comparison constants (c), (d), whose existence is by construction once
// the circles are certified; their sums decide (a); the reciprocal-minimum
// series decides (e).
inline CriterionReport check_theorem31(const FunctionExpr& f, const Annulus& ann, int n_max,
                                       const CriterionOptions& opts = {}) {
  ann.validate();
  if (n_max < 1) throw std::invalid_argument("need n_max >= 1");
  CriterionReport rep;
  rep.annulus = ann;
  rep.n_max = n_max;

  rep.zero_free = annulus_zero_free(f, n_max, ann.rho(), ann.sigma(), opts.zero_free);
  rep.b.verdict = rep.zero_free.verdict;
  rep.b.witness = rep.zero_free.witness;
  if (rep.b.verdict != Verdict::PassNumeric) {
    const std::string gated = "not evaluated: the zero-free annulus gate did not pass";
    rep.a.witness = rep.c.witness = rep.d.witness = rep.e.witness = gated;
    rep.overall = combine({rep.a.verdict, rep.b.verdict, rep.c.verdict, rep.d.verdict,
                           rep.e.verdict});
    return rep;
  }

  try {
    rep.matrices = compute_bound_matrices(f, ann.r1, ann.r2, n_max, opts.matrix_nodes);
    rep.c.verdict = Verdict::PassNumeric;
    rep.c.witness = "constants realized as certified sampled ratio sups on |t| = " +
                    std::to_string(ann.r1);
    rep.d.verdict = Verdict::PassNumeric;
    rep.d.witness = "constants realized as certified sampled ratio sups on |t| = " +
                    std::to_string(ann.r2);
    const ConditionASummary a = check_condition_a(*rep.matrices);
    rep.a_summary = a;
    rep.a.verdict = a.verdict;
    rep.a.witness = a.witness;
  } catch (const Error& err) {
    rep.c.witness = rep.d.witness = rep.a.witness = err.what();
  }

  try {
    const ConditionESeries e = check_condition_e(f, ann.r3, n_max, opts.e_nodes);
    rep.e_series = e;
    rep.e.verdict = e.verdict;
    rep.e.witness = e.witness;
  } catch (const Error& err) {
    rep.e.witness = err.what();
  }

  rep.overall = combine({rep.a.verdict, rep.b.verdict, rep.c.verdict, rep.d.verdict,
                         rep.e.verdict});
  return rep;
}

// ---- Scalar-ratio statistics and the specialized route ----------------------

struct RatioStats {
  double gamma_estimate = 0.0;  // trailing-window inf of |c_{n+1} / c_n|
  double delta_estimate = 0.0;  // trailing-window sup
  int window_lo = 0;
  int window_hi = 0;
  bool delta_unbounded_evidence = false;  // sup keeps growing across windows
  bool gamma_vanishing_evidence = false;  // inf keeps collapsing
  bool trend_single_jump = false;         // one jump only: ambiguous
  std::vector<double> ratios;             // |c_{n+1}/c_n| for n = 1..N-1
};

inline RatioStats ratio_stats(const SeqSpec& c, int n_hi) {
  if (n_hi < 8) throw std::invalid_argument("need a ratio window end >= 8");
  RatioStats st;
  for (int n = 1; n + 1 <= n_hi; ++n) {
    const cplx cn = c.at(n);
    const cplx cn1 = c.at(n + 1);
    if (cn == cplx{0.0, 0.0} || cn1 == cplx{0.0, 0.0})
      throw ZeroScalarError("scalar c_" + std::to_string(cn == cplx{0.0, 0.0} ? n : n + 1) +
                            " vanishes; ratios undefined");
    st.ratios.push_back(std::abs(cn1) / std::abs(cn));
  }
  const int count = static_cast<int>(st.ratios.size());
  st.window_lo = count / 2;  // ratios index n-1; window covers the last half
  st.window_hi = count - 1;
  double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
  for (int i = st.window_lo; i <= st.window_hi; ++i) {
    lo = std::min(lo, st.ratios[static_cast<std::size_t>(i)]);
    hi = std::max(hi, st.ratios[static_cast<std::size_t>(i)]);
  }
  st.gamma_estimate = lo;
  st.delta_estimate = hi;

  auto wsup = [&](int a, int b) {
    double s = 0.0;
    for (int i = a; i < b && i < count; ++i) s = std::max(s, st.ratios[static_cast<std::size_t>(i)]);
    return s;
  };
  auto winf = [&](int a, int b) {
    double s = std::numeric_limits<double>::infinity();
    for (int i = a; i < b && i < count; ++i) s = std::min(s, st.ratios[static_cast<std::size_t>(i)]);
    return s;
  };
  const double s1 = wsup(count / 8, count / 4), s2 = wsup(count / 4, count / 2),
               s3 = wsup(count / 2, count);
  const double i1 = winf(count / 8, count / 4), i2 = winf(count / 4, count / 2),
               i3 = winf(count / 2, count);
  const bool sup_jump_a = s2 >= 1.5 * s1, sup_jump_b = s3 >= 1.5 * s2;
  const bool inf_jump_a = i2 <= i1 / 1.5, inf_jump_b = i3 <= i2 / 1.5;
  st.delta_unbounded_evidence = sup_jump_a && sup_jump_b;
  st.gamma_vanishing_evidence = inf_jump_a && inf_jump_b;
  st.trend_single_jump = (sup_jump_a != sup_jump_b) || (inf_jump_a != inf_jump_b);
  return st;
}

inline std::vector<double> default_radius_grid() {
  std::vector<double> g;
  g.reserve(1201);
  for (int k = -600; k <= 600; ++k) g.push_back(std::pow(10.0, k / 200.0));
  return g;
}

struct RadiusSearchResult {
  bool found = false;
  double r1 = 0.0;
  double r2 = 0.0;
  bool used_seed = false;
  std::string blocker;
};

// Finds circles where the base function is uniformly small (inner) and
// uniformly large (outer), separated by a zero-free annulus.  A caller seed
// is validated against the 5% eligibility margins and kept verbatim when it
// works.  Otherwise the classical margins (max <= 0.5/delta, min >= 2/gamma)
// are tried first because they leave the later series checks real decay
// room; the raw 5% margins are the fallback.
inline RadiusSearchResult radius_search(const FunctionExpr& base, const RatioStats& stats,
                                        const std::vector<double>& grid = default_radius_grid(),
                                        std::optional<std::pair<double, double>> seed = {},
                                        const ZeroFreeOptions& zf = {}, int nodes = 1024) {
  RadiusSearchResult res;
  const double delta = stats.delta_estimate;
  const double gamma = stats.gamma_estimate;
  if (!(delta > 0.0) || !(gamma > 0.0) || !std::isfinite(delta) || !std::isfinite(gamma)) {
    res.blocker = "ratio statistics are not finite and positive";
    return res;
  }
  auto max_on = [&](double r) { return circle_extrema(base, 1, r, nodes).max_modulus(); };
  auto min_on = [&](double r) { return circle_extrema(base, 1, r, nodes).min_modulus(); };
  auto zero_free_between = [&](double a, double b, std::string& why) {
    try {
      const ZeroFreeReport zr = annulus_zero_free(base, 1, a, b, zf);
      if (zr.verdict == Verdict::PassNumeric) return true;
      why = zr.witness;
    } catch (const Error& e) {
      why = e.what();
    }
    return false;
  };

  if (seed) {
    const double a = seed->first, b = seed->second;
    std::string why;
    if (a > 0.0 && b >= a && max_on(a) <= 0.95 / delta && min_on(b) >= 1.05 / gamma &&
        zero_free_between(a, b, why)) {
      res.found = true;
      res.used_seed = true;
      res.r1 = a;
      res.r2 = b;
      return res;
    }
  }

  // Classical margins: the widest inner circle still under half the small
  // bound, the tightest outer circle already above twice the large bound.
  double r1_classical = 0.0, r2_classical = 0.0;
  for (double r : grid)
    if (max_on(r) <= 0.5 / delta) r1_classical = r;
  for (double r : grid)
    if (min_on(r) >= 2.0 / gamma) {
      r2_classical = r;
      break;
    }
  if (r1_classical > 0.0 && r2_classical >= r1_classical) {
    std::string why;
    if (zero_free_between(r1_classical, r2_classical, why)) {
      res.found = true;
      res.r1 = r1_classical;
      res.r2 = r2_classical;
      return res;
    }
  }

  // Eligibility fallback: first radii meeting the raw 5% margins.
  double r1_any = 0.0, r2_any = 0.0;
  for (double r : grid)
    if (max_on(r) <= 0.95 / delta) {
      if (r1_any == 0.0) r1_any = r;
    }
  for (double r : grid)
    if (min_on(r) >= 1.05 / gamma) {
      r2_any = r;
      break;
    }
  if (r1_any == 0.0) {
    res.blocker = "no circle in the grid has max modulus <= 0.95/delta = " +
                  std::to_string(0.95 / delta);
    if (r2_any == 0.0)
      res.blocker += "; no circle has min modulus >= 1.05/gamma = " +
                     std::to_string(1.05 / gamma);
    return res;
  }
  if (r2_any == 0.0 || r2_any < r1_any) {
    res.blocker = "no circle at or beyond the inner radius has min modulus >= 1.05/gamma = " +
                  std::to_string(1.05 / gamma);
    return res;
  }
  std::string why;
  if (!zero_free_between(r1_any, r2_any, why)) {
    res.blocker = "candidate annulus [" + std::to_string(r1_any) + ", " +
                  std::to_string(r2_any) + "] is not certified zero free: " + why;
    return res;
  }
  res.found = true;
  res.r1 = r1_any;
  res.r2 = r2_any;
  return res;
}

struct Theorem32Report {
  Verdict overall = Verdict::Inconclusive;
  RatioStats stats;
  RadiusSearchResult radii;
  std::string note;
  std::optional<CriterionReport> sub;  // the delegated five-hypothesis run
};

// Specialized route for families c_n * Phi^n: ratio statistics of the
// scalars pick the annulus via radius_search (outer radius doubling as the
// series radius), then the general five-hypothesis check runs on the
// power family.
inline Theorem32Report check_theorem32(const FunctionExpr& base, const SeqSpec& scalars,
                                       int n_max,
                                       std::optional<std::pair<double, double>> seed = {},
                                       const CriterionOptions& opts = {}) {
  Theorem32Report rep;
  rep.stats = ratio_stats(scalars, std::max(8, n_max));
  if (rep.stats.delta_unbounded_evidence || rep.stats.gamma_vanishing_evidence) {
    rep.overall = Verdict::Fail;
    rep.note = rep.stats.delta_unbounded_evidence
                   ? "scalar ratio sups keep growing across dyadic windows; the upper ratio"
                     " limit shows no finite bound"
                   : "scalar ratio infs keep collapsing across dyadic windows; the lower ratio"
                     " limit shows no positive bound";
    return rep;
  }
  if (rep.stats.trend_single_jump) {
    rep.overall = Verdict::Inconclusive;
    rep.note = "scalar ratio trend is ambiguous (one window jump)";
    return rep;
  }
  rep.radii = radius_search(base, rep.stats, default_radius_grid(), seed, opts.zero_free);
  if (!rep.radii.found) {
    rep.overall = Verdict::Inconclusive;
    rep.note = "no admissible radii: " + rep.radii.blocker;
    return rep;
  }
  const Annulus ann{rep.radii.r1, rep.radii.r2, rep.radii.r2};
  const FunctionExpr family = operator_power_expr(base, scalars);
  rep.sub = check_theorem31(family, ann, n_max, opts);
  rep.overall = rep.sub->overall;
  return rep;
}

}  // namespace entireops

#pragma once

// For a polynomial P(z) = sum a_k z^k, its Borel transform is the rational
// function (BP)(t) = sum k! * a_k / t^(k+1), analytic outside t = 0, and P
// is recovered by P(z) = (1/(2*pi*i)) * integral e^(zt) (BP)(t) dt over any
// circle around the origin.  Dividing the integrand by Phi_n(t) instead
// yields a right inverse S_n of the operator Phi_n(D); multiplying by
// Phi_k(t)/Phi_m(t) yields the transfer map T_k S_m.  All of these only
// need Phi values on the contour, where the annulus analysis guarantees a
// zero-free margin.

#include <cmath>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "entireops/circle.hpp"
#include "entireops/common.hpp"
#include "entireops/function_expr.hpp"
#include "entireops/quadrature.hpp"
#include "entireops/taylor_poly.hpp"

namespace entireops {

// (BP)(t) as a callable rational function.
class BorelRational {
 public:
  explicit BorelRational(const TaylorPoly& p) : weighted_(p.coeffs()) {
    double fact = 1.0;
    for (std::size_t k = 0; k < weighted_.size(); ++k) {
      weighted_[k] *= fact;
      fact *= static_cast<double>(k + 1);
    }
  }

  cplx operator()(cplx t) const {
    if (t == cplx{0.0, 0.0})
      throw PoleError("Borel transform of a polynomial has its pole at t = 0");
    // Horner in 1/t: sum k! a_k / t^(k+1)
    const cplx inv = cplx{1.0, 0.0} / t;
    cplx acc{0.0, 0.0};
    for (std::size_t k = weighted_.size(); k-- > 0;) acc = acc * inv + weighted_[k];
    return acc * inv;
  }

  // sup over |t| = r, exact enough for majorant bookkeeping: sampled on a
  // dyadic grid with golden-section sharpening.
  double max_on_circle(double r, int count = 1024) const {
    auto lm = [&](double th) {
      const cplx v = (*this)(std::polar(r, th));
      const double a = std::abs(v);
      return a > 0.0 ? std::log(a) : -std::numeric_limits<double>::infinity();
    };
    return circle_extrema_log(lm, count).max_modulus();
  }

  const std::vector<cplx>& weighted_coeffs() const { return weighted_; }

 private:
  std::vector<cplx> weighted_;  // k! * a_k
};

// Reconstruction integral: evaluates the polynomial from its transform.
// Any positive radius gives the same value; the default spec radius is used
// unless overridden.
inline cplx polya_reconstruct(const TaylorPoly& p, cplx z, const QuadratureSpec& q = {}) {
  const BorelRational bp(p);
  auto f = [&](cplx t) { return std::exp(z * t) * bp(t); };
  return contour_integral(f, q).value;
}

namespace detail {

// Division by Phi_n(t) on the contour goes through the scaled evaluator, so
// huge |Phi_n| cannot overflow; values whose modulus sits below the hard
// floor abort the run instead of amplifying noise.
inline cplx inverse_weight(const FunctionExpr& phi, int n, cplx t) {
  const LogComplex w = evaluate_log(phi, n, t);
  if (w.lmag < std::log(kNearZeroFloor))
    throw NearZeroDivisorError("|Phi_" + std::to_string(n) + "(t)| ~ exp(" +
                               std::to_string(w.lmag) + ") on the contour");
  LogComplex inv;
  inv.lmag = -w.lmag;
  inv.phase = -w.phase;
  inv.add_headroom = w.add_headroom;
  return inv.to_complex();
}

// Phi_k(t) / Phi_m(t); gating on the ratio keeps legitimately tiny
// denominators usable when the numerator shrinks at the same rate.
inline cplx transfer_weight(const FunctionExpr& phi, int k, int m, cplx t) {
  const LogComplex num = evaluate_log(phi, k, t);
  const LogComplex den = evaluate_log(phi, m, t);
  if (den.lmag == -std::numeric_limits<double>::infinity())
    throw NearZeroDivisorError("Phi_" + std::to_string(m) + " vanishes on the contour");
  const double ratio_lmag = num.lmag - den.lmag;
  if (ratio_lmag > 709.0)
    throw OverflowError("transfer ratio exceeds double range");
  LogComplex r;
  r.lmag = ratio_lmag;
  r.phase = num.phase - den.phase;
  r.add_headroom = std::min(num.add_headroom, den.add_headroom);
  return r.to_complex();
}

inline int default_inverse_order(double contour_radius, double disk_radius) {
  // e^(zt) on |z| <= K, |t| = R has coefficient ratios ~ R*K/j; past
  // j ~ e*R*K the moment weights decay superexponentially, and the extra
  // margin keeps the fitted tail honest.
  const int base = static_cast<int>(std::ceil(2.718281828459045 * contour_radius * disk_radius));
  return std::min(kDegreeCap, base + 30);
}

// Truncating the moment series after `order` leaves at most
// R * sup|f| * sum_{k > order} (R * r)^k / k! on the disk |z| <= r, since
// |c_k| <= R^(k+1) * sup|f| / k!.
inline double exp_moment_tail(double sup, double contour_radius, double disk_radius,
                              int order) {
  double term = sup * contour_radius;
  const double x = contour_radius * disk_radius;
  for (int k = 1; k <= order + 1; ++k) term *= x / static_cast<double>(k);
  double tail = 0.0;
  for (int k = order + 1; k <= order + 400; ++k) {
    tail += term;
    term *= x / static_cast<double>(k + 1);
    if (term < 1e-300) break;
  }
  return tail;
}

inline double sup_on_contour(const std::function<cplx(cplx)>& f, double radius) {
  auto lm = [&](double th) {
    const cplx v = f(std::polar(radius, th));
    const double a = std::abs(v);
    return a > 0.0 ? std::log(a) : -std::numeric_limits<double>::infinity();
  };
  return circle_extrema_log(lm, 1024).max_modulus();
}

}  // namespace detail

// (S_n P)(z): the contour right inverse evaluated at one point.
inline cplx right_inverse_eval(const FunctionExpr& phi, int n, const TaylorPoly& p,
                               cplx z, const QuadratureSpec& q = {}) {
  if (n < 0) throw std::invalid_argument("operator index must be >= 0");
  if (n == 0) return p(z);
  const BorelRational bp(p);
  auto f = [&](cplx t) {
    return std::exp(z * t) * bp(t) * detail::inverse_weight(phi, n, t);
  };
  return contour_integral(f, q).value;
}

// S_n P as a truncated Taylor series on |z| <= disk_radius: coefficient k is
// the contour moment with weight t^k / k!.
inline TaylorPoly right_inverse_taylor(const FunctionExpr& phi, int n, const TaylorPoly& p,
                                       const QuadratureSpec& q = {}, int order = -1,
                                       double disk_radius = 2.0) {
  if (n < 0) throw std::invalid_argument("operator index must be >= 0");
  if (n == 0) return p;
  if (order < 0) order = detail::default_inverse_order(q.radius, disk_radius);
  const BorelRational bp(p);
  auto f = [&](cplx t) { return bp(t) * detail::inverse_weight(phi, n, t); };
  SeriesQuadResult r = contour_moments(f, q, order, disk_radius);
  if (r.status != QuadStatus::Converged)
    return r.series.with_meta(false, std::numeric_limits<double>::infinity(),
                              "right inverse moments did not converge");
  const double sup = detail::sup_on_contour(f, q.radius);
  const double tail = detail::exp_moment_tail(sup, q.radius, disk_radius, order);
  return r.series.with_meta(false, tail + r.err_estimate,
                            "series for the right inverse, disk radius " +
                                std::to_string(disk_radius));
}

// (T_k S_m P)(z): transfer through index m down to index k, one point.
inline cplx transfer_apply(const FunctionExpr& phi, int k, int m, const TaylorPoly& p,
                           cplx z, const QuadratureSpec& q = {}) {
  if (k < 0 || m < 0) throw std::invalid_argument("operator indices must be >= 0");
  const BorelRational bp(p);
  auto f = [&](cplx t) {
    return std::exp(z * t) * bp(t) * detail::transfer_weight(phi, k, m, t);
  };
  return contour_integral(f, q).value;
}

// T_k S_m P as a truncated series on |z| <= disk_radius.
inline TaylorPoly transfer_taylor(const FunctionExpr& phi, int k, int m, const TaylorPoly& p,
                                  const QuadratureSpec& q = {}, int order = -1,
                                  double disk_radius = 2.0) {
  if (k < 0 || m < 0) throw std::invalid_argument("operator indices must be >= 0");
  if (order < 0) order = detail::default_inverse_order(q.radius, disk_radius);
  const BorelRational bp(p);
  auto f = [&](cplx t) { return bp(t) * detail::transfer_weight(phi, k, m, t); };
  SeriesQuadResult r = contour_moments(f, q, order, disk_radius);
  if (r.status != QuadStatus::Converged)
    return r.series.with_meta(false, std::numeric_limits<double>::infinity(),
                              "transfer moments did not converge");
  const double sup = detail::sup_on_contour(f, q.radius);
  const double tail = detail::exp_moment_tail(sup, q.radius, disk_radius, order);
  return r.series.with_meta(false, tail + r.err_estimate,
                            "series for the transfer map, disk radius " +
                                std::to_string(disk_radius));
}

// The right inverse must not depend on the contour radius while the annulus
// stays zero free.  Returns the max pairwise |S_n P(z)| deviation across the
// radii, over the probe points.
inline double radius_invariance_check(const FunctionExpr& phi, int n, const TaylorPoly& p,
                                      const std::vector<double>& radii,
                                      const std::vector<cplx>& probes,
                                      const QuadratureSpec& q = {}) {
  if (radii.size() < 2) throw std::invalid_argument("need at least two radii");
  std::vector<std::vector<cplx>> vals(radii.size());
  for (std::size_t i = 0; i < radii.size(); ++i) {
    const QuadratureSpec qr = q.with_radius(radii[i]);
    for (const cplx& z : probes) vals[i].push_back(right_inverse_eval(phi, n, p, z, qr));
  }
  double worst = 0.0;
  for (std::size_t i = 0; i < radii.size(); ++i)
    for (std::size_t l = i + 1; l < radii.size(); ++l)
      for (std::size_t j = 0; j < probes.size(); ++j)
        worst = std::max(worst, std::abs(vals[i][j] - vals[l][j]));
  return worst;
}

}  // namespace entireops

#pragma once

// Uniform sampling of |z| = r plus extrema of log-magnitude over such
// circles.  Extrema are located on a power-of-two grid and then sharpened
// by golden-section search on the angle; this keeps min/max estimates
// reliable for the smooth non-vanishing families the bound computations
// feed on.

#include <cmath>
#include <functional>
#include <vector>

#include "entireops/common.hpp"
#include "entireops/function_expr.hpp"

namespace entireops {

inline std::vector<cplx> circle_nodes(double radius, int count) {
  if (radius <= 0.0) throw std::invalid_argument("circle radius must be positive");
  if (count < 1) throw std::invalid_argument("node count must be >= 1");
  std::vector<cplx> pts(static_cast<std::size_t>(count));
  for (int j = 0; j < count; ++j) {
    const double th = kTwoPi * static_cast<double>(j) / static_cast<double>(count);
    pts[static_cast<std::size_t>(j)] = std::polar(radius, th);
  }
  return pts;
}

struct CircleExtrema {
  double min_log = 0.0;   // log of the modulus at the sharpened minimum
  double max_log = 0.0;
  double argmin = 0.0;    // angles in [0, 2*pi)
  double argmax = 0.0;
  int nodes = 0;

  double min_modulus() const { return std::exp(min_log); }
  double max_modulus() const { return std::exp(max_log); }
};

namespace detail {

inline double golden_refine(const std::function<double(double)>& g, double lo,
                            double hi, bool maximize) {
  constexpr double invphi = 0.6180339887498949;
  double a = lo, b = hi;
  double c = b - invphi * (b - a);
  double d = a + invphi * (b - a);
  double fc = g(c), fd = g(d);
  for (int it = 0; it < 48 && (b - a) > 1e-13; ++it) {
    const bool pick_left = maximize ? (fc > fd) : (fc < fd);
    if (pick_left) {
      b = d; d = c; fd = fc;
      c = b - invphi * (b - a);
      fc = g(c);
    } else {
      a = c; c = d; fc = fd;
      d = a + invphi * (b - a);
      fd = g(d);
    }
  }
  return 0.5 * (a + b);
}

}  // namespace detail

// Extrema of log|g| on the circle of the given radius.  g reports
// log-magnitude as a function of the angle; count must be a power of two,
// at least 64.
inline CircleExtrema circle_extrema_log(const std::function<double(double)>& lmag,
                                        int count = 4096) {
  if (count < 64 || (count & (count - 1)) != 0)
    throw std::invalid_argument("extrema scan wants a power-of-two node count >= 64");
  const double step = kTwoPi / static_cast<double>(count);
  int imin = 0, imax = 0;
  std::vector<double> vals(static_cast<std::size_t>(count));
  for (int j = 0; j < count; ++j) {
    vals[static_cast<std::size_t>(j)] = lmag(step * static_cast<double>(j));
    if (vals[static_cast<std::size_t>(j)] < vals[static_cast<std::size_t>(imin)]) imin = j;
    if (vals[static_cast<std::size_t>(j)] > vals[static_cast<std::size_t>(imax)]) imax = j;
  }
  CircleExtrema out;
  out.nodes = count;
  const double tmin = detail::golden_refine(lmag, step * (imin - 1), step * (imin + 1), false);
  const double tmax = detail::golden_refine(lmag, step * (imax - 1), step * (imax + 1), true);
  out.argmin = std::fmod(tmin + kTwoPi, kTwoPi);
  out.argmax = std::fmod(tmax + kTwoPi, kTwoPi);
  out.min_log = std::min(lmag(tmin), vals[static_cast<std::size_t>(imin)]);
  out.max_log = std::max(lmag(tmax), vals[static_cast<std::size_t>(imax)]);
  return out;
}

inline CircleExtrema circle_extrema(const FunctionExpr& f, int n, double radius,
                                    int count = 4096) {
  if (radius <= 0.0) throw std::invalid_argument("circle radius must be positive");
  auto lm = [&](double th) {
    return evaluate_log(f, n, std::polar(radius, th)).lmag;
  };
  return circle_extrema_log(lm, count);
}

// Growth measured on one circle: the max modulus together with the implied
// exponential-type estimate log M(r) / r and, where meaningful, the implied
// order estimate log log M(r) / log r.
struct GrowthMetrics {
  double radius = 0.0;
  double max_modulus = 0.0;      // M(r); +inf when it exceeds double range
  double max_log_modulus = 0.0;  // log M(r), finite even when M(r) overflows
  double type_estimate = 0.0;    // log M(r) / r
  double order_estimate = 0.0;   // log log M(r) / log r, NaN when undefined
};

inline GrowthMetrics growth_metrics(const FunctionExpr& f, int n, double radius,
                                    int count = 4096) {
  GrowthMetrics g;
  g.radius = radius;
  const auto ex = circle_extrema(f, n, radius, count);
  g.max_modulus = std::exp(ex.max_log);  // inf on overflow, by design
  g.max_log_modulus = ex.max_log;
  g.type_estimate = ex.max_log / radius;
  if (ex.max_log > 1.0 && radius > 1.0 && std::log(radius) > 0.1)
    g.order_estimate = std::log(ex.max_log) / std::log(radius);
  else
    g.order_estimate = std::numeric_limits<double>::quiet_NaN();
  return g;
}

inline std::vector<GrowthMetrics> growth_metrics(const FunctionExpr& f, int n,
                                                 const std::vector<double>& radii,
                                                 int count = 4096) {
  std::vector<GrowthMetrics> out;
  out.reserve(radii.size());
  for (double r : radii) out.push_back(growth_metrics(f, n, r, count));
  return out;
}

}  // namespace entireops

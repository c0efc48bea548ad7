#pragma once

// Contour integrals over circles |t| = R via the trapezoidal rule in the
// angle, which is spectrally accurate for integrands analytic in an annulus
// around the contour.  (1/(2*pi*i)) * integral f(t) dt over |t| = R equals
// (1/M) * sum_j f(t_j) * t_j at the M-th roots-of-unity nodes scaled by R.
// Node counts double until two consecutive levels agree.
//
// Integrand evaluations go through parallel_for into index-addressed
// storage; reductions run serially in node order, so results do not depend
// on ENTIREOPS_THREADS.

#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "entireops/common.hpp"
#include "entireops/taylor_poly.hpp"

namespace entireops {

struct QuadratureSpec {
  double radius = 1.0;
  int initial_nodes = 64;
  double tol = 1e-10;
  int max_doublings = 12;

  QuadratureSpec with_radius(double r) const {
    QuadratureSpec q = *this;
    q.radius = r;
    return q;
  }
};

enum class QuadStatus { Converged, MaxNodes };

struct QuadLevel {
  int nodes = 0;
  cplx value{0.0, 0.0};
};

struct QuadResult {
  cplx value{0.0, 0.0};
  cplx previous{0.0, 0.0};
  double err_estimate = 0.0;
  int nodes = 0;
  QuadStatus status = QuadStatus::Converged;
  std::vector<QuadLevel> history;
};

namespace detail {

// Convergence scale: proportional to the result when the result dominates,
// but floored at a small fraction of the largest sampled term so that
// integrals with an exactly-zero answer still terminate.  Both branches are
// homogeneous in f, so scaling the integrand rescales the whole run.
inline double quad_scale(double value_mag, double max_sample) {
  return std::max(value_mag, 0.01 * max_sample);
}

// One trapezoidal level: terms[j] = f(t_j) * t_j, filled in parallel, read
// back serially.
inline void sample_level(const std::function<cplx(cplx)>& f, double radius, int m,
                         std::vector<cplx>& terms) {
  terms.assign(static_cast<std::size_t>(m), cplx{0.0, 0.0});
  parallel_for(static_cast<std::size_t>(m), [&](std::size_t j) {
    const double th = kTwoPi * static_cast<double>(j) / static_cast<double>(m);
    const cplx t = std::polar(radius, th);
    terms[j] = f(t) * t;
  });
}

}  // namespace detail

// (1/(2*pi*i)) * contour integral of f over |t| = radius, counterclockwise.
inline QuadResult contour_integral(const std::function<cplx(cplx)>& f,
                                   const QuadratureSpec& q = {}) {
  if (q.radius <= 0.0) throw std::invalid_argument("contour radius must be positive");
  if (q.initial_nodes < 4) throw std::invalid_argument("need at least 4 nodes");

  QuadResult out;
  std::vector<cplx> terms;
  int m = q.initial_nodes;
  cplx prev{0.0, 0.0};
  bool have_prev = false;
  for (int level = 0; level <= q.max_doublings; ++level, m *= 2) {
    detail::sample_level(f, q.radius, m, terms);
    cplx acc{0.0, 0.0};
    double max_sample = 0.0;
    for (const cplx& term : terms) {
      acc += term;
      max_sample = std::max(max_sample, std::abs(term));
    }
    const cplx value = acc / static_cast<double>(m);
    out.history.push_back({m, value});
    out.value = value;
    out.nodes = m;
    if (have_prev) {
      const double diff = std::abs(value - prev);
      const double scale = detail::quad_scale(std::abs(value), max_sample);
      out.err_estimate = diff;
      out.previous = prev;
      if (diff <= q.tol * scale) {
        out.status = QuadStatus::Converged;
        return out;
      }
    }
    prev = value;
    have_prev = true;
  }
  out.status = QuadStatus::MaxNodes;
  return out;
}

struct SeriesQuadResult {
  TaylorPoly series;
  double err_estimate = 0.0;
  int nodes = 0;
  QuadStatus status = QuadStatus::Converged;
  std::vector<QuadLevel> history;  // value tracks coefficient 0 per level
};

// All the integrals c_k = (1/(2*pi*i)) * integral f(t) * t^k / k! dt for
// k = 0..order, from one shared set of samples per level.  Convergence is
// judged on sum_k |delta c_k| * disk_radius^k, the change in the induced
// polynomial's coefficient norm on the target disk.
inline SeriesQuadResult contour_moments(const std::function<cplx(cplx)>& f,
                                        const QuadratureSpec& q, int order,
                                        double disk_radius) {
  if (q.radius <= 0.0) throw std::invalid_argument("contour radius must be positive");
  if (order < 0) throw std::invalid_argument("moment order must be >= 0");
  if (disk_radius <= 0.0) throw std::invalid_argument("disk radius must be positive");
  if (order > kDegreeCap)
    throw DegreeCapError("moment order " + std::to_string(order) +
                         " exceeds the degree cap " + std::to_string(kDegreeCap));

  SeriesQuadResult out;
  const std::size_t ncoef = static_cast<std::size_t>(order) + 1;
  std::vector<cplx> prev(ncoef, cplx{0.0, 0.0});
  std::vector<cplx> cur(ncoef, cplx{0.0, 0.0});
  std::vector<cplx> terms;
  bool have_prev = false;
  int m = q.initial_nodes;
  for (int level = 0; level <= q.max_doublings; ++level, m *= 2) {
    detail::sample_level(f, q.radius, m, terms);
    std::fill(cur.begin(), cur.end(), cplx{0.0, 0.0});
    double max_sample = 0.0;
    for (int j = 0; j < m; ++j) {
      const cplx base = terms[static_cast<std::size_t>(j)];
      max_sample = std::max(max_sample, std::abs(base));
      const double th = kTwoPi * static_cast<double>(j) / static_cast<double>(m);
      const cplx t = std::polar(q.radius, th);
      cplx mono{1.0, 0.0};  // t^k / k!, built incrementally
      for (std::size_t k = 0; k < ncoef; ++k) {
        cur[k] += base * mono;
        mono *= t / static_cast<double>(k + 1);
      }
    }
    for (auto& c : cur) c /= static_cast<double>(m);
    out.history.push_back({m, cur[0]});
    out.nodes = m;
    if (have_prev) {
      double diff = 0.0, norm = 0.0;
      double rk = 1.0;
      for (std::size_t k = 0; k < ncoef; ++k) {
        diff += std::abs(cur[k] - prev[k]) * rk;
        norm += std::abs(cur[k]) * rk;
        rk *= disk_radius;
      }
      const double scale = detail::quad_scale(norm, max_sample);
      out.err_estimate = diff;
      if (diff <= q.tol * scale) {
        out.series = TaylorPoly(cur, false, diff,
                                "contour moments, disk radius " + std::to_string(disk_radius));
        out.status = QuadStatus::Converged;
        return out;
      }
    }
    prev = cur;
    have_prev = true;
  }
  out.series = TaylorPoly(cur, false, std::numeric_limits<double>::infinity(),
                          "contour moments did not converge");
  out.status = QuadStatus::MaxNodes;
  return out;
}

}  // namespace entireops

#pragma once

// TaylorPoly: coefficients of a polynomial or truncated power series around 0.
// Immutable in spirit: every operation returns a new value.  Trailing zero
// coefficients never change behaviour; degree() reports the highest nonzero
// index while order() reports the storage order.

#include <cassert>
#include <string>
#include <utility>
#include <vector>

#include "entireops/common.hpp"

namespace entireops {

class TaylorPoly {
 public:
  TaylorPoly() : coeffs_(1, cplx{0.0, 0.0}) {}

  explicit TaylorPoly(std::vector<cplx> coeffs, bool exact = true,
                      double tail_bound = 0.0, std::string note = {})
      : coeffs_(std::move(coeffs)),
        exact_(exact),
        tail_bound_(tail_bound),
        note_(std::move(note)) {
    if (coeffs_.empty()) coeffs_.assign(1, cplx{0.0, 0.0});
    if (static_cast<int>(coeffs_.size()) - 1 > kDegreeCap)
      throw DegreeCapError("polynomial order " +
                           std::to_string(coeffs_.size() - 1) +
                           " exceeds the degree cap " +
                           std::to_string(kDegreeCap));
  }

  static TaylorPoly constant(cplx c) { return TaylorPoly({c}); }

  static TaylorPoly monomial(int k, cplx c = cplx{1.0, 0.0}) {
    if (k < 0) throw std::invalid_argument("monomial exponent must be >= 0");
    std::vector<cplx> v(static_cast<std::size_t>(k) + 1, cplx{0.0, 0.0});
    v.back() = c;
    return TaylorPoly(std::move(v));
  }

  const std::vector<cplx>& coeffs() const { return coeffs_; }
  cplx coeff(int k) const {
    return (k >= 0 && k < static_cast<int>(coeffs_.size())) ? coeffs_[static_cast<std::size_t>(k)]
                                                            : cplx{0.0, 0.0};
  }

  int order() const { return static_cast<int>(coeffs_.size()) - 1; }

  int degree() const {
    for (int k = order(); k >= 0; --k)
      if (coeffs_[static_cast<std::size_t>(k)] != cplx{0.0, 0.0}) return k;
    return -1;  // zero polynomial
  }

  bool is_exact() const { return exact_; }
  double tail_bound() const { return tail_bound_; }
  const std::string& note() const { return note_; }

  TaylorPoly with_meta(bool exact, double tail_bound, std::string note) const {
    TaylorPoly r = *this;
    r.exact_ = exact;
    r.tail_bound_ = tail_bound;
    r.note_ = std::move(note);
    return r;
  }

  cplx operator()(cplx z) const {
    cplx acc{0.0, 0.0};
    for (int k = order(); k >= 0; --k) acc = acc * z + coeffs_[static_cast<std::size_t>(k)];
    return acc;
  }

  // Sum of |c_k| * r^k; the cheap envelope for values on |z| <= r.
  double coeff_norm(double r = 1.0) const {
    double s = 0.0, p = 1.0;
    for (const auto& c : coeffs_) {
      s += std::abs(c) * p;
      p *= r;
    }
    return s;
  }

  TaylorPoly derivative() const {
    if (order() == 0) return TaylorPoly();
    std::vector<cplx> d(coeffs_.size() - 1);
    for (std::size_t k = 1; k < coeffs_.size(); ++k)
      d[k - 1] = coeffs_[k] * static_cast<double>(k);
    return TaylorPoly(std::move(d), exact_, tail_bound_, note_);
  }

  // f(z + a) by binomial expansion; exact for exact polynomials.
  TaylorPoly translate(cplx a) const {
    const int m = order();
    std::vector<cplx> out(static_cast<std::size_t>(m) + 1, cplx{0.0, 0.0});
    for (int j = m; j >= 0; --j) {
      // Horner in a over the coefficient recurrence: out becomes the shifted
      // coefficient list after absorbing c_j.
      for (int k = m - j; k >= 1; --k)
        out[static_cast<std::size_t>(k)] = out[static_cast<std::size_t>(k)] * a + out[static_cast<std::size_t>(k) - 1];
      out[0] = out[0] * a + coeffs_[static_cast<std::size_t>(j)];
    }
    return TaylorPoly(std::move(out), exact_, tail_bound_, note_);
  }

  friend TaylorPoly operator+(const TaylorPoly& l, const TaylorPoly& r) {
    std::vector<cplx> v(std::max(l.coeffs_.size(), r.coeffs_.size()), cplx{0.0, 0.0});
    for (std::size_t k = 0; k < v.size(); ++k)
      v[k] = l.coeff(static_cast<int>(k)) + r.coeff(static_cast<int>(k));
    return TaylorPoly(std::move(v), l.exact_ && r.exact_,
                      l.tail_bound_ + r.tail_bound_);
  }

  friend TaylorPoly operator-(const TaylorPoly& l, const TaylorPoly& r) {
    std::vector<cplx> v(std::max(l.coeffs_.size(), r.coeffs_.size()), cplx{0.0, 0.0});
    for (std::size_t k = 0; k < v.size(); ++k)
      v[k] = l.coeff(static_cast<int>(k)) - r.coeff(static_cast<int>(k));
    return TaylorPoly(std::move(v), l.exact_ && r.exact_,
                      l.tail_bound_ + r.tail_bound_);
  }

  friend TaylorPoly operator*(cplx s, const TaylorPoly& p) {
    std::vector<cplx> v = p.coeffs_;
    for (auto& c : v) c *= s;
    return TaylorPoly(std::move(v), p.exact_, std::abs(s) * p.tail_bound_, p.note_);
  }

  // Product truncated at order m (exact coefficients of the product through m).
  TaylorPoly mul_truncated(const TaylorPoly& r, int m) const {
    std::vector<cplx> v(static_cast<std::size_t>(m) + 1, cplx{0.0, 0.0});
    const int dl = std::min(order(), m);
    for (int i = 0; i <= dl; ++i) {
      const cplx ci = coeffs_[static_cast<std::size_t>(i)];
      if (ci == cplx{0.0, 0.0}) continue;
      const int dr = std::min(r.order(), m - i);
      for (int j = 0; j <= dr; ++j)
        v[static_cast<std::size_t>(i + j)] += ci * r.coeffs_[static_cast<std::size_t>(j)];
    }
    return TaylorPoly(std::move(v), false);
  }

  // Equality up to trailing zeros (coefficientwise exact).
  friend bool same_series(const TaylorPoly& l, const TaylorPoly& r) {
    const int m = std::max(l.order(), r.order());
    for (int k = 0; k <= m; ++k)
      if (l.coeff(k) != r.coeff(k)) return false;
    return true;
  }

 private:
  std::vector<cplx> coeffs_;
  bool exact_ = true;
  double tail_bound_ = 0.0;
  std::string note_;
};

// Max |l - r| over a point set, the workhorse for grid comparisons.
inline double max_deviation(const TaylorPoly& l, const TaylorPoly& r,
                            const std::vector<cplx>& grid) {
  double dev = 0.0;
  for (cplx z : grid) dev = std::max(dev, std::abs(l(z) - r(z)));
  return dev;
}

}  // namespace entireops

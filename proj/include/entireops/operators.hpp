#pragma once

// An expression family Phi_n acts on polynomials as the differential
// operator Phi_n(D): expand Phi_n as a power series h_0 + h_1 w + ... and
// apply sum_j h_j * f^(j).  For a polynomial input only derivatives up to
// its degree survive, so the action is exact whenever the coefficients are.

#include <string>
#include <utility>
#include <vector>

#include "entireops/common.hpp"
#include "entireops/function_expr.hpp"
#include "entireops/taylor_poly.hpp"

namespace entireops {

struct OperatorSequence {
  FunctionExpr expr;
  std::string label;
  int n_start = 1;  // first index with a genuine operator; 0 is the identity
};

// Phi_n(D) f for polynomial f.  Index 0 is the identity by convention.
inline TaylorPoly apply_operator(const FunctionExpr& phi, int n, const TaylorPoly& f) {
  if (n < 0) throw std::invalid_argument("operator index must be >= 0");
  if (n == 0) return f;
  const int m = f.order();
  const TaylorPoly h = taylor_coeffs(phi, n, m);
  std::vector<cplx> out(static_cast<std::size_t>(m) + 1, cplx{0.0, 0.0});
  TaylorPoly deriv = f;
  for (int j = 0; j <= m; ++j) {
    const cplx hj = h.coeff(j);
    if (hj != cplx{0.0, 0.0})
      for (int k = 0; k <= deriv.order(); ++k)
        out[static_cast<std::size_t>(k)] += hj * deriv.coeff(k);
    if (j < m) deriv = deriv.derivative();
  }
  // Expansion terms of Phi_n beyond order m act on vanished derivatives, so
  // truncating h there loses nothing: the action is exact when f is.
  return TaylorPoly(std::move(out), f.is_exact(), f.tail_bound(), f.note());
}

// The family c_n * base^n as an expression tree: Mul(Seq(scale), Pow(base, n)).
inline FunctionExpr operator_power_expr(const FunctionExpr& base, SeqSpec scale) {
  return FunctionExpr::mul(FunctionExpr::seq(std::move(scale)),
                           FunctionExpr::pow(base, IntAffine{1, 0}));
}

inline FunctionExpr operator_power_expr(const FunctionExpr& base) {
  return operator_power_expr(base, SeqSpec::constant({1.0, 0.0}));
}

// Convolution operators commute with translation: Phi_n(D) applied to
// f(. + a) must match (Phi_n(D) f)(. + a).  Returns the largest deviation
// between the two paths over the sample points; a genuine operator family
// stays at rounding size.
inline double commutation_check(const FunctionExpr& phi, int n, cplx a,
                                const TaylorPoly& f, const std::vector<cplx>& samples) {
  const TaylorPoly lhs = apply_operator(phi, n, f.translate(a));
  const TaylorPoly rhs = apply_operator(phi, n, f).translate(a);
  double worst = 0.0;
  for (const cplx& z : samples) worst = std::max(worst, std::abs(lhs(z) - rhs(z)));
  return worst;
}

}  // namespace entireops

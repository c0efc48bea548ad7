#pragma once

// Prebuilt operator families shared by tests and example configurations.

#include "entireops/function_expr.hpp"

namespace entireops::catalog {

// Phi_n(t) = t^n.  The induced operators are the iterated derivatives.
inline FunctionExpr derivative_powers() {
  return FunctionExpr::pow(FunctionExpr::z(), IntAffine{1, 0});
}

// Phi_n(t) = e^{n t}.  The induced operators are translations by n.
inline FunctionExpr translation_powers() {
  return FunctionExpr::exp(ScalarAffine{1.0, 0.0});
}

// The base function z + e^z / 9, constant in the family index.
inline FunctionExpr z_plus_exp_ninth() {
  return FunctionExpr::add(
      FunctionExpr::z(),
      FunctionExpr::mul(FunctionExpr::constant(cplx{1.0 / 9.0, 0.0}),
                        FunctionExpr::exp(ScalarAffine{0.0, 1.0})));
}

// Phi_n(t) = log(n+1) * (t + e^t / 9)^n.
inline FunctionExpr scaled_shift_powers() {
  return FunctionExpr::mul(FunctionExpr::seq(SeqSpec::log_shift()),
                           FunctionExpr::pow(z_plus_exp_ninth(), IntAffine{1, 0}));
}

// Phi_n(t) = 5^n t^n + 9^{-n} e^{n t}: polynomial-dominated on small
// circles, exponential-aware on large ones.
inline FunctionExpr mixed_5n_9n() {
  return FunctionExpr::add(
      FunctionExpr::mul(FunctionExpr::seq(SeqSpec::geometric(cplx{5.0, 0.0})),
                        FunctionExpr::pow(FunctionExpr::z(), IntAffine{1, 0})),
      FunctionExpr::mul(FunctionExpr::seq(SeqSpec::geometric(cplx{1.0 / 9.0, 0.0})),
                        FunctionExpr::exp(ScalarAffine{1.0, 0.0})));
}

}  // namespace entireops::catalog

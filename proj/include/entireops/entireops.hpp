#pragma once

// Single include for the whole library.

#include "entireops/bg_verify.hpp"
#include "entireops/borel.hpp"
#include "entireops/catalog.hpp"
#include "entireops/circle.hpp"
#include "entireops/common.hpp"
#include "entireops/config.hpp"
#include "entireops/criterion.hpp"
#include "entireops/function_expr.hpp"
#include "entireops/operators.hpp"
#include "entireops/quadrature.hpp"
#include "entireops/report.hpp"
#include "entireops/taylor_poly.hpp"

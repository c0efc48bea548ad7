#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "entireops/bg_verify.hpp"
#include "entireops/catalog.hpp"

using namespace entireops;

namespace {

double factorial(int n) {
  double f = 1.0;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

}  // namespace

TEST_CASE("disk grid covers the disk with the origin first") {
  const auto g = disk_grid(2.0);
  REQUIRE(g.size() == 1 + 8 * 64);
  CHECK(g[0] == cplx{0.0, 0.0});
  double rmax = 0.0;
  for (const cplx& z : g) rmax = std::max(rmax, std::abs(z));
  CHECK(rmax == Catch::Approx(2.0));
}

TEST_CASE("backward sums vanish identically on the derivative family") {
  LedgerOptions opts;
  opts.n_max = 20;
  opts.k_max = 12;
  const ConvergenceLedger led = verify_condition_i(
      catalog::derivative_powers(), TaylorPoly::constant(cplx{1, 0}), 0.5, opts);
  CHECK(led.verdict == Verdict::PassNumeric);
  REQUIRE(led.terms.size() == 12);
  for (double t : led.terms) CHECK(t < 1e-10);
  // bound: r1 e^{r1} sup|BP| sup-row-sum = 0.5 e^{0.5} * 2 * 1.01 (1 - 2^-12)
  CHECK(led.analytic_bound ==
        Catch::Approx(std::exp(0.5) * 1.01 * (1.0 - std::pow(2.0, -12))).epsilon(1e-9));
}

TEST_CASE("forward series on the derivative family sums factorial reciprocals") {
  LedgerOptions opts;
  opts.n_max = 20;
  opts.k_max = 6;
  const ConvergenceLedger led = verify_condition_ii(
      catalog::derivative_powers(), TaylorPoly::constant(cplx{1, 0}), 2.0, opts);
  CHECK(led.verdict == Verdict::PassNumeric);
  REQUIRE(led.terms.size() == 20);
  for (int n = 1; n <= 20; ++n)
    CHECK(led.terms[static_cast<std::size_t>(n - 1)] ==
          Catch::Approx(1.0 / factorial(n)).margin(1e-8));
  CHECK(led.partial_sums.back() == Catch::Approx(std::exp(1.0) - 1.0).margin(1e-7));
  for (double p : led.partial_sums) CHECK(p <= 1.05 * led.analytic_bound);
}

TEST_CASE("inverse series on the derivative family matches the closed form") {
  LedgerOptions opts;
  opts.n_max = 20;
  const ConvergenceLedger led = verify_condition_iii(
      catalog::derivative_powers(), TaylorPoly::constant(cplx{1, 0}), 2.0, opts);
  CHECK(led.verdict == Verdict::PassNumeric);
  for (int n = 1; n <= 20; ++n)
    CHECK(led.terms[static_cast<std::size_t>(n - 1)] ==
          Catch::Approx(1.0 / factorial(n)).margin(1e-8));
  // bound: r3 e^{r3} sup|BP| sum 2^{-n} = 2 e^2 * 0.5 * (1 - 2^-20)
  CHECK(led.analytic_bound ==
        Catch::Approx(std::exp(2.0) * (1.0 - std::pow(2.0, -20))).epsilon(1e-9));
}

TEST_CASE("slowly decaying series are inconclusive, not certified") {
  // scalar multiples of the identity: S_n P = P / c_n, so the inverse series
  // decays like 1.02^{-n} and its tail cannot be certified over 16 entries
  const FunctionExpr fam = FunctionExpr::seq(SeqSpec::geometric(cplx{1.02, 0.0}));
  LedgerOptions opts;
  opts.n_max = 16;
  const ConvergenceLedger led =
      verify_condition_iii(fam, TaylorPoly::constant(cplx{1, 0}), 1.0, opts);
  CHECK(led.verdict == Verdict::Inconclusive);
  CHECK(led.note.find("tail gap") != std::string::npos);
  CHECK(led.terms[0] == Catch::Approx(1.0 / 1.02).margin(1e-9));
  // the majorant inequality itself still holds
  for (double p : led.partial_sums) CHECK(p <= 1.05 * led.analytic_bound);
}

TEST_CASE("partial sums above the majorant fail the ledger") {
  ConvergenceLedger led;
  led.condition = "iii";
  led.terms = {1.0, 10.0};
  led.partial_sums = {1.0, 11.0};
  led.analytic_bound = 5.0;
  detail::close_ledger(led, true, true, LedgerOptions{});
  CHECK(led.verdict == Verdict::Fail);
  CHECK(led.note.find("exceeds the majorant") != std::string::npos);
}

TEST_CASE("ledger majorants hold across catalog families and samples") {
  LedgerOptions opts;
  opts.n_max = 12;
  opts.k_max = 6;
  const std::vector<TaylorPoly> samples = {TaylorPoly::constant(cplx{1, 0}),
                                           TaylorPoly::monomial(2),
                                           TaylorPoly({cplx{1, 0}, cplx{0, 1}})};
  struct Case {
    FunctionExpr fam;
    double r1, r2, r3;
  };
  const std::vector<Case> cases = {
      {catalog::derivative_powers(), 0.5, 2.0, 2.0},
      {catalog::mixed_5n_9n(), 1.0 / 15.0, 1.0, 1.0},
      {catalog::scaled_shift_powers(), 0.5, 2.0, 2.0},
  };
  for (const auto& c : cases) {
    for (const auto& p : samples) {
      const ConvergenceLedger li = verify_condition_i(c.fam, p, c.r1, opts);
      const ConvergenceLedger lii = verify_condition_ii(c.fam, p, c.r2, opts);
      const ConvergenceLedger liii = verify_condition_iii(c.fam, p, c.r3, opts);
      for (const auto* led : {&li, &lii, &liii}) {
        CHECK(led->verdict != Verdict::Fail);
        for (double ps : led->partial_sums) CHECK(ps <= 1.05 * led->analytic_bound);
      }
    }
  }
}

TEST_CASE("the two-sided identity holds at rounding scale") {
  QuadratureSpec q;
  q.radius = 2.0;
  const IdentityCheck chk =
      verify_condition_iv(catalog::derivative_powers(),
                          TaylorPoly({cplx{1, 0}, cplx{0, 1}}), {0, 1, 2, 3}, 1.0, q);
  CHECK(chk.verdict == Verdict::PassNumeric);
  CHECK(chk.max_deviation < 1e-12);
}

TEST_CASE("an unmeetable identity tolerance names the worst point") {
  // a non-polynomial symbol keeps genuine quadrature truncation error around
  QuadratureSpec q;
  q.radius = 1.0;
  const IdentityCheck strict = verify_condition_iv(
      catalog::scaled_shift_powers(), TaylorPoly({cplx{1, 0}, cplx{0, 1}}), {1, 2},
      1.0, q, 1e-18);
  CHECK(strict.verdict == Verdict::Fail);
  CHECK(strict.max_deviation > 1e-18);
  CHECK(strict.witness.find("index") != std::string::npos);
  CHECK(strict.witness.find("transfer") != std::string::npos);
}

TEST_CASE("orbit images evaluate the operator on the sampling grid") {
  const auto grid = disk_grid(1.0);
  const OrbitSample s =
      orbit_apply(catalog::derivative_powers(), 2, TaylorPoly::monomial(3), grid);
  CHECK(s.index == 2);
  REQUIRE(s.values.size() == grid.size());
  // second derivative of z^3 is 6z, so the sup on the unit disk is 6
  CHECK(s.sup == Catch::Approx(6.0).epsilon(1e-12));
  CHECK(std::abs(s.values[0]) < 1e-15);
}

TEST_CASE("hitting density counts the even indices") {
  // family c_n * identity with c_n = 2 for odd n, 1 for even n: the image of
  // the constant 1 hits the target 1 exactly on the even indices
  std::vector<cplx> items;
  for (int n = 1; n <= 102; ++n) items.emplace_back(n % 2 == 1 ? 2.0 : 1.0, 0.0);
  const FunctionExpr fam = FunctionExpr::seq(SeqSpec::list(items));
  const TaylorPoly one = TaylorPoly::constant(cplx{1, 0});
  const HittingDensity h = hitting_density(fam, one, one, 0.5, 1.0, 102);
  REQUIRE(h.hits.size() == 51);
  CHECK(h.hits[0] == 2);
  CHECK(h.hits[50] == 102);
  CHECK(h.density.back() == Catch::Approx(0.5));
  // the worst trailing density sits right after the halfway point
  CHECK(h.liminf_estimate == Catch::Approx(26.0 / 53.0).epsilon(1e-12));
}

TEST_CASE("ledger input guards reject empty ranges") {
  LedgerOptions opts;
  opts.k_max = 0;
  CHECK_THROWS_AS(verify_condition_i(catalog::derivative_powers(),
                                     TaylorPoly::constant(cplx{1, 0}), 0.5, opts),
                  std::invalid_argument);
  CHECK_THROWS_AS(hitting_density(catalog::derivative_powers(),
                                  TaylorPoly::constant(cplx{1, 0}),
                                  TaylorPoly::constant(cplx{1, 0}), 0.0, 1.0, 10),
                  std::invalid_argument);
}

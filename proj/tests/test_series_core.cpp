#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <fstream>
#include <random>
#include <vector>

#include <nlohmann/json.hpp>

#include "entireops/catalog.hpp"
#include "entireops/circle.hpp"
#include "entireops/common.hpp"
#include "entireops/function_expr.hpp"
#include "entireops/quadrature.hpp"
#include "entireops/taylor_poly.hpp"

using namespace entireops;

namespace {

cplx rand_unit(std::mt19937& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  return {u(rng), u(rng)};
}

std::vector<FunctionExpr> catalog_families() {
  return {catalog::derivative_powers(), catalog::translation_powers(),
          catalog::z_plus_exp_ninth(), catalog::scaled_shift_powers(),
          catalog::mixed_5n_9n()};
}

}  // namespace

TEST_CASE("log-scale complex numbers round-trip and multiply") {
  const cplx a{0.7, -1.3}, b{-2.0, 0.4};
  const LogComplex la = LogComplex::from(a), lb = LogComplex::from(b);
  CHECK(std::abs(la.to_complex() - a) < 1e-15 * std::abs(a));
  CHECK(std::abs(log_mul(la, lb).to_complex() - a * b) < 1e-14 * std::abs(a * b));
  CHECK(std::abs(log_pow(la, 7).to_complex() - std::pow(a, 7)) <
        1e-13 * std::abs(std::pow(a, 7)));
  CHECK(std::abs(log_add(la, lb).to_complex() - (a + b)) < 1e-13 * std::abs(a + b));

  CHECK(LogComplex::from(cplx{0.0, 0.0}).is_zero());
  CHECK(LogComplex::one().lmag == 0.0);

  // magnitudes beyond double range stay representable in log scale
  LogComplex big = log_pow(LogComplex::from(cplx{2.0, 0.0}), 2000);
  CHECK(big.lmag == Catch::Approx(2000.0 * std::log(2.0)));
  CHECK_THROWS_AS(big.to_complex(), OverflowError);
}

TEST_CASE("additive cancellation is reported through the headroom field") {
  const LogComplex l = LogComplex::from(cplx{1.0, 0.0});
  const LogComplex r = LogComplex::from(cplx{-1.0 + 1e-12, 0.0});
  const LogComplex s = log_add(l, r);
  // |sum| / max(|l|, |r|) = 1e-12
  CHECK(s.add_headroom == Catch::Approx(std::log(1e-12)).margin(1e-6));
  CHECK(s.lmag == Catch::Approx(std::log(1e-12)).margin(1e-6));

  // total cancellation leaves a rounding-scale residue whose phase is
  // flagged untrusted through the headroom floor
  const LogComplex z = log_add(l, LogComplex::from(cplx{-1.0, 0.0}));
  CHECK(z.add_headroom < std::log(kNearZeroFloor));
  CHECK(z.lmag < std::log(1e-15));
}

TEST_CASE("parallel_for covers every index exactly once and forwards throws") {
  std::vector<int> marks(257, 0);
  parallel_for(257, [&](std::size_t i) { marks[i] += 1; });
  for (int m : marks) CHECK(m == 1);

  CHECK_THROWS_AS(parallel_for(8,
                               [&](std::size_t i) {
                                 if (i == 5) throw PoleError("boom");
                               }),
                  PoleError);
}

TEST_CASE("verdicts combine with failure dominating") {
  CHECK(combine(Verdict::PassNumeric, Verdict::PassNumeric) == Verdict::PassNumeric);
  CHECK(combine(Verdict::PassNumeric, Verdict::Inconclusive) == Verdict::Inconclusive);
  CHECK(combine(Verdict::Inconclusive, Verdict::Fail) == Verdict::Fail);
  CHECK(combine({Verdict::PassNumeric, Verdict::PassNumeric, Verdict::Fail,
                 Verdict::Inconclusive}) == Verdict::Fail);
  CHECK(to_string(Verdict::PassNumeric) == "PASS_NUMERIC");
  CHECK(to_string(Verdict::Fail) == "FAIL");
  CHECK(to_string(Verdict::Inconclusive) == "INCONCLUSIVE");
}

TEST_CASE("polynomial evaluation, derivative and coefficient norm") {
  const TaylorPoly p({cplx{1, 0}, cplx{2, 0}, cplx{3, 0}});  // 1 + 2z + 3z^2
  CHECK(std::abs(p(cplx{2, 0}) - cplx{17, 0}) < 1e-14);
  CHECK(p.coeff_norm(2.0) == Catch::Approx(1 + 4 + 12));

  const TaylorPoly d = p.derivative();  // 2 + 6z
  REQUIRE(d.order() == 1);
  CHECK(std::abs(d.coeff(0) - cplx{2, 0}) == 0.0);
  CHECK(std::abs(d.coeff(1) - cplx{6, 0}) == 0.0);

  const TaylorPoly q({cplx{0, 0}, cplx{1, 0}, cplx{0, 0}});  // z with a slack slot
  CHECK(q.order() == 2);
  CHECK(q.degree() == 1);

  CHECK_THROWS_AS(TaylorPoly(std::vector<cplx>(102, cplx{1.0, 0.0})), DegreeCapError);
  CHECK_THROWS_AS(TaylorPoly::monomial(101), DegreeCapError);
}

TEST_CASE("translation recenters a polynomial exactly") {
  const TaylorPoly shifted = TaylorPoly::monomial(2).translate(cplx{1, 0});  // (z+1)^2
  REQUIRE(shifted.order() == 2);
  CHECK(std::abs(shifted.coeff(0) - cplx{1, 0}) < 1e-15);
  CHECK(std::abs(shifted.coeff(1) - cplx{2, 0}) < 1e-15);
  CHECK(std::abs(shifted.coeff(2) - cplx{1, 0}) < 1e-15);

  std::mt19937 rng(20240817);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<cplx> cs(8);
    for (auto& c : cs) c = rand_unit(rng);
    const TaylorPoly p(cs);
    const cplx a = rand_unit(rng);
    const TaylorPoly back = p.translate(a).translate(-a);
    for (int k = 0; k <= p.order(); ++k)
      CHECK(std::abs(back.coeff(k) - p.coeff(k)) < 1e-13);
    // translate agrees with pointwise shifted evaluation
    const cplx z = rand_unit(rng);
    CHECK(std::abs(p.translate(a)(z) - p(z + a)) < 1e-13 * (1.0 + std::abs(p(z + a))));
  }
}

TEST_CASE("product truncation drops tail coefficients and exactness") {
  const TaylorPoly a({cplx{1, 0}, cplx{1, 0}});   // 1 + z
  const TaylorPoly b({cplx{1, 0}, cplx{-1, 0}});  // 1 - z
  const TaylorPoly ab = a.mul_truncated(b, 4);    // 1 - z^2
  CHECK(std::abs(ab.coeff(0) - cplx{1, 0}) == 0.0);
  CHECK(std::abs(ab.coeff(1)) == 0.0);
  CHECK(std::abs(ab.coeff(2) + cplx{1, 0}) == 0.0);
  CHECK(std::abs(ab.coeff(3)) == 0.0);
  CHECK(std::abs(ab.coeff(4)) == 0.0);

  CHECK(same_series(TaylorPoly::monomial(1) + TaylorPoly::constant(cplx{1, 0}), a));
}

TEST_CASE("index sequences: the identity index is always 1") {
  CHECK(SeqSpec::geometric(cplx{5, 0}).at(0) == cplx{1, 0});
  CHECK(SeqSpec::log_shift().at(0) == cplx{1, 0});
  CHECK(SeqSpec::power(2.0).at(0) == cplx{1, 0});
  CHECK(SeqSpec::constant(cplx{3, 0}).at(0) == cplx{1, 0});
  CHECK(SeqSpec::list({cplx{7, 0}}).at(0) == cplx{1, 0});
}

TEST_CASE("index sequences: values and exhaustion") {
  // powers of two are exact in binary floating point
  CHECK(SeqSpec::geometric(cplx{2, 0}).at(50) == cplx{1125899906842624.0, 0});
  // 3^20 < 2^53, so binary powering is exact here too
  CHECK(SeqSpec::geometric(cplx{3, 0}).at(20) == cplx{3486784401.0, 0});
  CHECK(SeqSpec::log_shift().at(3) == cplx{std::log(4.0), 0});
  CHECK(SeqSpec::power(2.0).at(5) == cplx{25.0, 0});

  const SeqSpec l = SeqSpec::list({cplx{2, 0}, cplx{4, 0}, cplx{8, 0}});
  CHECK(l.at(1) == cplx{2, 0});
  CHECK(l.at(3) == cplx{8, 0});
  CHECK_THROWS_AS(l.at(4), SeqExhaustedError);
}

TEST_CASE("expression evaluation matches hand values on the catalog") {
  const FunctionExpr dn = catalog::derivative_powers();
  CHECK(std::abs(evaluate(dn, 3, cplx{0, 2}) - cplx{0, -8}) < 1e-14);  // (2i)^3

  const FunctionExpr tau = catalog::translation_powers();
  CHECK(std::abs(evaluate(tau, 2, cplx{1, 0}) - std::exp(cplx{2, 0})) < 1e-14);

  const FunctionExpr base = catalog::z_plus_exp_ninth();
  CHECK(std::abs(evaluate(base, 1, cplx{0, 0}) - cplx{1.0 / 9.0, 0}) < 1e-16);

  const FunctionExpr fam = catalog::scaled_shift_powers();
  CHECK(std::abs(evaluate(fam, 1, cplx{0, 0}) - cplx{std::log(2.0) / 9.0, 0}) < 1e-16);

  const FunctionExpr mixed = catalog::mixed_5n_9n();
  CHECK(std::abs(evaluate(mixed, 2, cplx{0, 0}) - cplx{1.0 / 81.0, 0}) < 1e-17);

  // index 0 is the identity member for every family
  for (const auto& f : catalog_families()) {
    CHECK(evaluate(f, 0, cplx{0.3, -0.8}) == cplx{1.0, 0.0});
    CHECK(evaluate_log(f, 0, cplx{0.3, -0.8}).lmag == 0.0);
  }
}

TEST_CASE("plain and log evaluation agree across the catalog") {
  for (const auto& f : catalog_families()) {
    for (int n : {1, 2, 5, 9}) {
      for (double r : {0.3, 1.7}) {
        for (int a = 0; a < 12; ++a) {
          const cplx z = std::polar(r, kTwoPi * a / 12.0);
          const cplx direct = evaluate(f, n, z);
          const cplx logged = evaluate_log(f, n, z).to_complex();
          CHECK(std::abs(direct - logged) <= 1e-12 * std::abs(direct) + 1e-300);
        }
      }
    }
  }
}

TEST_CASE("series expansion of catalog members has the right leading terms") {
  const FunctionExpr base = catalog::z_plus_exp_ninth();
  const TaylorPoly t = taylor_coeffs(base, 1, 2);
  CHECK(std::abs(t.coeff(0) - cplx{1.0 / 9.0, 0}) < 1e-15);
  CHECK(std::abs(t.coeff(1) - cplx{10.0 / 9.0, 0}) < 1e-15);
  CHECK(std::abs(t.coeff(2) - cplx{1.0 / 18.0, 0}) < 1e-15);
  CHECK(t.tail_bound() > 0.0);  // the exponential part has a real tail

  const TaylorPoly m = taylor_coeffs(catalog::mixed_5n_9n(), 1, 1);
  CHECK(std::abs(m.coeff(0) - cplx{1.0 / 9.0, 0}) < 1e-15);
  CHECK(std::abs(m.coeff(1) - cplx{5.0 + 1.0 / 9.0, 0}) < 1e-14);

  const TaylorPoly e2 = taylor_coeffs(catalog::translation_powers(), 2, 3);
  CHECK(std::abs(e2.coeff(0) - cplx{1, 0}) < 1e-15);
  CHECK(std::abs(e2.coeff(1) - cplx{2, 0}) < 1e-15);
  CHECK(std::abs(e2.coeff(2) - cplx{2, 0}) < 1e-14);
  CHECK(std::abs(e2.coeff(3) - cplx{4.0 / 3.0, 0}) < 1e-14);

  // polynomial families expand exactly, with no tail
  const TaylorPoly zn = taylor_coeffs(catalog::derivative_powers(), 4, 6);
  CHECK(zn.tail_bound() == 0.0);
  CHECK(std::abs(zn.coeff(4) - cplx{1, 0}) == 0.0);
  CHECK(zn.degree() == 4);
}

TEST_CASE("series partial sums track evaluation within the stated tail") {
  for (const auto& f : catalog_families()) {
    for (int n : {1, 3}) {
      const int order = 24;
      const TaylorPoly t = taylor_coeffs(f, n, order);
      for (double r : {0.2, 0.9}) {
        for (int a = 0; a < 8; ++a) {
          const cplx z = std::polar(r, kTwoPi * a / 8.0);
          const double allowance =
              t.tail_bound() * std::pow(r, 0) + 1e-12 * t.coeff_norm(r);
          CHECK(std::abs(t(z) - evaluate(f, n, z)) <= allowance + 1e-13);
        }
      }
    }
  }
}

TEST_CASE("expression JSON serialization is a fixed point") {
  for (const auto& f : catalog_families()) {
    const auto j = f.to_json();
    const FunctionExpr back = FunctionExpr::from_json(j);
    CHECK(back.to_json() == j);
    // parsed copy evaluates identically
    const cplx z{0.4, 0.7};
    const cplx a = evaluate(f, 3, z), b = evaluate(back, 3, z);
    CHECK(std::abs(a - b) == 0.0);
  }
}

TEST_CASE("expression parse errors carry the failing path") {
  using nlohmann::json;
  auto expect_issue = [&](const json& doc, const std::string& fragment) {
    try {
      FunctionExpr::from_json(doc);
      FAIL("expected a validation error for " + doc.dump());
    } catch (const ValidationError& e) {
      REQUIRE(e.issues.size() == 1);
      CHECK(e.issues[0].find(fragment) != std::string::npos);
    }
  };
  expect_issue(json{{"kind", "frobnicate"}}, "expr");
  expect_issue(json{{"kind", "add"}, {"left", {{"kind", "z"}}}}, "expr");
  expect_issue(json{{"kind", "add"},
                    {"left", {{"kind", "nope"}}},
                    {"right", {{"kind", "z"}}}},
               "expr.left");
  expect_issue(json{{"kind", "z"}, {"bogus", 1}}, "bogus");
  expect_issue(json{{"kind", "seq"}, {"seq", {{"tag", "list"}, {"items", json::array()}}}},
               "items");
}

TEST_CASE("negative power indices are rejected at evaluation time") {
  const FunctionExpr f =
      FunctionExpr::pow(FunctionExpr::z(), IntAffine{1, -2});  // z^(n-2)
  CHECK_THROWS_AS(evaluate(f, 1, cplx{1, 0}), std::invalid_argument);
  CHECK(std::abs(evaluate(f, 3, cplx{2, 0}) - cplx{2, 0}) == 0.0);
}

TEST_CASE("committed catalog fixture matches the builders") {
  std::ifstream in(std::string(ENTIREOPS_FIXTURES) + "/catalog.json");
  REQUIRE(in.good());
  nlohmann::json doc = nlohmann::json::parse(in);
  CHECK(doc["derivative_powers"] == nlohmann::json(catalog::derivative_powers().to_json()));
  CHECK(doc["translation_powers"] ==
        nlohmann::json(catalog::translation_powers().to_json()));
  CHECK(doc["z_plus_exp_ninth"] == nlohmann::json(catalog::z_plus_exp_ninth().to_json()));
  CHECK(doc["scaled_shift_powers"] ==
        nlohmann::json(catalog::scaled_shift_powers().to_json()));
  CHECK(doc["mixed_5n_9n"] == nlohmann::json(catalog::mixed_5n_9n().to_json()));
}

TEST_CASE("circle extrema land on the analytic extrema") {
  // e^z on |z| = 1: modulus e^{cos t}, max e at angle 0, min 1/e at pi
  const FunctionExpr ez = FunctionExpr::exp(ScalarAffine{cplx{0, 0}, cplx{1, 0}});
  const auto ex = circle_extrema(ez, 1, 1.0);
  CHECK(ex.max_modulus() == Catch::Approx(std::exp(1.0)).epsilon(1e-10));
  CHECK(ex.min_modulus() == Catch::Approx(std::exp(-1.0)).epsilon(1e-10));
  CHECK(std::remainder(ex.argmax, kTwoPi) == Catch::Approx(0.0).margin(1e-5));
  CHECK(ex.argmin == Catch::Approx(kPi).margin(1e-5));

  // |z^3| is constant 8 on |z| = 2
  const auto cube = circle_extrema(catalog::derivative_powers(), 3, 2.0);
  CHECK(cube.max_modulus() == Catch::Approx(8.0).epsilon(1e-12));
  CHECK(cube.min_modulus() == Catch::Approx(8.0).epsilon(1e-12));

  // the perturbed shift stays away from zero on |z| = 2
  const auto zb = circle_extrema(catalog::z_plus_exp_ninth(), 1, 2.0);
  CHECK(zb.min_modulus() > 2.0 - std::exp(2.0) / 9.0);
  CHECK(zb.max_modulus() == Catch::Approx(2.0 + std::exp(2.0) / 9.0).epsilon(1e-9));
}

TEST_CASE("growth metrics recover exponential type") {
  const FunctionExpr e3 = FunctionExpr::exp(ScalarAffine{cplx{0, 0}, cplx{3, 0}});
  const GrowthMetrics g = growth_metrics(e3, 1, 10.0);
  CHECK(g.type_estimate == Catch::Approx(3.0).margin(0.01));
  CHECK(g.max_log_modulus == Catch::Approx(30.0).margin(0.05));

  // the max modulus saturates to +inf in linear scale but the log stays exact
  const GrowthMetrics big = growth_metrics(e3, 1, 300.0);
  CHECK(std::isinf(big.max_modulus));
  CHECK(big.max_log_modulus == Catch::Approx(900.0).margin(0.5));
}

TEST_CASE("contour integration picks off residues") {
  QuadratureSpec q;
  auto inv = [](cplx t) { return cplx{1.0, 0.0} / t; };
  const QuadResult r1 = contour_integral(inv, q);
  CHECK(r1.status == QuadStatus::Converged);
  CHECK(std::abs(r1.value - cplx{1, 0}) < 1e-12);

  auto expt = [](cplx t) { return std::exp(t) / t; };
  const QuadResult r2 = contour_integral(expt, q);
  CHECK(std::abs(r2.value - cplx{1, 0}) < 1e-12);

  auto quad = [](cplx t) { return t * t; };  // no residue
  const QuadResult r3 = contour_integral(quad, q);
  CHECK(std::abs(r3.value) < 1e-12);

  CHECK(r1.history.size() >= 2);
  CHECK(r1.nodes >= 2 * q.initial_nodes);
}

TEST_CASE("contour moments reproduce rational coefficients") {
  // f(t) = 1/t + 2/t^2 + 6/t^3 has moment sequence 1, 2, 3
  auto f = [](cplx t) {
    const cplx i1 = cplx{1, 0} / t;
    return i1 + 2.0 * i1 * i1 + 6.0 * i1 * i1 * i1;
  };
  QuadratureSpec q;
  const SeriesQuadResult r = contour_moments(f, q, 4, 1.5);
  REQUIRE(r.status == QuadStatus::Converged);
  CHECK(std::abs(r.series.coeff(0) - cplx{1, 0}) < 1e-12);
  CHECK(std::abs(r.series.coeff(1) - cplx{2, 0}) < 1e-12);
  CHECK(std::abs(r.series.coeff(2) - cplx{3, 0}) < 1e-12);
  CHECK(std::abs(r.series.coeff(3)) < 1e-12);
  CHECK(std::abs(r.series.coeff(4)) < 1e-12);
  CHECK_FALSE(r.series.is_exact());

  CHECK_THROWS_AS(contour_moments(f, q, 101, 1.0), DegreeCapError);
}

TEST_CASE("quadrature rescales with the integrand") {
  // the convergence scale is homogeneous: scaling f by 1e8 scales the result
  QuadratureSpec q;
  auto f = [](cplx t) { return std::exp(t) / t; };
  auto g = [](cplx t) { return 1e8 * std::exp(t) / t; };
  const QuadResult a = contour_integral(f, q), b = contour_integral(g, q);
  CHECK(a.nodes == b.nodes);
  CHECK(std::abs(b.value - 1e8 * a.value) <= 1e-4 * std::abs(b.value));
}

#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "tdho/classical.hpp"

using namespace tdho;

TEST_CASE("zero coefficient: zeta1 = 1, zeta2 = t") {
  const auto cs = solve_classical(SigmaModel::zero(), 10.0, 1e-10);
  const ZetaValues z = zeta_at(cs, 3.5);
  CHECK(z.zeta1 == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(z.zeta2 == doctest::Approx(3.5).epsilon(1e-13));
  CHECK(std::abs(z.dzeta1) < 1e-13);
  CHECK(z.dzeta2 == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("constant coefficient: trig pair") {
  const auto cs = solve_classical(SigmaModel::constant(1.0), 10.0, 1e-10);
  for (double t : {0.5, 2.0, 7.25, 10.0}) {
    const ZetaValues z = zeta_at(cs, t);
    CHECK(z.zeta1 == doctest::Approx(std::cos(t)).epsilon(1e-9));
    CHECK(z.zeta2 == doctest::Approx(std::sin(t)).epsilon(1e-9));
  }
}

TEST_CASE("inverse-square tail matches the matched trig/power-law solution") {
  const auto cs = solve_classical(SigmaModel::inverse_square(0.09, 1.0), 1e4, 1e-9);
  const oracles::MatchedPowerPair oracle(0.09, 1.0);
  for (double t : {0.4, 2.0, 10.0, 100.0, 1234.5, 1e4}) {
    const ZetaValues z = zeta_at(cs, t);
    CHECK(std::abs(z.zeta2 - oracle.zeta2(t)) < 1e-6 * std::abs(oracle.zeta2(t)));
    CHECK(std::abs(z.zeta1 - oracle.zeta1(t)) < 1e-6 * (std::abs(oracle.zeta1(t)) + 1.0));
  }
  // zeta2/t^0.9 approaches the matched constant.
  const ZetaValues z = zeta_at(cs, 1e4);
  CHECK(z.zeta2 / std::pow(1e4, 0.9) == doctest::Approx(oracle.B2).epsilon(1e-4));
}

TEST_CASE("Wronskian stays at 1 at random interpolated times") {
  const auto cs = solve_classical(SigmaModel::inverse_square(0.09, 1.0), 1e4, 1e-9);
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> u(std::log(1e-2), std::log(1e4));
  for (int i = 0; i < 1000; ++i) {
    const double t = std::exp(u(rng));
    CHECK(std::abs(zeta_at(cs, t).wronskian() - 1.0) < 10.0 * cs.tol);
  }
  CHECK_THROWS_AS((void)zeta_at(cs, 2e4), Error);
  CHECK_THROWS_AS((void)zeta_at(cs, -1.0), Error);
}

TEST_CASE("closed-form deceleration exponent") {
  CHECK(closed_form_lambda(3.0 / 16.0) == doctest::Approx(0.25).epsilon(1e-14));
  CHECK(closed_form_lambda(0.09) == doctest::Approx(0.1).epsilon(1e-14));
  CHECK(closed_form_lambda(1e-9) < 2e-9);
  CHECK_THROWS_AS((void)closed_form_lambda(0.3), Error);
  CHECK_THROWS_AS((void)closed_form_lambda(0.0), Error);
}

TEST_CASE("asymptotics of the free pair") {
  const auto cs = solve_classical(SigmaModel::zero(), 1e3, 1e-10);
  const auto asym = extract_asymptotics(cs, {10.0, 1e3});
  CHECK(std::abs(asym.lambda) < 1e-10);
  CHECK(asym.c2_plus == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(asym.c1_plus == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(asym.zeta1_power_law_ok);
}

TEST_CASE("asymptotics of the inverse-square family") {
  const auto cs = solve_classical(SigmaModel::inverse_square(0.09, 1.0), 1e4, 1e-9);
  const auto asym = extract_asymptotics(cs, {100.0, 1e4});
  CHECK(std::abs(asym.lambda - 0.1) < 1e-4);
  const oracles::MatchedPowerPair oracle(0.09, 1.0);
  CHECK(asym.c2_plus == doctest::Approx(oracle.B2).epsilon(1e-4));
  CHECK(asym.c3_plus == doctest::Approx(std::abs(oracle.A2)).epsilon(1e-2));
  // The regular-at-zero zeta1 of this family picks up a t^(1-lambda)
  // component (the matched B1 below), so its pure power law fails the audit.
  CHECK(std::abs(oracle.B1) > 0.2);
  CHECK(!asym.zeta1_power_law_ok);
}

TEST_CASE("lens-power family satisfies the full power-law audit") {
  const auto cs = solve_classical(SigmaModel::lens_power(0.1), 1e4, 1e-9);
  const auto asym = extract_asymptotics(cs, {100.0, 1e4});
  CHECK(std::abs(asym.lambda - 0.1) < 1e-3);
  CHECK(asym.zeta1_power_law_ok);
  CHECK(asym.c1_plus == doctest::Approx(1.0).epsilon(1e-3));
  // zeta2 against the quadrature oracle.
  const ZetaValues z = zeta_at(cs, 500.0);
  CHECK(z.zeta2 == doctest::Approx(oracles::lens_zeta2_oracle(0.1, 500.0)).epsilon(1e-8));
}

TEST_CASE("trapped trajectory is rejected") {
  const auto cs = solve_classical(SigmaModel::constant(1.0), 50.0, 1e-10);
  CHECK_THROWS_AS((void)extract_asymptotics(cs, {5.0, 50.0}), Error);
}

TEST_CASE("asymptotic audit: correction term stays bounded") {
  const auto cs = solve_classical(SigmaModel::inverse_square(0.09, 1.0), 1e4, 1e-9);
  const auto asym = extract_asymptotics(cs, {100.0, 1e4});
  // |zeta2 - c2 t^(1-l)| / t^l over the last decade of the window.
  double lo = 1e30, hi = 0.0;
  for (double t = 1e3; t <= 1e4; t *= 1.2) {
    const double corr =
        std::abs(zeta_at(cs, t).zeta2 - asym.c2_plus * std::pow(t, 1.0 - asym.lambda)) /
        std::pow(t, asym.lambda);
    lo = std::min(lo, corr);
    hi = std::max(hi, corr);
  }
  CHECK(hi < 10.0 * (lo + 1e-6));
  CHECK(hi < 1.0);
}

TEST_CASE("unattainable tolerance raises StepFailure") {
  CHECK_THROWS_AS((void)solve_classical(SigmaModel::constant(1.0), 1.0, 1e-30), Error);
}

TEST_CASE("tabulated sigma interpolates exactly at and between knots") {
  const auto m = SigmaModel::tabulated({{0.0, 0.2}, {1.0, 0.1}, {3.0, 0.0}});
  CHECK(m(0.0) == doctest::Approx(0.2));
  CHECK(m(1.0) == doctest::Approx(0.1));
  CHECK(m(0.5) == doctest::Approx(0.15));
  CHECK(m(2.0) == doctest::Approx(0.05));
  CHECK(m(10.0) == doctest::Approx(0.0));  // constant extension
  CHECK_THROWS_AS((void)SigmaModel::tabulated({{0.0, 0.1}}), Error);
  CHECK_THROWS_AS((void)SigmaModel::tabulated({{0.0, 0.1}, {0.0, 0.2}}), Error);
}

#include <doctest.h>

#include <cmath>
#include <limits>

#include "tdho/params.hpp"

using namespace tdho;

TEST_CASE("lambda thresholds reproduce the printed constants") {
  CHECK(lambda_threshold(1) == doctest::Approx((13.0 - std::sqrt(145.0)) / 4.0).epsilon(1e-14));
  CHECK(std::abs(lambda_threshold(1) - 0.2396) < 1e-3);
  CHECK(std::abs(lambda_threshold(2) - 0.1492) < 1e-3);
  CHECK(std::abs(lambda_threshold(3) - 0.0221) < 1e-3);
  CHECK_THROWS_AS((void)lambda_threshold(4), Error);
}

TEST_CASE("thresholds are certified roots of their polynomials") {
  const double l1 = lambda_threshold(1);
  CHECK(std::abs((2.0 * l1 - 13.0) * l1 + 3.0) < 1e-7);
  const double l2 = lambda_threshold(2);
  CHECK(std::abs((2.0 * l2 - 7.0) * l2 + 1.0) < 1e-7);
  const double l3 = lambda_threshold(3);
  CHECK(std::abs(((36.0 * l3 - 78.0) * l3 + 47.0) * l3 - 1.0) < 1e-7);
}

TEST_CASE("alpha upper bound") {
  CHECK(alpha_max(1, 0.0) == doctest::Approx(1.0));
  CHECK(alpha_max(2, 0.1) == doctest::Approx(1.0));
  CHECK(alpha_max(3, 0.0) == doctest::Approx(5.0 / 6.0).epsilon(1e-14));
  CHECK_THROWS_AS((void)alpha_max(1, 0.3), Error);
  CHECK_THROWS_AS((void)alpha_max(3, 0.1), Error);
}

TEST_CASE("decay-weight window formulas") {
  {
    const BWindow w = b_window(2, 0.0, 1.0 - 1e-12);
    CHECK(w.lo_eq16 == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(w.lo_strict == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(w.hi == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(!w.strict_exceeds_eq16);
    CHECK(!w.empty_strict);
  }
  {
    const BWindow w = b_window(1, 0.0, 1.0 - 1e-12);
    CHECK(w.lo_eq16 == doctest::Approx(0.25).epsilon(1e-9));
    CHECK(w.lo_strict == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(w.strict_exceeds_eq16);
  }
  {
    const BWindow w = b_window(1, 0.1, 0.95);
    CHECK(w.lo_eq16 == doctest::Approx(0.47).epsilon(1e-12));
    CHECK(w.lo_strict == doctest::Approx(0.6).epsilon(1e-12));
    CHECK(w.hi == doctest::Approx(0.86).epsilon(1e-12));
  }
}

TEST_CASE("strict-vs-headline window flag crosses at (5-sqrt(17))/4 for n=1") {
  const double crossover = (5.0 - std::sqrt(17.0)) / 4.0;
  CHECK(b_window(1, crossover - 1e-3, 0.9).strict_exceeds_eq16);
  CHECK(!b_window(1, crossover + 1e-3, 0.9).strict_exceeds_eq16);
  for (double l : {0.0, 0.05, 0.10, 0.14}) {
    CHECK(!b_window(2, l, 0.9).strict_exceeds_eq16);
  }
  for (double l : {0.0, 0.01, 0.02}) {
    CHECK(!b_window(3, l, 0.5).strict_exceeds_eq16);
  }
}

TEST_CASE("admissible pair identity and verdicts") {
  {
    const auto p = admissible_pair(1, 0.0, 4.0, 0.9);
    CHECK(p.beta_n == doctest::Approx(8.0).epsilon(1e-14));
    CHECK(p.k1 == doctest::Approx(0.25).epsilon(1e-14));
    // admissibility identity 2/beta = n (1/2 - 1/alpha_n)
    CHECK(2.0 / p.beta_n == doctest::Approx(1.0 * (0.5 - 0.25)).epsilon(1e-14));
  }
  {
    const auto p = admissible_pair(2, 0.0, std::numeric_limits<double>::infinity(), 0.9);
    CHECK(p.k1 == doctest::Approx(1.0));
    CHECK(!p.verdicts.at("sobolev_2k1_lt_n"));
    CHECK(!p.all_ok());
  }
  {
    const auto p = admissible_pair(1, 0.1, 4.0, 0.95);
    CHECK(p.verdicts.at("alpha_n_above_scaling"));   // 4 > 2/0.9
    CHECK(p.verdicts.at("k1_above_n_lambda_half"));  // 0.25 > 0.05
    CHECK(p.all_ok());
  }
}

TEST_CASE("default alpha_n keeps every strict inequality comfortable") {
  for (int n : {1, 2, 3}) {
    for (double frac : {0.0, 0.5, 0.9}) {
      const double lambda = frac * lambda_threshold(n) * 0.999;
      const double alpha = 0.95 * alpha_max(n, lambda);
      const double an = default_alpha_n(n, lambda, alpha);
      const auto p = admissible_pair(n, lambda, an, alpha);
      CHECK(p.all_ok());
    }
  }
}

TEST_CASE("polynomial ledger at lambda = 0") {
  const auto led = cubic_ledger(1, 0.0);
  CHECK(led.by_name("b_window_n3").value == doctest::Approx(-4.0));
  CHECK(led.by_name("pair_exists_n1").value == doctest::Approx(3.0));
  CHECK(led.by_name("pair_exists_n2").value == doctest::Approx(1.0));
  CHECK(led.by_name("pair_exists_n3").value == doctest::Approx(-1.0));
  CHECK(led.by_name("strichartz_tail_n3").value == doctest::Approx(-10.0));
  for (const auto& c : led.checks) CHECK(c.satisfied);
}

TEST_CASE("polynomial ledger near and beyond the n=1 threshold") {
  const double thr = lambda_threshold(1);
  CHECK(std::abs(cubic_ledger(1, thr).by_name("pair_exists_n1").value) < 1e-7);
  CHECK(cubic_ledger(1, 0.3).by_name("pair_exists_n1").value == doctest::Approx(-0.72));
  CHECK(!cubic_ledger(1, 0.3).by_name("pair_exists_n1").satisfied);
}

TEST_CASE("ledger verdicts flip exactly at each dimension's threshold") {
  for (int n : {1, 2, 3}) {
    const double thr = lambda_threshold(n);
    CHECK(cubic_ledger(n, std::max(0.0, thr - 5e-3)).all_satisfied_for(n));
    CHECK(!cubic_ledger(n, thr + 5e-3).all_satisfied_for(n));
  }
}

TEST_CASE("parameter report composes the pieces") {
  const auto r = build_parameter_report(1, 0.1);
  CHECK(r.lambda_admissible);
  CHECK(r.admissible);
  CHECK(r.rho_l == doctest::Approx(2.0 / 0.9).epsilon(1e-14));
  CHECK(r.window.lo_strict == doctest::Approx(0.6).epsilon(1e-12));
  CHECK(r.b > r.window.lo_strict);
  CHECK(r.b < r.window.hi);

  const auto bad = build_parameter_report(1, 0.3);
  CHECK(!bad.lambda_admissible);
  CHECK(!bad.admissible);
}

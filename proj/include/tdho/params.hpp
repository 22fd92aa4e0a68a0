#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include "tdho/errors.hpp"

namespace tdho {

// Admissibility conditions for the deceleration exponent lambda, the
// auxiliary exponents (alpha, alpha_n, beta_n) and the decay weight b.
// Every threshold is either closed-form or a certified bisection root of a
// low-degree polynomial.

namespace detail {

/// Bisection with sign-change bracketing; certified to interval width tol.
inline double bisect(const std::function<double(double)>& f, double a, double b,
                     double tol = 1e-12) {
  double fa = f(a), fb = f(b);
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  if (fa * fb > 0.0) fail(ErrorCode::OutOfRange, "bisection bracket has no sign change");
  for (int i = 0; i < 200 && (b - a) > tol; ++i) {
    const double m = 0.5 * (a + b);
    const double fm = f(m);
    if (fm == 0.0) return m;
    if (fa * fm < 0.0) {
      b = m;
      fb = fm;
    } else {
      a = m;
      fa = fm;
    }
  }
  return 0.5 * (a + b);
}

}  // namespace detail

/// Largest admissible lambda per dimension:
///   n=1: (13 - sqrt(145))/4,  n=2: (7 - sqrt(41))/4,
///   n=3: smallest positive root of 36 l^3 - 78 l^2 + 47 l - 1.
inline double lambda_threshold(int n) {
  switch (n) {
    case 1: return (13.0 - std::sqrt(145.0)) / 4.0;
    case 2: return (7.0 - std::sqrt(41.0)) / 4.0;
    case 3:
      return detail::bisect(
          [](double l) { return ((36.0 * l - 78.0) * l + 47.0) * l - 1.0; }, 0.0, 0.05, 1e-12);
    default: fail(ErrorCode::OutOfRange, "dimension must be 1, 2 or 3");
  }
}

/// Upper bound for alpha: min(1, 1/2 + 1/(n(1-lambda)) - n lambda/4); the
/// min is attained at 1 for n = 1, 2 and at the second branch for n = 3.
inline double alpha_max(int n, double lambda) {
  if (n < 1 || n > 3) fail(ErrorCode::OutOfRange, "dimension must be 1, 2 or 3");
  if (!(lambda >= 0.0) || lambda >= lambda_threshold(n))
    fail(ErrorCode::LambdaOutOfRange, "lambda outside [0, lambda_threshold(n))");
  if (n == 3) return 0.5 + 1.0 / (3.0 * (1.0 - lambda)) - 0.75 * lambda;
  return 1.0;
}

/// Decay-weight window.  The headline window is
///   (n(-2 l^2 + l + 1) + 8 l)/4 < b < l + alpha (1 - 2 l);
/// the strict lower bound additionally enforces b > 1/2 + lambda, which the
/// contraction estimates require.  The discrepancy flag marks parameter
/// points where the strict bound exceeds the headline one (n = 1 with
/// lambda below (5 - sqrt(17))/4).
struct BWindow {
  double lo_eq16 = 0.0;
  double lo_strict = 0.0;
  double hi = 0.0;
  bool empty_eq16 = false;
  bool empty_strict = false;
  bool strict_exceeds_eq16 = false;
};

inline BWindow b_window(int n, double lambda, double alpha) {
  if (!(alpha > 0.0) || alpha >= alpha_max(n, lambda))
    fail(ErrorCode::OutOfRange, "alpha outside (0, alpha_max)");
  BWindow w;
  w.lo_eq16 = (n * (-2.0 * lambda * lambda + lambda + 1.0) + 8.0 * lambda) / 4.0;
  w.hi = lambda + alpha * (1.0 - 2.0 * lambda);
  w.lo_strict = std::max(w.lo_eq16, 0.5 + lambda);
  w.strict_exceeds_eq16 = w.lo_strict > w.lo_eq16 + 1e-15;
  w.empty_eq16 = !(w.lo_eq16 < w.hi);
  w.empty_strict = !(w.lo_strict < w.hi);
  return w;
}

/// Pair (beta_n, alpha_n) from the admissibility identity
/// 2/beta_n = n (1/2 - 1/alpha_n), with every side condition as a verdict.
struct AdmissiblePair {
  double alpha_n = 0.0;
  double beta_n = 0.0;
  double k1 = 0.0;
  std::map<std::string, bool> verdicts;

  bool all_ok() const {
    for (const auto& [k, v] : verdicts)
      if (!v) return false;
    return true;
  }
};

inline AdmissiblePair admissible_pair(int n, double lambda, double alpha_n, double alpha) {
  if (n < 1 || n > 3) fail(ErrorCode::OutOfRange, "dimension must be 1, 2 or 3");
  AdmissiblePair p;
  p.alpha_n = alpha_n;
  const double inv = std::isinf(alpha_n) ? 0.0 : 1.0 / alpha_n;
  p.k1 = n * (0.5 - inv);
  p.beta_n = p.k1 > 0.0 ? 2.0 / p.k1 : std::numeric_limits<double>::infinity();
  p.verdicts["alpha_n_gt_2"] = alpha_n > 2.0;
  p.verdicts["alpha_n_above_scaling"] = alpha_n > 2.0 / (1.0 - lambda);  // alpha_n > n rho_L
  p.verdicts["inv_alpha_n_below_half_1ml"] = inv < 0.5 * (1.0 - lambda);
  p.verdicts["k1_above_n_lambda_half"] = p.k1 > 0.5 * n * lambda;
  p.verdicts["k1_plus_2alpha_bound"] = p.k1 + 2.0 * alpha < 1.0 + 2.0 / (n * (1.0 - lambda));
  p.verdicts["sobolev_2k1_lt_n"] = 2.0 * p.k1 < static_cast<double>(n);
  return p;
}

/// Default alpha_n: midpoint in 1/alpha_n of the feasible interval.
inline double default_alpha_n(int n, double lambda, double alpha) {
  const double inv_hi = 0.5 * (1.0 - lambda);
  const double slack = 1.0 + 2.0 / (n * (1.0 - lambda)) - 2.0 * alpha;
  const double inv_lo = std::max(0.0, 0.5 - slack / n);
  if (!(inv_lo < inv_hi)) fail(ErrorCode::OutOfRange, "no admissible alpha_n for these parameters");
  return 2.0 / (inv_lo + inv_hi);
}

/// Sign conditions on the feasibility polynomials.  Satisfied(lambda) must
/// hold for the pair/window construction in the flagged dimension.
struct PolynomialCheck {
  std::string name;
  int dimension;  // which n the condition belongs to
  double value = 0.0;
  bool satisfied = false;
};

struct CubicLedger {
  std::vector<PolynomialCheck> checks;

  bool all_satisfied_for(int n) const {
    for (const auto& c : checks)
      if (c.dimension == n && !c.satisfied) return false;
    return true;
  }
  const PolynomialCheck& by_name(const std::string& name) const {
    for (const auto& c : checks)
      if (c.name == name) return c;
    fail(ErrorCode::OutOfRange, "unknown polynomial name " + name);
  }
};

inline CubicLedger cubic_ledger(int n, double lambda) {
  if (!(lambda >= 0.0 && lambda < 0.5)) fail(ErrorCode::OutOfRange, "lambda outside [0, 1/2)");
  const double l = lambda;
  CubicLedger led;
  auto add = [&](const std::string& name, int dim, double value, bool want_negative) {
    led.checks.push_back({name, dim, value, want_negative ? value < 0.0 : value > 0.0});
  };
  add("b_window_n3", 3, ((18.0 * l - 39.0) * l + 29.0) * l - 4.0, true);
  add("pair_exists_n1", 1, (2.0 * l - 13.0) * l + 3.0, false);
  add("pair_exists_n2", 2, (2.0 * l - 7.0) * l + 1.0, false);
  add("pair_exists_n3", 3, ((36.0 * l - 78.0) * l + 47.0) * l - 1.0, true);
  add("strichartz_tail_n3", 3, ((18.0 * l - 51.0) * l + 47.0) * l - 10.0, true);
  (void)n;
  return led;
}

/// One-stop admissibility report for a parameter point.
struct ParameterReport {
  int n = 1;
  double lambda = 0.0;
  double rho_l = 0.0;
  double lambda_thresh = 0.0;
  double alpha = 0.0;
  double alpha_maximum = 0.0;
  BWindow window;
  AdmissiblePair pair;
  double b = 0.0;  // chosen representative b (midpoint of the strict window)
  CubicLedger cubics;
  bool lambda_admissible = false;
  bool admissible = false;
};

inline ParameterReport build_parameter_report(int n, double lambda, double alpha_override = 0.0,
                                              double b_override = 0.0,
                                              double alpha_n_override = 0.0) {
  if (n < 1 || n > 3) fail(ErrorCode::OutOfRange, "dimension must be 1, 2 or 3");
  if (!(lambda >= 0.0 && lambda < 0.5)) fail(ErrorCode::OutOfRange, "lambda outside [0, 1/2)");
  ParameterReport r;
  r.n = n;
  r.lambda = lambda;
  r.rho_l = 2.0 / (n * (1.0 - lambda));
  r.lambda_thresh = lambda_threshold(n);
  r.lambda_admissible = lambda < r.lambda_thresh;
  r.cubics = cubic_ledger(n, lambda);
  if (!r.lambda_admissible) {
    r.admissible = false;
    return r;
  }
  r.alpha_maximum = alpha_max(n, lambda);
  r.alpha = alpha_override > 0.0 ? alpha_override : 0.95 * r.alpha_maximum;
  if (!(r.alpha > 0.0 && r.alpha < r.alpha_maximum))
    fail(ErrorCode::OutOfRange, "alpha override outside (0, alpha_max)");
  r.window = b_window(n, lambda, r.alpha);
  const double alpha_n =
      alpha_n_override > 0.0 ? alpha_n_override : default_alpha_n(n, lambda, r.alpha);
  r.pair = admissible_pair(n, lambda, alpha_n, r.alpha);
  r.b = b_override > 0.0 ? b_override
                         : (r.window.empty_strict ? r.window.lo_strict
                                                  : 0.5 * (r.window.lo_strict + r.window.hi));
  r.admissible = r.lambda_admissible && !r.window.empty_strict && r.pair.all_ok() &&
                 r.cubics.all_satisfied_for(n);
  return r;
}

}  // namespace tdho

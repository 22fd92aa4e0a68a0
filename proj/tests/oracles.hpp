#pragma once

// Closed-form reference solutions shared by the unit and acceptance suites.
// Everything here is independent of the library's propagation path: trig /
// power-law matching for the oscillator pair, and the exact free-Gaussian
// evolution for the split-step and factorization checks.

#include <cmath>
#include <complex>
#include <functional>
#include <vector>

#include "tdho/classical.hpp"
#include "tdho/field.hpp"

namespace oracles {

using tdho::Complex;

/// Fundamental pair for sigma = sigma0 on [0, r0], sigma0/t^2 beyond:
/// trig functions matched at r0 to the power basis {t^lambda, t^(1-lambda)}.
struct MatchedPowerPair {
  double sigma0, r0, lambda;
  double A1, B1;  // zeta1 = A1 t^lambda + B1 t^(1-lambda) for t >= r0
  double A2, B2;  // zeta2 = A2 t^lambda + B2 t^(1-lambda)

  explicit MatchedPowerPair(double sigma0_, double r0_ = 1.0) : sigma0(sigma0_), r0(r0_) {
    lambda = 0.5 * (1.0 - std::sqrt(1.0 - 4.0 * sigma0));
    const double w = std::sqrt(sigma0);
    // Values and derivatives at r0 from the trig region.
    const double v1 = std::cos(w * r0);
    const double d1 = -w * std::sin(w * r0);
    const double v2 = std::sin(w * r0) / w;
    const double d2 = std::cos(w * r0);
    auto match = [&](double v, double d, double& A, double& B) {
      // A r0^l + B r0^(1-l) = v ; (l A r0^l + (1-l) B r0^(1-l))/r0 = d
      const double pl = std::pow(r0, lambda);
      const double ph = std::pow(r0, 1.0 - lambda);
      B = (d * r0 - lambda * v) / ((1.0 - 2.0 * lambda) * ph);
      A = (v - B * ph) / pl;
    };
    match(v1, d1, A1, B1);
    match(v2, d2, A2, B2);
  }

  double zeta1(double t) const {
    if (t <= r0) return std::cos(std::sqrt(sigma0) * t);
    return A1 * std::pow(t, lambda) + B1 * std::pow(t, 1.0 - lambda);
  }
  double zeta2(double t) const {
    const double w = std::sqrt(sigma0);
    if (t <= r0) return std::sin(w * t) / w;
    return A2 * std::pow(t, lambda) + B2 * std::pow(t, 1.0 - lambda);
  }
  double dzeta1(double t) const {
    const double w = std::sqrt(sigma0);
    if (t <= r0) return -w * std::sin(w * t);
    return (lambda * A1 * std::pow(t, lambda) + (1.0 - lambda) * B1 * std::pow(t, 1.0 - lambda)) / t;
  }
  double dzeta2(double t) const {
    const double w = std::sqrt(sigma0);
    if (t <= r0) return std::cos(w * t);
    return (lambda * A2 * std::pow(t, lambda) + (1.0 - lambda) * B2 * std::pow(t, 1.0 - lambda)) / t;
  }
};

/// Exact free evolution (i d/dt u = -u_xx/2) of A exp(-x^2/(2 w^2)) in 1d:
/// u(t,x) = A w (w^2 + i t)^(-1/2) exp(-x^2 / (2 (w^2 + i t))).
inline tdho::Field free_gaussian_1d(const tdho::Grid& g, double t, double amp, double width) {
  const Complex a(width * width, t);
  const Complex pref = amp * width / std::sqrt(a);
  tdho::Field out = tdho::make_field(g, [&](const std::array<double, 3>& x) {
    return pref * std::exp(-x[0] * x[0] / (2.0 * a));
  });
  out.time_tag = t;
  return out;
}

/// Exact power-law pair zeta1 = c1 t^lambda, zeta2 = c2 t^(1-lambda) with
/// unit Wronskian (c1 c2 = 1/(1-2 lambda)); effective sigma is
/// lambda(1-lambda)/t^2.
inline tdho::ClassicalSolution pure_power_solution(double lambda, double c2, double t_lo,
                                                   double t_hi, std::size_t n = 2000) {
  const double c1 = 1.0 / ((1.0 - 2.0 * lambda) * c2);
  std::vector<double> ts(n);
  const double r = std::pow(t_hi / t_lo, 1.0 / (n - 1));
  for (std::size_t i = 0; i < n; ++i) ts[i] = t_lo * std::pow(r, static_cast<double>(i));
  return tdho::ClassicalSolution::from_callables(
      [=](double t) { return c1 * std::pow(t, lambda); },
      [=](double t) { return c1 * lambda * std::pow(t, lambda - 1.0); },
      [=](double t) { return c2 * std::pow(t, 1.0 - lambda); },
      [=](double t) { return c2 * (1.0 - lambda) * std::pow(t, -lambda); },
      [=](double t) { return lambda * (1.0 - lambda) / (t * t); }, ts);
}

/// Numerical quadrature oracle for the lens-power pair:
/// zeta1 = (1+t^2)^(lambda/2), zeta2 = zeta1 * Int_0^t (1+s^2)^(-lambda) ds.
inline double lens_zeta2_oracle(double lambda, double t) {
  // Adaptive Simpson on the smooth integrand.
  std::function<double(double, double, double, double, double, double, int)> rec =
      [&](double a, double b, double fa, double fm, double fb, double whole, int depth) {
        const double m = 0.5 * (a + b);
        const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
        auto f = [&](double s) { return std::pow(1.0 + s * s, -lambda); };
        const double flm = f(lm), frm = f(rm);
        const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
        const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
        if (depth > 40 || std::abs(left + right - whole) < 1e-14 * std::abs(left + right) + 1e-300)
          return left + right + (left + right - whole) / 15.0;
        return rec(a, m, fa, flm, fm, left, depth + 1) + rec(m, b, fm, frm, fb, right, depth + 1);
      };
  auto f = [&](double s) { return std::pow(1.0 + s * s, -lambda); };
  const double fa = f(0.0), fb = f(t), fm = f(0.5 * t);
  const double whole = t / 6.0 * (fa + 4.0 * fm + fb);
  const double integral = rec(0.0, t, fa, fm, fb, whole, 0);
  return std::pow(1.0 + t * t, 0.5 * lambda) * integral;
}

}  // namespace oracles

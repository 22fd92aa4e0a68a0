#pragma once

#include <cmath>
#include <functional>
#include <optional>

#include "tdho/classical.hpp"
#include "tdho/field.hpp"
#include "tdho/transforms.hpp"

namespace tdho {

/// Analytic final-state family: hat_u_plus(xi) = amp * exp(-|xi|^2/(2 w^2)).
struct GaussianFamily {
  double amplitude = 0.05;
  double width = 1.0;

  Complex operator()(const std::array<double, 3>& xi) const {
    const double r2 = xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2];
    return Complex(amplitude * std::exp(-r2 / (2.0 * width * width)), 0.0);
  }
};

/// Final-state data hat_u_plus with the coupling and the classical exponents
/// it will be propagated with.  rho_l is the long-range critical power
/// 2/(n(1-lambda)); c_plus = |c2_plus|^(1/(1-lambda)) normalizes the
/// logarithmic phase.
struct ProfileSpec {
  Field u_plus_hat;
  double mu = 0.0;
  int n = 1;
  double lambda = 0.0;
  double c2_plus = 1.0;
  double rho_l = 2.0;
  double c_plus = 1.0;
  // Analytic generator when the data comes from a closed-form family; lets
  // profile objects be evaluated on arbitrary (e.g. time-rescaled) grids.
  std::optional<std::function<Complex(const std::array<double, 3>&)>> family;

  static ProfileSpec make(Field data, double mu, int n, double lambda, double c2_plus) {
    ProfileSpec s;
    s.u_plus_hat = std::move(data);
    s.mu = mu;
    s.n = n;
    s.lambda = lambda;
    s.c2_plus = c2_plus;
    s.finalize();
    return s;
  }

  static ProfileSpec from_family(const GaussianFamily& fam, const Grid& grid, double mu, int n,
                                 double lambda, double c2_plus) {
    ProfileSpec s = make(make_field(grid, fam), mu, n, lambda, c2_plus);
    s.family = fam;
    return s;
  }

  void finalize() {
    if (n < 1 || n > 3) fail(ErrorCode::ValidationError, "dimension must be 1, 2 or 3");
    if (u_plus_hat.grid.dim != n)
      fail(ErrorCode::ValidationError, "final-state data dimension mismatch");
    if (!(lambda >= 0.0 && lambda < 0.5))
      fail(ErrorCode::ValidationError, "lambda outside [0, 1/2)");
    if (c2_plus == 0.0) fail(ErrorCode::ValidationError, "c2_plus must be nonzero");
    if (!u_plus_hat.finite()) fail(ErrorCode::NonFinite, "final-state data must be finite");
    rho_l = 2.0 / (n * (1.0 - lambda));
    c_plus = std::pow(std::abs(c2_plus), 1.0 / (1.0 - lambda));
  }
};

/// Pointwise long-range nonlinearity mu |f|^rho_l f (0 at 0).
inline Field nonlinearity(const Field& f, const ProfileSpec& spec) {
  Field out = f;
  const double mu = spec.mu;
  const double rho = spec.rho_l;
  for (auto& z : out.values) {
    const double a = std::abs(z);
    z = a > 0.0 ? Complex(mu * std::pow(a, rho)) * z : Complex(0.0, 0.0);
  }
  return out;
}

namespace detail {

inline Field hat_profile_values(const ProfileSpec& spec, double t, const Field& data) {
  Field out = data;
  const double phase_scale = spec.mu * std::log(t) / spec.c_plus;
  const double rho = spec.rho_l;
  for (auto& z : out.values) {
    const double a = std::abs(z);
    if (a > 0.0) {
      const double ang = -phase_scale * std::pow(a, rho);
      z *= Complex(std::cos(ang), std::sin(ang));
    }
  }
  out.time_tag = t;
  return out;
}

}  // namespace detail

/// Transform-side profile at time t:
///   hat_u_plus * exp(-i mu |hat_u_plus|^rho_l log(t)/c_plus).
/// Its modulus is |hat_u_plus| for every t, and it satisfies the phase ODE
/// i d/dt w = F(w)/(c_plus t) exactly.
inline Field hat_profile(const ProfileSpec& spec, double t) {
  if (!(t > 0.0)) fail(ErrorCode::NonpositiveTime, "profile time must be positive");
  return detail::hat_profile_values(spec, t, spec.u_plus_hat);
}

/// Same profile evaluated on an arbitrary grid; needs an analytic family.
inline Field hat_profile_on(const ProfileSpec& spec, double t, const Grid& grid) {
  if (!(t > 0.0)) fail(ErrorCode::NonpositiveTime, "profile time must be positive");
  if (grid.compatible(spec.u_plus_hat.grid)) return hat_profile(spec, t);
  if (!spec.family)
    fail(ErrorCode::ValidationError, "off-grid profile evaluation needs an analytic family");
  return detail::hat_profile_values(spec, t, make_field(grid, *spec.family));
}

/// Physical-space profile u_p(t) = M(zeta2/zeta2') D(zeta2) hat_profile(t);
/// a composition of unitaries, so its L2 norm equals |hat_u_plus|'s.
inline Field profile_field(const ProfileSpec& spec, const ClassicalSolution& cs, double t) {
  const ZetaValues z = detail::mdfm_factors(cs, t);
  Field g = dilate(hat_profile(spec, t), z.zeta2);
  g = modulate_chirp(g, 0.5 * z.dzeta2 / z.zeta2);
  g.time_tag = t;
  return g;
}

/// Defect operator of the factorization,
///   R(t) = M(zeta2/zeta2') D(zeta2) (F M(zeta2/zeta1) F^{-1} - 1),
/// measuring how far the second modulation is from the identity.  It decays
/// when zeta1/zeta2 -> 0, the mechanism behind the profile convergence.
inline Field defect_op(const ClassicalSolution& cs, double t, const Field& g) {
  const ZetaValues z = detail::mdfm_factors(cs, t);
  const double kappa = z.zeta1 / z.zeta2;
  Field h = inverse_fourier(g);
  transform_pointwise(h, [kappa](const std::array<double, 3>& x, Complex& v) {
    const double r2 = x[0] * x[0] + x[1] * x[1] + x[2] * x[2];
    const double ang = 0.5 * kappa * r2;
    v *= Complex(std::cos(ang) - 1.0, std::sin(ang));
  });
  Field r = fourier(h);
  r = dilate(r, z.zeta2);
  r = modulate_chirp(r, 0.5 * z.dzeta2 / z.zeta2);
  r.time_tag = t;
  return r;
}

}  // namespace tdho

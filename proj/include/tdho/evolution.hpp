#pragma once

#include <algorithm>
#include <cmath>
#include <iostream>
#include <vector>

#include "tdho/classical.hpp"
#include "tdho/field.hpp"
#include "tdho/profile.hpp"
#include "tdho/quadrature.hpp"
#include "tdho/sigma_model.hpp"
#include "tdho/trajectory.hpp"
#include "tdho/transforms.hpp"

namespace tdho {

struct SolverSettings {
  enum class DtControl { Fixed, ProportionalToT };
  enum class Frame { Fixed, Moving };

  double dt_initial = 1e-3;
  DtControl dt_control = DtControl::ProportionalToT;
  double mass_tol = 1e-8;
  QuadratureRule quadrature = QuadratureRule::Simpson;
  double t_truncate = 0.0;  // 0 -> resolved to 100*T where used
  Frame frame = Frame::Moving;
  double quad_ratio = 1.05;        // node ratio of the remainder quadratures
  std::size_t quad_min_points = 49;

  double resolved_truncation(double T) const {
    const double tt = t_truncate > 0.0 ? t_truncate : 100.0 * T;
    if (!(tt > T)) fail(ErrorCode::OutOfRange, "t_truncate must exceed the start time");
    return tt;
  }
};

// ---------------------------------------------------------------------------
// Fixed-frame split step.

/// One Strang step for i u_t = (-Lap/2 + sigma(t)|x|^2/2) u + mu |u|^rho u:
/// half kinetic (multiplier exp(-i|xi|^2 dt/4)), one full potential+
/// nonlinear step as the exact pointwise phase (|u| is invariant under that
/// subflow), half kinetic.  Mass is preserved to round-off.
inline Field step_strang(const Field& f, double t, double dt, const SigmaModel& sigma,
                         const ProfileSpec& spec) {
  if (!(dt > 0.0)) fail(ErrorCode::OutOfRange, "dt must be positive");
  auto half_kinetic = [dt](const Field& u) {
    Field uh = fourier(u);
    transform_pointwise(uh, [dt](const std::array<double, 3>& xi, Complex& v) {
      const double r2 = xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2];
      const double ang = -0.25 * dt * r2;
      v *= Complex(std::cos(ang), std::sin(ang));
    });
    return inverse_fourier(uh);
  };
  Field u = half_kinetic(f);
  const double sig = sigma(t + 0.5 * dt);
  const double mu = spec.mu;
  const double rho = spec.rho_l;
  transform_pointwise(u, [&](const std::array<double, 3>& x, Complex& v) {
    const double r2 = x[0] * x[0] + x[1] * x[1] + x[2] * x[2];
    const double a = std::abs(v);
    const double ang = -dt * (0.5 * sig * r2 + (a > 0.0 ? mu * std::pow(a, rho) : 0.0));
    v *= Complex(std::cos(ang), std::sin(ang));
  });
  u = half_kinetic(u);
  u.time_tag = t + dt;
  return u;
}

namespace detail {

inline std::vector<double> default_snapshots(double t0, double t1, std::size_t n = 33) {
  std::vector<double> s = geometric_points(t0, t1, 2.0, n);
  return s;
}

inline void check_snapshot(const Field& u, double initial_l2, double mass_tol,
                           Trajectory::Meta& meta) {
  if (!u.finite()) fail(ErrorCode::NonFinite, "field blew up during propagation");
  const double drift = std::abs(l2_norm(u) - initial_l2) / initial_l2;
  meta.max_mass_drift = std::max(meta.max_mass_drift, drift);
  if (drift > mass_tol) fail(ErrorCode::MassDrift, "mass drift exceeds mass_tol");
}

}  // namespace detail

/// March the full equation on a fixed grid, storing snapshots at the
/// requested times (default: geometric grid over [t0, t1]).
inline Trajectory evolve(const Field& f0, double t0, double t1, const SolverSettings& settings,
                         const SigmaModel& sigma, const ProfileSpec& spec,
                         std::vector<double> snapshot_times = {}) {
  if (!(t1 > t0 && t0 > 0.0)) fail(ErrorCode::OutOfRange, "need t1 > t0 > 0");
  if (snapshot_times.empty()) snapshot_times = detail::default_snapshots(t0, t1);

  Trajectory traj;
  traj.meta.dt_initial = settings.dt_initial;
  traj.meta.dt_control =
      settings.dt_control == SolverSettings::DtControl::Fixed ? "fixed" : "proportional_to_t";
  traj.meta.frame = "fixed";
  traj.meta.initial_l2 = l2_norm(f0);

  Field u = f0;
  u.time_tag = t0;
  double t = t0;
  if (snapshot_times.front() <= t0 * (1.0 + 1e-14)) traj.push(t0, u);

  for (double target : snapshot_times) {
    if (target <= t * (1.0 + 1e-14)) continue;
    while (t < target) {
      double dt = settings.dt_control == SolverSettings::DtControl::Fixed
                      ? settings.dt_initial
                      : settings.dt_initial * (t / t0);
      dt = std::min(dt, target - t);
      u = step_strang(u, t, dt, sigma, spec);
      t += dt;
      ++traj.meta.steps_taken;
      if (std::abs(t - target) < 1e-13 * target) t = target;
    }
    u.time_tag = t;
    detail::check_snapshot(u, traj.meta.initial_l2, settings.mass_tol, traj.meta);
    traj.push(t, u);
  }
  return traj;
}

// ---------------------------------------------------------------------------
// Moving (lens) frame.  The state is g with u = M(zeta2/zeta2') D(zeta2) g;
// substituting into the equation removes the potential entirely:
//   i g_t = -(1/(2 zeta2^2)) Lap g + mu |zeta2|^(-1/(1-lambda)) |g|^rho g.
// Both substeps integrate their coefficient exactly: the kinetic time
// integral is Int zeta2^-2 = kappa(a) - kappa(b) with kappa = zeta1/zeta2
// (unit Wronskian), and |g| is invariant under the nonlinear subflow.

namespace detail {

inline double kappa_of(const ClassicalSolution& cs, double t) {
  const ZetaValues z = cs.at(t);
  if (std::abs(z.zeta2) <= 1e-3 * std::max(std::abs(t), 1e-300))
    fail(ErrorCode::SingularFactor, "zeta2 too small for the moving frame");
  return z.zeta1 / z.zeta2;
}

/// Exact linear hat-frame flow over [a, b]: F exp(i x^2 (kappa(b)-kappa(a))/2) F^{-1}.
inline Field hat_kinetic(const ClassicalSolution& cs, double a, double b, const Field& h) {
  const double delta = kappa_of(cs, b) - kappa_of(cs, a);
  Field y = inverse_fourier(h);
  transform_pointwise(y, [delta](const std::array<double, 3>& x, Complex& v) {
    const double r2 = x[0] * x[0] + x[1] * x[1] + x[2] * x[2];
    const double ang = 0.5 * delta * r2;
    v *= Complex(std::cos(ang), std::sin(ang));
  });
  return fourier(y);
}

inline double zeta2_power(const ClassicalSolution& cs, const ProfileSpec& spec, double t) {
  const double z2 = cs.at(t).zeta2;
  return std::pow(std::abs(z2), -1.0 / (1.0 - spec.lambda));
}

inline Field hat_to_physical(const ClassicalSolution& cs, double t, const Field& h) {
  const ZetaValues z = mdfm_factors(cs, t);
  Field u = dilate(h, z.zeta2);
  u = modulate_chirp(u, 0.5 * z.dzeta2 / z.zeta2);
  u.time_tag = t;
  return u;
}

inline Field physical_to_hat(const ClassicalSolution& cs, double t, const Field& u) {
  const ZetaValues z = mdfm_factors(cs, t);
  Field h = modulate_chirp(u, -0.5 * z.dzeta2 / z.zeta2);
  h = dilate_inverse(h, z.zeta2);
  h.time_tag = t;
  return h;
}

inline Field step_strang_hat(const Field& h, double t, double dt, const ClassicalSolution& cs,
                             const ProfileSpec& spec) {
  const double tm = t + 0.5 * dt;
  Field g = hat_kinetic(cs, t, tm, h);
  // Exact nonlinear phase with the Simpson-integrated coefficient.
  const double j = dt / 6.0 *
                   (zeta2_power(cs, spec, t) + 4.0 * zeta2_power(cs, spec, tm) +
                    zeta2_power(cs, spec, t + dt));
  const double mu = spec.mu;
  const double rho = spec.rho_l;
  for (auto& z : g.values) {
    const double a = std::abs(z);
    if (a > 0.0) {
      const double ang = -mu * j * std::pow(a, rho);
      z *= Complex(std::cos(ang), std::sin(ang));
    }
  }
  g = hat_kinetic(cs, tm, t + dt, g);
  g.time_tag = t + dt;
  return g;
}

struct HatTrajectory {
  std::vector<double> times;
  std::vector<Field> fields;
  std::size_t steps_taken = 0;
};

inline HatTrajectory evolve_hat(const Field& h0, double t0, double t1,
                                const SolverSettings& settings, const ClassicalSolution& cs,
                                const ProfileSpec& spec, std::vector<double> snapshot_times) {
  HatTrajectory out;
  Field h = h0;
  double t = t0;
  if (snapshot_times.front() <= t0 * (1.0 + 1e-14)) {
    h.time_tag = t0;
    out.times.push_back(t0);
    out.fields.push_back(h);
  }
  for (double target : snapshot_times) {
    if (target <= t * (1.0 + 1e-14)) continue;
    while (t < target) {
      double dt = settings.dt_control == SolverSettings::DtControl::Fixed
                      ? settings.dt_initial
                      : settings.dt_initial * (t / t0);
      dt = std::min(dt, target - t);
      h = step_strang_hat(h, t, dt, cs, spec);
      t += dt;
      ++out.steps_taken;
      if (std::abs(t - target) < 1e-13 * target) t = target;
    }
    h.time_tag = t;
    out.times.push_back(t);
    out.fields.push_back(h);
  }
  return out;
}

}  // namespace detail

/// Moving-frame propagation; snapshots are materialized back to physical
/// space on their per-time rescaled grids.
inline Trajectory evolve_moving(const Field& u0, double t0, double t1,
                                const SolverSettings& settings, const ClassicalSolution& cs,
                                const ProfileSpec& spec, std::vector<double> snapshot_times = {}) {
  if (!(t1 > t0 && t0 > 0.0)) fail(ErrorCode::OutOfRange, "need t1 > t0 > 0");
  if (snapshot_times.empty()) snapshot_times = detail::default_snapshots(t0, t1);
  const Field h0 = detail::physical_to_hat(cs, t0, u0);
  auto hat = detail::evolve_hat(h0, t0, t1, settings, cs, spec, snapshot_times);

  Trajectory traj;
  traj.meta.dt_initial = settings.dt_initial;
  traj.meta.dt_control =
      settings.dt_control == SolverSettings::DtControl::Fixed ? "fixed" : "proportional_to_t";
  traj.meta.frame = "moving";
  traj.meta.initial_l2 = l2_norm(u0);
  traj.meta.steps_taken = hat.steps_taken;
  for (std::size_t i = 0; i < hat.times.size(); ++i) {
    Field u = detail::hat_to_physical(cs, hat.times[i], hat.fields[i]);
    detail::check_snapshot(u, traj.meta.initial_l2, settings.mass_tol, traj.meta);
    traj.push(hat.times[i], std::move(u));
  }
  return traj;
}

// ---------------------------------------------------------------------------
// Remainder terms of the backward integral equation
//   u - u_p = i Int_t^inf U0(t,s)(F(u) - F(u_p)) ds + E(t) + A(t).
// Both are evaluated in the hat frame (the fixed final-state grid) and
// materialized at the end; improper integrals run to t_truncate with a tail
// estimate from the integrand's empirical power law.

struct RemainderResult {
  Field value;
  double tail_estimate = 0.0;
};

namespace detail {

/// Apply F diag(exp(i kappa |x|^2/2)) to a dual-grid field and return the
/// hat-grid result.
inline Field chirp_then_fourier(double kappa, const Field& y) {
  Field w = y;
  transform_pointwise(w, [kappa](const std::array<double, 3>& x, Complex& v) {
    const double r2 = x[0] * x[0] + x[1] * x[1] + x[2] * x[2];
    const double ang = 0.5 * kappa * r2;
    v *= Complex(std::cos(ang), std::sin(ang));
  });
  return fourier(w);
}

}  // namespace detail

/// Scaling remainder: the contribution of zeta2 deviating from its exact
/// power law,
///   A(t) = i Int_t^inf U0(t,0) F^{-1} (c+ s / zeta2(s)^{1/(1-l)} - 1)
///          F(w(s)) ds/(c+ s).
/// Identically zero when zeta2 = c2 t^(1-lambda) exactly (free case
/// included).  Hat-frame version; the integrand is pointwise closed-form.
inline Field remainder_scaling_hat(const ProfileSpec& spec, const ClassicalSolution& cs, double t,
                                   const SolverSettings& settings, double* tail = nullptr) {
  const double tt = settings.resolved_truncation(t);
  const auto s = geometric_points(t, tt, settings.quad_ratio, settings.quad_min_points);
  auto qfun = [&](double si) {
    return spec.c_plus * si * detail::zeta2_power(cs, spec, si) - 1.0;
  };
  std::vector<Field> integrand;
  integrand.reserve(s.size());
  for (double si : s) {
    Field f = nonlinearity(hat_profile(spec, si), spec);
    const double w = qfun(si) / (spec.c_plus * si);
    for (auto& z : f.values) z *= w;
    integrand.push_back(std::move(f));
  }
  Field v = integrate_samples_generic<Field>(
      s, integrand, Field(spec.u_plus_hat.grid),
      [](Field& acc, double w, const Field& x) {
        for (std::size_t i = 0; i < acc.values.size(); ++i) acc.values[i] += w * x.values[i];
      },
      settings.quadrature);
  if (!v.finite()) fail(ErrorCode::QuadratureFailure, "non-finite scaling-remainder integrand");

  const double kappa = detail::kappa_of(cs, t);
  Field a = detail::chirp_then_fourier(kappa, inverse_fourier(v));
  for (auto& z : a.values) z *= Complex(0.0, 1.0);
  a.time_tag = t;

  if (tail) {
    // |q(s)| ~ |q(tt)| (s/tt)^(2 lambda - 1) gives Int_tt |q|/s = |q(tt)|/(1-2l).
    const double m = l2_norm(nonlinearity(hat_profile(spec, tt), spec));
    *tail = m * std::abs(qfun(tt)) / (spec.c_plus * (1.0 - 2.0 * spec.lambda));
  }
  return a;
}

inline RemainderResult remainder_scaling(const ProfileSpec& spec, const ClassicalSolution& cs,
                                         double t, const SolverSettings& settings) {
  double tail = 0.0;
  Field a = remainder_scaling_hat(spec, cs, t, settings, &tail);
  return {detail::hat_to_physical(cs, t, a), tail};
}

/// Defect remainder:
///   E(t) = R(t) w(t) - i Int_t^inf U0(t,s) R(s) F(w(s)) ds / zeta2(s)^{1/(1-l)}.
/// In the hat frame every term is a chirp sandwiched between transforms on
/// the fixed grid:
///   E_hat(t) = (F M2(t) F^{-1} - 1) w(t)
///            - i F e^{i k(t) x^2/2} Int (1 - e^{-i k(s) x^2/2}) Y(s) ds,
/// with Y(s) = F^{-1}[ F(w(s)) / zeta2(s)^{1/(1-l)} ] and k = zeta1/zeta2.
inline Field remainder_defect_hat(const ProfileSpec& spec, const ClassicalSolution& cs, double t,
                                  const SolverSettings& settings, double* tail = nullptr) {
  const double tt = settings.resolved_truncation(t);
  const auto s = geometric_points(t, tt, settings.quad_ratio, settings.quad_min_points);

  std::vector<Field> z;
  z.reserve(s.size());
  for (double si : s) {
    Field f = nonlinearity(hat_profile(spec, si), spec);
    const double w = detail::zeta2_power(cs, spec, si);
    for (auto& v : f.values) v *= w;
    Field y = inverse_fourier(f);
    const double ks = detail::kappa_of(cs, si);
    transform_pointwise(y, [ks](const std::array<double, 3>& x, Complex& v) {
      const double r2 = x[0] * x[0] + x[1] * x[1] + x[2] * x[2];
      const double ang = -0.5 * ks * r2;
      v = v - v * Complex(std::cos(ang), std::sin(ang));
    });
    z.push_back(std::move(y));
  }
  const Grid dual = spec.u_plus_hat.grid.dual();
  Field v = integrate_samples_generic<Field>(
      s, z, Field(dual),
      [](Field& acc, double w, const Field& x) {
        for (std::size_t i = 0; i < acc.values.size(); ++i) acc.values[i] += w * x.values[i];
      },
      settings.quadrature);
  if (!v.finite()) fail(ErrorCode::QuadratureFailure, "non-finite defect-remainder integrand");

  const double kt = detail::kappa_of(cs, t);
  Field integral_part = detail::chirp_then_fourier(kt, v);

  // (F M2(t) F^{-1} - 1) w(t)
  Field w0 = inverse_fourier(hat_profile(spec, t));
  transform_pointwise(w0, [kt](const std::array<double, 3>& x, Complex& vv) {
    const double r2 = x[0] * x[0] + x[1] * x[1] + x[2] * x[2];
    const double ang = 0.5 * kt * r2;
    vv *= Complex(std::cos(ang) - 1.0, std::sin(ang));
  });
  Field head = fourier(w0);

  Field e(head.grid);
  for (std::size_t i = 0; i < e.values.size(); ++i)
    e.values[i] = head.values[i] - Complex(0.0, 1.0) * integral_part.values[i];
  e.time_tag = t;

  if (tail && s.size() >= 2) {
    const double g_last = l2_norm(z.back());
    const double g_prev = l2_norm(z[z.size() - 2]);
    double estimate;
    if (g_last > 0.0 && g_prev > 0.0) {
      const double p = std::log(g_last / g_prev) / std::log(s.back() / s[s.size() - 2]);
      estimate = p < -1.05 ? g_last * s.back() / (-1.0 - p) : g_last * s.back();
    } else {
      estimate = 0.0;
    }
    *tail = estimate;
  }
  return e;
}

inline RemainderResult remainder_defect(const ProfileSpec& spec, const ClassicalSolution& cs,
                                        double t, const SolverSettings& settings) {
  double tail = 0.0;
  Field e = remainder_defect_hat(spec, cs, t, settings, &tail);
  return {detail::hat_to_physical(cs, t, e), tail};
}

// ---------------------------------------------------------------------------
// Picard iteration on the truncated backward equation, entirely in the hat
// frame on a shared geometric time grid.

struct PicardResult {
  std::vector<double> times;
  std::vector<Field> hat_fields;       // iterated solution at the grid times
  std::vector<Field> hat_profiles;     // w(t_i) for the same times
  std::vector<double> residuals;       // sup-over-grid L2 distance per sweep
};

inline PicardResult picard_solve_hat(const ProfileSpec& spec, const ClassicalSolution& cs,
                                     double T, const SolverSettings& settings, int n_iter) {
  if (n_iter < 1) fail(ErrorCode::OutOfRange, "n_iter must be >= 1");
  if (linf_norm(spec.u_plus_hat) > 0.5)
    std::cerr << "warning: final-state amplitude " << linf_norm(spec.u_plus_hat)
              << " is outside the small-data regime\n";
  const double tt = settings.resolved_truncation(T);
  const auto tau = geometric_points(T, tt, settings.quad_ratio, settings.quad_min_points);
  const std::size_t m = tau.size();
  const Grid grid = spec.u_plus_hat.grid;
  const Grid dual = grid.dual();

  auto axpy_field = [](Field& acc, double w, const Field& x) {
    for (std::size_t i = 0; i < acc.values.size(); ++i) acc.values[i] += w * x.values[i];
  };

  PicardResult result;
  result.times = tau;

  std::vector<double> kap(m), z2pow(m);
  for (std::size_t i = 0; i < m; ++i) {
    kap[i] = detail::kappa_of(cs, tau[i]);
    z2pow[i] = detail::zeta2_power(cs, spec, tau[i]);
  }
  result.hat_profiles.reserve(m);
  for (std::size_t i = 0; i < m; ++i) result.hat_profiles.push_back(hat_profile(spec, tau[i]));

  // Inhomogeneous part E_hat + A_hat at every grid time, suffix-integrated.
  std::vector<Field> ze, za;
  ze.reserve(m);
  za.reserve(m);
  for (std::size_t i = 0; i < m; ++i) {
    Field f = nonlinearity(result.hat_profiles[i], spec);
    Field fa = f;
    const double wq =
        (spec.c_plus * tau[i] * z2pow[i] - 1.0) / (spec.c_plus * tau[i]);
    for (auto& v : fa.values) v *= wq;
    za.push_back(inverse_fourier(fa));

    for (auto& v : f.values) v *= z2pow[i];
    Field y = inverse_fourier(f);
    const double ks = kap[i];
    transform_pointwise(y, [ks](const std::array<double, 3>& x, Complex& v) {
      const double r2 = x[0] * x[0] + x[1] * x[1] + x[2] * x[2];
      const double ang = -0.5 * ks * r2;
      v = v - v * Complex(std::cos(ang), std::sin(ang));
    });
    ze.push_back(std::move(y));
  }
  const auto suffix_e =
      suffix_integrals_generic<Field>(tau, ze, Field(dual), axpy_field, settings.quadrature);
  const auto suffix_a =
      suffix_integrals_generic<Field>(tau, za, Field(dual), axpy_field, settings.quadrature);

  std::vector<Field> inhom;
  inhom.reserve(m);
  for (std::size_t i = 0; i < m; ++i) {
    // E head term: (F M2 F^{-1} - 1) w
    Field w0 = inverse_fourier(result.hat_profiles[i]);
    const double kt = kap[i];
    transform_pointwise(w0, [kt](const std::array<double, 3>& x, Complex& v) {
      const double r2 = x[0] * x[0] + x[1] * x[1] + x[2] * x[2];
      const double ang = 0.5 * kt * r2;
      v *= Complex(std::cos(ang) - 1.0, std::sin(ang));
    });
    Field head = fourier(w0);
    // Combined integrals: F e^{i k x^2/2} [ -i suffix_e + i suffix_a ]
    Field comb(dual);
    for (std::size_t j = 0; j < comb.values.size(); ++j)
      comb.values[j] = Complex(0.0, 1.0) * (suffix_a[i].values[j] - suffix_e[i].values[j]);
    Field tailpart = detail::chirp_then_fourier(kt, comb);
    inhom.push_back(head + tailpart);
  }

  // Successive substitution.
  std::vector<Field> h = result.hat_profiles;  // u^(0) = u_p
  std::size_t increases_in_a_row = 0;
  for (int sweep = 0; sweep < n_iter; ++sweep) {
    std::vector<Field> y(m, Field(dual));
    for (std::size_t i = 0; i < m; ++i) {
      Field p = nonlinearity(h[i], spec) - nonlinearity(result.hat_profiles[i], spec);
      for (auto& v : p.values) v *= z2pow[i];
      Field yi = inverse_fourier(p);
      const double ks = kap[i];
      transform_pointwise(yi, [ks](const std::array<double, 3>& x, Complex& v) {
        const double r2 = x[0] * x[0] + x[1] * x[1] + x[2] * x[2];
        const double ang = -0.5 * ks * r2;
        v *= Complex(std::cos(ang), std::sin(ang));
      });
      y[i] = std::move(yi);
    }
    const auto suffix_y =
        suffix_integrals_generic<Field>(tau, y, Field(dual), axpy_field, settings.quadrature);

    double res = 0.0;
    std::vector<Field> h_new(m, Field(grid));
    for (std::size_t i = 0; i < m; ++i) {
      Field duh = detail::chirp_then_fourier(kap[i], suffix_y[i]);
      Field next(grid);
      for (std::size_t j = 0; j < next.values.size(); ++j)
        next.values[j] = result.hat_profiles[i].values[j] +
                         Complex(0.0, 1.0) * duh.values[j] + inhom[i].values[j];
      next.time_tag = tau[i];
      res = std::max(res, l2_distance(next, h[i]));
      h_new[i] = std::move(next);
    }
    h = std::move(h_new);
    result.residuals.push_back(res);
    const std::size_t k = result.residuals.size();
    const double floor = 1e-13 * l2_norm(spec.u_plus_hat);
    if (k >= 2 && result.residuals[k - 1] > result.residuals[k - 2] &&
        result.residuals[k - 1] > floor) {
      if (++increases_in_a_row >= 2)
        fail(ErrorCode::NoContraction, "residuals increased on two consecutive sweeps");
    } else {
      increases_in_a_row = 0;
    }
  }
  result.hat_fields = std::move(h);
  return result;
}

/// Public form: physical-space trajectory of the constructed solution over
/// [T, t_truncate] plus the per-sweep residuals (monotone under contraction).
inline std::pair<Trajectory, std::vector<double>> picard_solve(const ProfileSpec& spec,
                                                               const ClassicalSolution& cs,
                                                               double T,
                                                               const SolverSettings& settings,
                                                               int n_iter) {
  auto hat = picard_solve_hat(spec, cs, T, settings, n_iter);
  Trajectory traj;
  traj.meta.frame = "hat";
  traj.meta.initial_l2 = l2_norm(hat.hat_fields.front());
  for (std::size_t i = 0; i < hat.times.size(); ++i)
    traj.push(hat.times[i], detail::hat_to_physical(cs, hat.times[i], hat.hat_fields[i]));
  return {std::move(traj), std::move(hat.residuals)};
}

}  // namespace tdho

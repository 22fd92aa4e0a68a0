#pragma once

#include <cmath>
#include <limits>
#include <vector>

#include "tdho/classical.hpp"
#include "tdho/field.hpp"
#include "tdho/quadrature.hpp"
#include "tdho/trajectory.hpp"
#include "tdho/transforms.hpp"

namespace tdho {

/// Weighted Sobolev norm || (1+|x|^2)^(nu/2) (1-Lap)^(gamma/2) f ||_2.
/// The fractional derivative is the multiplier (1+|xi|^2)^(gamma/2) on the
/// dual grid; the spatial weight is pointwise.
inline double sobolev_norm(const Field& f, double gamma, double nu) {
  if (!(gamma >= 0.0 && nu >= 0.0)) fail(ErrorCode::OutOfRange, "gamma, nu must be >= 0");
  if (gamma == 0.0 && nu == 0.0) return l2_norm(f);
  Field fh = fourier(f);
  if (gamma > 0.0) {
    transform_pointwise(fh, [gamma](const std::array<double, 3>& xi, Complex& v) {
      const double r2 = xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2];
      v *= std::pow(1.0 + r2, 0.5 * gamma);
    });
  }
  if (nu == 0.0) return l2_norm(fh);  // Parseval
  Field g = inverse_fourier(fh);
  transform_pointwise(g, [nu](const std::array<double, 3>& x, Complex& v) {
    const double r2 = x[0] * x[0] + x[1] * x[1] + x[2] * x[2];
    v *= std::pow(1.0 + r2, 0.5 * nu);
  });
  return l2_norm(g);
}

namespace detail {

inline std::vector<std::size_t> window_indices(const std::vector<double>& times, double tau) {
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < times.size(); ++i)
    if (times[i] >= tau * (1.0 - 1e-12)) idx.push_back(i);
  return idx;
}

}  // namespace detail

/// Time-weighted Bochner-Lebesgue norm over [tau, end of samples]:
///   ( Int <t>^(-lam) ||F(t)||_r^q dt )^(1/q),  q = inf -> sup <t>^(-lam) ||F(t)||_r.
inline double weighted_bochner_norm(const Trajectory& traj, double q, double r, double lam,
                                    double tau) {
  if (!(q >= 1.0) || !(r >= 2.0) || std::isnan(q) || std::isnan(r))
    fail(ErrorCode::OutOfRange, "need q >= 1, r >= 2");
  const auto idx = detail::window_indices(traj.times, tau);
  if (idx.size() < 2 && !std::isinf(q))
    fail(ErrorCode::InsufficientSamples, "too few samples in the window");
  if (idx.empty()) fail(ErrorCode::InsufficientSamples, "no samples at or after tau");
  if (traj.times[idx.front()] > tau * (1.0 + 1e-9) && traj.times.front() > tau * (1.0 + 1e-9))
    fail(ErrorCode::InsufficientSamples, "samples do not cover the window start");

  auto weight = [lam](double t) { return std::pow(1.0 + t * t, -0.5 * lam); };
  if (std::isinf(q)) {
    double sup = 0.0;
    for (std::size_t i : idx) sup = std::max(sup, weight(traj.times[i]) * lp_norm(traj.fields[i], r));
    return sup;
  }
  std::vector<double> ts, integr;
  ts.reserve(idx.size());
  integr.reserve(idx.size());
  for (std::size_t i : idx) {
    ts.push_back(traj.times[i]);
    integr.push_back(weight(traj.times[i]) * std::pow(lp_norm(traj.fields[i], r), q));
  }
  return std::pow(integrate_samples(ts, integr), 1.0 / q);
}

/// Contraction-space norm: sup_tau tau^b ||.||_{inf,2,lam,tau}
///                        + sup_tau tau^(b-2 lam) ||.||_{beta_n,alpha_n,lam,tau},
/// with the sups taken over the sampled times >= T.
inline double x_T_norm(const Trajectory& traj_diff, double b, double lam, double beta_n,
                       double alpha_n, double T) {
  const auto idx = detail::window_indices(traj_diff.times, T);
  if (idx.size() < 2) fail(ErrorCode::InsufficientSamples, "too few samples at or after T");
  double sup1 = 0.0, sup2 = 0.0;
  for (std::size_t i : idx) {
    const double tau = traj_diff.times[i];
    sup1 = std::max(sup1, std::pow(tau, b) *
                              weighted_bochner_norm(traj_diff, std::numeric_limits<double>::infinity(),
                                                    2.0, lam, tau));
    if (traj_diff.times.back() > tau * (1.0 + 1e-12)) {
      sup2 = std::max(sup2, std::pow(tau, b - 2.0 * lam) *
                                weighted_bochner_norm(traj_diff, beta_n, alpha_n, lam, tau));
    }
  }
  return sup1 + sup2;
}

struct FitResult {
  double constant = 0.0;  // C in err ~ C t^(-b)
  double b_est = 0.0;
  double r_squared = 0.0;
};

/// Least-squares line through (log t, log err); b_est = -slope.
inline FitResult fit_decay_rate(const std::vector<double>& times,
                                const std::vector<double>& errors) {
  if (times.size() != errors.size() || times.size() < 5)
    fail(ErrorCode::InsufficientSpan, "need at least 5 samples");
  if (times.back() < 10.0 * times.front() * (1.0 - 1e-12))
    fail(ErrorCode::InsufficientSpan, "samples must span at least one decade");
  for (double e : errors)
    if (!(e > 0.0)) fail(ErrorCode::NonPositiveError, "errors must be positive to fit");

  const double n = static_cast<double>(times.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < times.size(); ++i) {
    const double x = std::log(times[i]);
    const double y = std::log(errors[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    syy += y * y;
  }
  const double vxx = sxx - sx * sx / n;
  const double vxy = sxy - sx * sy / n;
  const double vyy = syy - sy * sy / n;
  const double slope = vxy / vxx;
  FitResult fit;
  fit.b_est = -slope;
  fit.constant = std::exp((sy - slope * sx) / n);
  fit.r_squared = vyy > 0.0 ? (vxy * vxy) / (vxx * vyy) : 1.0;
  return fit;
}

/// Dispersive-estimate diagnostic: || U0(.,0) phi ||_{L^q((a,b); L^r, lam)} / ||phi||_2
/// sampled on a geometric grid over the window.  (q,r) must satisfy
/// 1/q + n/(2r) = n/4 with q > 2, r >= 2.
inline double strichartz_ratio(const ClassicalSolution& cs, const Field& phi, double q, double r,
                               double lam, std::pair<double, double> window) {
  const int n = phi.grid.dim;
  const double lhs = (std::isinf(q) ? 0.0 : 1.0 / q) + n / (2.0 * r);
  if (std::abs(lhs - 0.25 * n) > 1e-12 || !(q > 2.0) || !(r >= 2.0))
    fail(ErrorCode::InadmissiblePair, "pair fails 1/q + n/(2r) = n/4 with q > 2, r >= 2");
  const auto taus = geometric_points(window.first, window.second, 1.1, 17);
  Trajectory traj;
  for (double t : taus) traj.push(t, mdfm_propagator(cs, t, phi));
  return weighted_bochner_norm(traj, q, r, lam, window.first) / l2_norm(phi);
}

/// Error-decay report emitted by the rate experiments.
struct NormReport {
  std::vector<double> times;
  std::vector<double> l2_error;
  std::vector<double> weighted_sup_part;  // tau^b * ||.||_{inf,2,lam,tau}
  std::vector<double> weighted_int_part;  // tau^(b-2lam) * ||.||_{beta_n,alpha_n,lam,tau}
  double fitted_slope = 0.0;     // slope of log err vs log t (= -b_est)
  double fitted_constant = 0.0;
  double r_squared = 0.0;
};

}  // namespace tdho

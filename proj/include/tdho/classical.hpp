#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <utility>
#include <vector>

#include "tdho/errors.hpp"
#include "tdho/ode.hpp"
#include "tdho/sigma_model.hpp"

namespace tdho {

struct ZetaValues {
  double zeta1;
  double zeta2;
  double dzeta1;
  double dzeta2;

  double wronskian() const { return zeta1 * dzeta2 - dzeta1 * zeta2; }
};

/// Sampled fundamental pair of z'' + sigma(t) z = 0 with
/// zeta1(0)=1, zeta1'(0)=0 and zeta2(0)=0, zeta2'(0)=1.
///
/// Samples carry the second derivatives (-sigma*zeta), so dense output is a
/// quintic Hermite interpolant per interval; its derivative supplies zeta'.
/// The Wronskian zeta1*zeta2' - zeta1'*zeta2 must stay at 1 up to
/// integration tolerance; drift is the module's quality signal.
struct ClassicalSolution {
  std::vector<double> times;
  std::vector<double> zeta1, zeta2, dzeta1, dzeta2;
  std::vector<double> ddzeta1, ddzeta2;
  SigmaModel sigma;
  double tol = 1e-10;

  std::size_t samples() const { return times.size(); }
  double t_max() const { return times.empty() ? 0.0 : times.back(); }
  double t_min_sample() const { return times.empty() ? 0.0 : times.front(); }

  ZetaValues at(double t) const {
    if (times.size() < 2) fail(ErrorCode::OutOfDomain, "classical solution has no samples");
    if (t < times.front() - 1e-12 || t > times.back() * (1.0 + 1e-12))
      fail(ErrorCode::OutOfDomain, "time outside the integrated range");
    t = std::clamp(t, times.front(), times.back());
    auto it = std::upper_bound(times.begin(), times.end(), t);
    std::size_t hi = std::min<std::size_t>(times.size() - 1,
                                           static_cast<std::size_t>(it - times.begin()));
    if (hi == 0) hi = 1;
    const std::size_t lo = hi - 1;
    const double h = times[hi] - times[lo];
    const double s = (t - times[lo]) / h;

    // Quintic Hermite basis in s and its derivative.
    const double s2 = s * s, s3 = s2 * s, s4 = s3 * s, s5 = s4 * s;
    const double H0 = 1 - 10 * s3 + 15 * s4 - 6 * s5;
    const double H1 = s - 6 * s3 + 8 * s4 - 3 * s5;
    const double H2 = 0.5 * (s2 - 3 * s3 + 3 * s4 - s5);
    const double H3 = 10 * s3 - 15 * s4 + 6 * s5;
    const double H4 = -4 * s3 + 7 * s4 - 3 * s5;
    const double H5 = 0.5 * (s3 - 2 * s4 + s5);
    const double G0 = -30 * s2 + 60 * s3 - 30 * s4;
    const double G1 = 1 - 18 * s2 + 32 * s3 - 15 * s4;
    const double G2 = 0.5 * (2 * s - 9 * s2 + 12 * s3 - 5 * s4);
    const double G3 = 30 * s2 - 60 * s3 + 30 * s4;
    const double G4 = -12 * s2 + 28 * s3 - 15 * s4;
    const double G5 = 0.5 * (3 * s2 - 8 * s3 + 5 * s4);

    auto eval = [&](const std::vector<double>& f, const std::vector<double>& df,
                    const std::vector<double>& ddf, double& val, double& dval) {
      const double f0 = f[lo], f1 = f[hi];
      const double d0 = h * df[lo], d1 = h * df[hi];
      const double c0 = h * h * ddf[lo], c1 = h * h * ddf[hi];
      val = f0 * H0 + d0 * H1 + c0 * H2 + f1 * H3 + d1 * H4 + c1 * H5;
      dval = (f0 * G0 + d0 * G1 + c0 * G2 + f1 * G3 + d1 * G4 + c1 * G5) / h;
    };

    ZetaValues z{};
    eval(zeta1, dzeta1, ddzeta1, z.zeta1, z.dzeta1);
    eval(zeta2, dzeta2, ddzeta2, z.zeta2, z.dzeta2);
    return z;
  }

  double wronskian_drift() const {
    double worst = 0.0;
    for (std::size_t i = 0; i < times.size(); ++i) {
      double w = zeta1[i] * dzeta2[i] - dzeta1[i] * zeta2[i];
      worst = std::max(worst, std::abs(w - 1.0));
    }
    return worst;
  }

  /// Smallest sample time where the lens factorization is usable
  /// (|zeta2| > 1e-3 * t); the factorization degenerates at zeta2 = 0.
  double mdfm_t_min() const {
    for (std::size_t i = 0; i < times.size(); ++i) {
      if (times[i] > 0.0 && std::abs(zeta2[i]) > 1e-3 * times[i]) return times[i];
    }
    return t_max();
  }

  /// Build a solution record from explicit closed forms.  Used for synthetic
  /// coefficient-free cases (e.g. exact power-law pairs); the second
  /// derivatives come from the supplied effective sigma.
  static ClassicalSolution from_callables(const std::function<double(double)>& z1,
                                          const std::function<double(double)>& dz1,
                                          const std::function<double(double)>& z2,
                                          const std::function<double(double)>& dz2,
                                          const std::function<double(double)>& sigma_eff,
                                          const std::vector<double>& sample_times) {
    ClassicalSolution cs;
    cs.times = sample_times;
    const std::size_t n = sample_times.size();
    cs.zeta1.resize(n);
    cs.dzeta1.resize(n);
    cs.zeta2.resize(n);
    cs.dzeta2.resize(n);
    cs.ddzeta1.resize(n);
    cs.ddzeta2.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      const double t = sample_times[i];
      cs.zeta1[i] = z1(t);
      cs.dzeta1[i] = dz1(t);
      cs.zeta2[i] = z2(t);
      cs.dzeta2[i] = dz2(t);
      const double s = sigma_eff(t);
      cs.ddzeta1[i] = -s * cs.zeta1[i];
      cs.ddzeta2[i] = -s * cs.zeta2[i];
    }
    return cs;
  }
};

/// Integrate the fundamental pair from 0 to t_max.  The relative step cap
/// keeps dense-output (quintic) and derivative (quartic) interpolation error
/// well below tol even on decade-long intervals.
inline ClassicalSolution solve_classical(const SigmaModel& sigma, double t_max, double tol) {
  if (!(t_max > 0.0)) fail(ErrorCode::OutOfRange, "t_max must be positive");
  if (!(tol > 0.0)) fail(ErrorCode::OutOfRange, "tol must be positive");

  auto rhs = [&sigma](double t, const ode::State4& y) {
    const double s = sigma(t);
    return ode::State4{y[1], -s * y[0], y[3], -s * y[2]};
  };
  auto cap = [](double t) { return 4e-3 * std::max(std::abs(t), 0.5); };

  const double rtol = std::max(0.1 * tol, 1e-13);
  const double atol = rtol * 1e-2;
  auto steps =
      ode::integrate_dopri5(rhs, ode::State4{1.0, 0.0, 0.0, 1.0}, 0.0, t_max, rtol, atol, cap);

  ClassicalSolution cs;
  cs.sigma = sigma;
  cs.tol = tol;
  cs.times.reserve(steps.size());
  for (const auto& st : steps) {
    cs.times.push_back(st.t);
    cs.zeta1.push_back(st.y[0]);
    cs.dzeta1.push_back(st.y[1]);
    cs.zeta2.push_back(st.y[2]);
    cs.dzeta2.push_back(st.y[3]);
    cs.ddzeta1.push_back(st.dy[1]);
    cs.ddzeta2.push_back(st.dy[3]);
  }
  if (cs.wronskian_drift() > 10.0 * tol)
    fail(ErrorCode::StepFailure, "Wronskian drift exceeds 10*tol after integration");
  return cs;
}

inline ZetaValues zeta_at(const ClassicalSolution& cs, double t) { return cs.at(t); }

/// Deceleration exponent of the Remark's closed-form family
/// sigma = sigma0/t^2: lambda = (1 - sqrt(1 - 4*sigma0))/2.
inline double closed_form_lambda(double sigma0) {
  if (!(sigma0 > 0.0 && sigma0 < 0.25))
    fail(ErrorCode::OutOfRange, "closed_form_lambda requires sigma0 in (0, 1/4)");
  return 0.5 * (1.0 - std::sqrt(1.0 - 4.0 * sigma0));
}

struct AsymptoticData {
  double lambda = 0.0;
  double c1_plus = 0.0;
  double c2_plus = 0.0;
  double c3_plus = 0.0;
  // Relative fit residuals: two-power model for zeta2 and zeta1, and the
  // dominance check of the zeta1 power law (contamination over c1 t^lambda
  // at the window end; Assumption-type asymptotics need this << 1).
  double zeta2_residual = 0.0;
  double zeta1_residual = 0.0;
  double zeta1_contamination = 0.0;
  bool zeta1_power_law_ok = true;
};

namespace detail {

struct TwoPowerFit {
  double c_high = 0.0;  // coefficient of t^(1-lambda)
  double c_low = 0.0;   // coefficient of t^lambda
  double rel_residual = 0.0;
};

inline TwoPowerFit fit_two_power(const std::vector<double>& ts, const std::vector<double>& zs,
                                 double lambda) {
  const double tmid = std::sqrt(ts.front() * ts.back());
  double suu = 0, svv = 0, suv = 0, suz = 0, svz = 0, szz = 0;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    const double r = ts[i] / tmid;
    const double u = std::pow(r, 1.0 - lambda);
    const double v = std::pow(r, lambda);
    suu += u * u;
    svv += v * v;
    suv += u * v;
    suz += u * zs[i];
    svz += v * zs[i];
    szz += zs[i] * zs[i];
  }
  const double det = suu * svv - suv * suv;
  TwoPowerFit fit;
  if (std::abs(det) < 1e-300) {
    fit.rel_residual = 1.0;
    return fit;
  }
  const double ch = (svv * suz - suv * svz) / det;
  const double cl = (suu * svz - suv * suz) / det;
  double ssr = 0.0;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    const double r = ts[i] / tmid;
    const double m = ch * std::pow(r, 1.0 - lambda) + cl * std::pow(r, lambda);
    ssr += (zs[i] - m) * (zs[i] - m);
  }
  fit.c_high = ch / std::pow(tmid, 1.0 - lambda);
  fit.c_low = cl / std::pow(tmid, lambda);
  fit.rel_residual = std::sqrt(ssr / std::max(szz, 1e-300));
  return fit;
}

}  // namespace detail

/// Estimate lambda and the asymptotic constants over a late-time window.
///
/// A log-log slope of zeta2 seeds lambda; a golden-section refinement then
/// minimizes the residual of the two-term model c2 t^(1-lambda) + a t^lambda,
/// which removes the O(t^lambda) correction that biases the raw slope.
inline AsymptoticData extract_asymptotics(const ClassicalSolution& cs,
                                          std::pair<double, double> fit_window,
                                          double fit_tol = 1e-3) {
  const double w0 = fit_window.first;
  const double w1 = fit_window.second;
  if (!(w0 > 0.0 && w1 > w0)) fail(ErrorCode::OutOfRange, "bad fit window");
  if (w1 > cs.t_max() * (1.0 + 1e-12))
    fail(ErrorCode::OutOfDomain, "fit window exceeds integrated range");

  constexpr std::size_t kSamples = 256;
  std::vector<double> ts(kSamples), z1(kSamples), z2(kSamples);
  const double ratio = std::pow(w1 / w0, 1.0 / (kSamples - 1));
  for (std::size_t i = 0; i < kSamples; ++i) {
    ts[i] = w0 * std::pow(ratio, static_cast<double>(i));
    const ZetaValues z = cs.at(ts[i]);
    z1[i] = z.zeta1;
    z2[i] = z.zeta2;
  }

  double zmax = 0.0, zmin = std::numeric_limits<double>::infinity();
  bool sign_change = false;
  for (std::size_t i = 0; i < kSamples; ++i) {
    zmax = std::max(zmax, std::abs(z2[i]));
    zmin = std::min(zmin, std::abs(z2[i]));
    if (i > 0 && z2[i] * z2[i - 1] <= 0.0) sign_change = true;
  }
  if (sign_change || zmin < 1e-6 * zmax)
    fail(ErrorCode::TrappedTrajectory, "zeta2 changes sign or nearly vanishes on the window");

  // Seed: least-squares slope in log-log coordinates.
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < kSamples; ++i) {
    const double x = std::log(ts[i]);
    const double y = std::log(std::abs(z2[i]));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double n = static_cast<double>(kSamples);
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  double lambda0 = std::clamp(1.0 - slope, 0.0, 0.499);

  // Refine lambda by golden-section on the two-power residual.
  auto ssr_of = [&](double lam) { return detail::fit_two_power(ts, z2, lam).rel_residual; };
  double a = std::max(0.0, lambda0 - 0.05);
  double b = std::min(0.499, lambda0 + 0.05);
  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
  double f1 = ssr_of(x1), f2 = ssr_of(x2);
  for (int it = 0; it < 200 && (b - a) > 1e-12; ++it) {
    if (f1 < f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - gr * (b - a);
      f1 = ssr_of(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + gr * (b - a);
      f2 = ssr_of(x2);
    }
  }
  double lambda = 0.5 * (a + b);
  // Endpoint lambda = 0 (free-like coefficients) competes with the interior.
  if (ssr_of(0.0) <= ssr_of(lambda)) lambda = 0.0;

  const auto fit2 = detail::fit_two_power(ts, z2, lambda);
  const auto fit1 = detail::fit_two_power(ts, z1, lambda);

  AsymptoticData out;
  out.lambda = lambda;
  out.c2_plus = fit2.c_high;
  out.c3_plus = std::abs(fit2.c_low);
  out.c1_plus = fit1.c_low;
  out.zeta2_residual = fit2.rel_residual;
  out.zeta1_residual = fit1.rel_residual;
  const double t_hi = ts.back();
  const double dom = std::abs(fit1.c_low) * std::pow(t_hi, lambda);
  const double contam = std::abs(fit1.c_high) * std::pow(t_hi, 1.0 - lambda);
  out.zeta1_contamination = dom > 0.0 ? contam / dom : std::numeric_limits<double>::infinity();
  out.zeta1_power_law_ok = out.zeta1_contamination < 0.1;

  if (out.zeta2_residual > fit_tol)
    fail(ErrorCode::BadFit, "zeta2 does not match the two-power asymptotic model on the window");
  if (out.c2_plus == 0.0) fail(ErrorCode::BadFit, "vanishing c2_plus estimate");
  return out;
}

}  // namespace tdho

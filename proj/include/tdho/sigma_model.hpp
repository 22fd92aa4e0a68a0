#pragma once

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

#include "tdho/errors.hpp"

namespace tdho {

/// Oscillator coefficient sigma(t) (units time^-2).
///
/// Families:
///   Zero            sigma = 0
///   Constant        sigma = value
///   InverseSquare   sigma = sigma0 for |t| <= r0, sigma0/t^2 beyond
///   Tabulated       piecewise-linear through sorted knots, exact at knots
///   LensPower       the coefficient whose regular solution is
///                   zeta1 = (1+t^2)^(lambda/2); decays like
///                   lambda(1-lambda)/t^2 and keeps both fundamental
///                   solutions on their clean power laws t^lambda, t^(1-lambda)
struct SigmaModel {
  enum class Kind { Zero, Constant, InverseSquare, Tabulated, LensPower };

  Kind kind = Kind::Zero;
  double value = 0.0;     // Constant
  double sigma0 = 0.0;    // InverseSquare
  double r0 = 1.0;        // InverseSquare
  double lambda = 0.0;    // LensPower
  std::vector<std::pair<double, double>> knots;  // Tabulated (t, sigma)

  static SigmaModel zero() { return SigmaModel{}; }

  static SigmaModel constant(double v) {
    SigmaModel m;
    m.kind = Kind::Constant;
    m.value = v;
    if (!std::isfinite(v)) fail(ErrorCode::ValidationError, "constant sigma must be finite");
    return m;
  }

  static SigmaModel inverse_square(double sigma0, double r0) {
    SigmaModel m;
    m.kind = Kind::InverseSquare;
    m.sigma0 = sigma0;
    m.r0 = r0;
    if (!(sigma0 > 0.0 && sigma0 < 0.25))
      fail(ErrorCode::ValidationError, "inverse_square requires sigma0 in (0, 1/4)");
    if (!(r0 > 0.0)) fail(ErrorCode::ValidationError, "inverse_square requires r0 > 0");
    return m;
  }

  static SigmaModel tabulated(std::vector<std::pair<double, double>> k) {
    SigmaModel m;
    m.kind = Kind::Tabulated;
    m.knots = std::move(k);
    if (m.knots.size() < 2) fail(ErrorCode::ValidationError, "tabulated sigma needs >= 2 knots");
    for (std::size_t i = 0; i < m.knots.size(); ++i) {
      if (!std::isfinite(m.knots[i].first) || !std::isfinite(m.knots[i].second))
        fail(ErrorCode::ValidationError, "tabulated sigma knots must be finite");
      if (i > 0 && !(m.knots[i].first > m.knots[i - 1].first))
        fail(ErrorCode::ValidationError, "tabulated sigma knots must be strictly increasing");
    }
    return m;
  }

  static SigmaModel lens_power(double lambda) {
    SigmaModel m;
    m.kind = Kind::LensPower;
    m.lambda = lambda;
    if (!(lambda > 0.0 && lambda < 0.5))
      fail(ErrorCode::ValidationError, "lens_power requires lambda in (0, 1/2)");
    return m;
  }

  double operator()(double t) const {
    double s = 0.0;
    switch (kind) {
      case Kind::Zero:
        s = 0.0;
        break;
      case Kind::Constant:
        s = value;
        break;
      case Kind::InverseSquare: {
        const double a = std::abs(t);
        s = a <= r0 ? sigma0 : sigma0 / (t * t);
        break;
      }
      case Kind::Tabulated: {
        if (t <= knots.front().first) {
          s = knots.front().second;
        } else if (t >= knots.back().first) {
          s = knots.back().second;
        } else {
          auto it = std::upper_bound(knots.begin(), knots.end(), t,
                                     [](double v, const auto& kn) { return v < kn.first; });
          const auto& hi = *it;
          const auto& lo = *(it - 1);
          const double w = (t - lo.first) / (hi.first - lo.first);
          s = lo.second + w * (hi.second - lo.second);
        }
        break;
      }
      case Kind::LensPower: {
        const double q = 1.0 + t * t;
        s = -lambda * (1.0 + (lambda - 1.0) * t * t) / (q * q);
        break;
      }
    }
    if (!std::isfinite(s)) fail(ErrorCode::NonFiniteSigma, "sigma(t) is not finite");
    return s;
  }

  const char* kind_name() const {
    switch (kind) {
      case Kind::Zero: return "zero";
      case Kind::Constant: return "constant";
      case Kind::InverseSquare: return "inverse_square";
      case Kind::Tabulated: return "tabulated";
      case Kind::LensPower: return "lens_power";
    }
    return "?";
  }
};

}  // namespace tdho

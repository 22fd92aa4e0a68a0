#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <vector>

#include "tdho/errors.hpp"

namespace tdho::ode {

/// Dormand-Prince 5(4) embedded pair (Dormand & Prince 1980), fixed 4-state
/// version for the oscillator system.  The caller supplies a step-size cap
/// h <= cap(t); accepted steps are reported through the observer.
using State4 = std::array<double, 4>;

struct StepRecord {
  double t;
  State4 y;
  State4 dy;
};

template <class Rhs>
std::vector<StepRecord> integrate_dopri5(Rhs&& rhs, State4 y0, double t0, double t1, double rtol,
                                         double atol, const std::function<double(double)>& cap) {
  constexpr double a21 = 1.0 / 5;
  constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                   a54 = -212.0 / 729;
  constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                   a65 = -5103.0 / 18656;
  constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                   b6 = 11.0 / 84;
  constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                   e6 = 22.0 / 525, e7 = -1.0 / 40;
  constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;

  auto axpy = [](const State4& y, double h, const State4& k) {
    State4 r;
    for (int i = 0; i < 4; ++i) r[i] = y[i] + h * k[i];
    return r;
  };

  std::vector<StepRecord> out;
  double t = t0;
  State4 y = y0;
  State4 k1 = rhs(t, y);
  out.push_back({t, y, k1});

  double h = std::min(cap(t0), (t1 - t0) / 16.0);
  h = std::max(h, 1e-12 * (t1 - t0));
  const double h_floor = 1e-14 * std::max(1.0, t1 - t0);
  std::size_t rejects_in_a_row = 0;

  while (t < t1) {
    h = std::min({h, cap(t), t1 - t});
    if (h < h_floor)
      fail(ErrorCode::StepFailure, "step size underflow, tolerance not attainable");

    State4 k2 = rhs(t + c2 * h, axpy(y, h, State4{a21 * k1[0], a21 * k1[1], a21 * k1[2], a21 * k1[3]}));
    State4 y3;
    for (int i = 0; i < 4; ++i) y3[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
    State4 k3 = rhs(t + c3 * h, y3);
    State4 y4;
    for (int i = 0; i < 4; ++i) y4[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
    State4 k4 = rhs(t + c4 * h, y4);
    State4 y5;
    for (int i = 0; i < 4; ++i)
      y5[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
    State4 k5 = rhs(t + c5 * h, y5);
    State4 y6;
    for (int i = 0; i < 4; ++i)
      y6[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
    State4 k6 = rhs(t + h, y6);
    State4 ynew;
    for (int i = 0; i < 4; ++i)
      ynew[i] = y[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
    State4 k7 = rhs(t + h, ynew);

    double err = 0.0;
    for (int i = 0; i < 4; ++i) {
      double e = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
      double sc = atol + rtol * std::max(std::abs(y[i]), std::abs(ynew[i]));
      err += (e / sc) * (e / sc);
    }
    err = std::sqrt(err / 4.0);

    if (err <= 1.0) {
      t += h;
      y = ynew;
      k1 = k7;  // FSAL
      out.push_back({t, y, k1});
      rejects_in_a_row = 0;
      double fac = err > 0.0 ? 0.9 * std::pow(err, -0.2) : 5.0;
      h *= std::clamp(fac, 0.2, 5.0);
    } else {
      if (++rejects_in_a_row > 64)
        fail(ErrorCode::StepFailure, "step controller cannot meet tolerance");
      h *= std::clamp(0.9 * std::pow(err, -0.2), 0.1, 0.9);
    }
  }
  return out;
}

}  // namespace tdho::ode

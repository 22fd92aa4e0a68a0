#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "tdho/errors.hpp"

namespace tdho {

enum class QuadratureRule { Trapezoid, Simpson };

/// Geometric grid from a to b with point ratio <= ratio_max and at least
/// min_points points; integrands here behave like s^(-1-delta), so geometric
/// spacing equidistributes the quadrature error.
inline std::vector<double> geometric_points(double a, double b, double ratio_max = 1.05,
                                            std::size_t min_points = 9) {
  if (!(b > a && a > 0.0)) fail(ErrorCode::OutOfRange, "geometric_points needs 0 < a < b");
  std::size_t n = std::max<std::size_t>(
      min_points, static_cast<std::size_t>(std::ceil(std::log(b / a) / std::log(ratio_max))) + 1);
  std::vector<double> pts(n);
  const double r = std::pow(b / a, 1.0 / static_cast<double>(n - 1));
  for (std::size_t i = 0; i < n; ++i) pts[i] = a * std::pow(r, static_cast<double>(i));
  pts.front() = a;
  pts.back() = b;
  return pts;
}

namespace detail {

/// Weights of the quadratic through (x0,x1,x2) integrated over [x0,x1].
inline void partial_simpson_left(double h0, double h1, double& w0, double& w1, double& w2) {
  w0 = h0 * (2.0 * h0 + 3.0 * h1) / (6.0 * (h0 + h1));
  w1 = h0 * (h0 + 3.0 * h1) / (6.0 * h1);
  w2 = -h0 * h0 * h0 / (6.0 * (h0 + h1) * h1);
}

/// Weights of the quadratic through (x0,x1,x2) integrated over [x1,x2].
inline void partial_simpson_right(double h0, double h1, double& w0, double& w1, double& w2) {
  w2 = h1 * (2.0 * h1 + 3.0 * h0) / (6.0 * (h0 + h1));
  w1 = h1 * (h1 + 3.0 * h0) / (6.0 * h0);
  w0 = -h1 * h1 * h1 / (6.0 * (h0 + h1) * h0);
}

}  // namespace detail

/// Integral of sampled values over the full time range (nonuniform nodes).
template <class T, class Axpy>
T integrate_samples_generic(const std::vector<double>& t, const std::vector<T>& v, T zero,
                            Axpy&& axpy, QuadratureRule rule) {
  if (t.size() != v.size() || t.size() < 2)
    fail(ErrorCode::QuadratureFailure, "need at least two samples to integrate");
  T acc = zero;
  if (rule == QuadratureRule::Trapezoid) {
    for (std::size_t i = 0; i + 1 < t.size(); ++i) {
      const double h = t[i + 1] - t[i];
      axpy(acc, 0.5 * h, v[i]);
      axpy(acc, 0.5 * h, v[i + 1]);
    }
    return acc;
  }
  std::size_t i = 0;
  while (i + 2 < t.size()) {
    const double h0 = t[i + 1] - t[i];
    const double h1 = t[i + 2] - t[i + 1];
    double w0l, w1l, w2l, w0r, w1r, w2r;
    detail::partial_simpson_left(h0, h1, w0l, w1l, w2l);
    detail::partial_simpson_right(h0, h1, w0r, w1r, w2r);
    axpy(acc, w0l + w0r, v[i]);
    axpy(acc, w1l + w1r, v[i + 1]);
    axpy(acc, w2l + w2r, v[i + 2]);
    i += 2;
  }
  if (i + 1 < t.size()) {
    // One interval remains.
    if (i == 0) {
      const double h = t[1] - t[0];
      axpy(acc, 0.5 * h, v[0]);
      axpy(acc, 0.5 * h, v[1]);
    } else {
      const double h0 = t[i] - t[i - 1];
      const double h1 = t[i + 1] - t[i];
      double w0, w1, w2;
      detail::partial_simpson_right(h0, h1, w0, w1, w2);
      axpy(acc, w0, v[i - 1]);
      axpy(acc, w1, v[i]);
      axpy(acc, w2, v[i + 1]);
    }
  }
  return acc;
}

inline double integrate_samples(const std::vector<double>& t, const std::vector<double>& v,
                                QuadratureRule rule = QuadratureRule::Simpson) {
  return integrate_samples_generic<double>(
      t, v, 0.0, [](double& acc, double w, double x) { acc += w * x; }, rule);
}

/// Suffix integrals S[i] = Int_{t_i}^{t_end} of the sampled function, for
/// every node, each a composite O(h^4) rule.  Generic over the sample type.
template <class T, class Axpy>
std::vector<T> suffix_integrals_generic(const std::vector<double>& t, const std::vector<T>& v,
                                        T zero, Axpy&& axpy, QuadratureRule rule) {
  const std::size_t m = t.size();
  if (v.size() != m || m < 2) fail(ErrorCode::QuadratureFailure, "need at least two samples");
  std::vector<T> s(m, zero);
  if (rule == QuadratureRule::Trapezoid || m == 2) {
    for (std::size_t i = m - 1; i-- > 0;) {
      s[i] = s[i + 1];
      const double h = t[i + 1] - t[i];
      axpy(s[i], 0.5 * h, v[i]);
      axpy(s[i], 0.5 * h, v[i + 1]);
    }
    return s;
  }
  // Last interval via the quadratic through the final three nodes.
  {
    const std::size_t i = m - 2;
    const double h0 = t[i] - t[i - 1];
    const double h1 = t[i + 1] - t[i];
    double w0, w1, w2;
    detail::partial_simpson_right(h0, h1, w0, w1, w2);
    s[i] = s[i + 1];
    axpy(s[i], w0, v[i - 1]);
    axpy(s[i], w1, v[i]);
    axpy(s[i], w2, v[i + 1]);
  }
  for (std::size_t i = m - 2; i-- > 0;) {
    // Pair (i, i+1, i+2) integrated over [t_i, t_{i+2}] plus the tail at i+2.
    const double h0 = t[i + 1] - t[i];
    const double h1 = t[i + 2] - t[i + 1];
    double w0l, w1l, w2l, w0r, w1r, w2r;
    detail::partial_simpson_left(h0, h1, w0l, w1l, w2l);
    detail::partial_simpson_right(h0, h1, w0r, w1r, w2r);
    s[i] = s[i + 2];
    axpy(s[i], w0l + w0r, v[i]);
    axpy(s[i], w1l + w1r, v[i + 1]);
    axpy(s[i], w2l + w2r, v[i + 2]);
  }
  return s;
}

inline std::vector<double> suffix_integrals(const std::vector<double>& t,
                                            const std::vector<double>& v,
                                            QuadratureRule rule = QuadratureRule::Simpson) {
  return suffix_integrals_generic<double>(
      t, v, 0.0, [](double& acc, double w, double x) { acc += w * x; }, rule);
}

}  // namespace tdho

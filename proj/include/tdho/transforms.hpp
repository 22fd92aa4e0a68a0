#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "tdho/classical.hpp"
#include "tdho/errors.hpp"
#include "tdho/fft.hpp"
#include "tdho/field.hpp"

namespace tdho {

// Unitary building blocks of the lens factorization
//   U0(t,0) = M(zeta2/zeta2') D(zeta2) F M(zeta2/zeta1)
// with M(tau) = exp(i x^2/(2 tau)), (D(tau) f)(x) = (i tau)^(-n/2) f(x/tau),
// and F the symmetric-normalization Fourier transform.  Modulations are
// handled through their chirp rate c = 1/(2 tau), which stays finite where
// tau passes through infinity.

namespace detail {

inline void fft_all_axes(Field& f, bool inverse) {
  const Grid& g = f.grid;
  std::vector<Complex> scratch;
  for (int a = 0; a < g.dim; ++a) {
    const std::size_t n = g.size[a];
    std::size_t stride = 1;
    for (int b = a + 1; b < g.dim; ++b) stride *= g.size[b];
    const std::size_t block = n * stride;
    const std::size_t nblocks = f.values.size() / block;
    scratch.resize(n);
    for (std::size_t blk = 0; blk < nblocks; ++blk) {
      for (std::size_t off = 0; off < stride; ++off) {
        Complex* base = f.values.data() + blk * block + off;
        for (std::size_t k = 0; k < n; ++k) scratch[k] = base[k * stride];
        fft::transform(scratch.data(), n, inverse);
        for (std::size_t k = 0; k < n; ++k) base[k * stride] = scratch[k];
      }
    }
  }
}

inline void apply_index_parity(Field& f) {
  const Grid& g = f.grid;
  const std::size_t n0 = g.size[0];
  const std::size_t n1 = g.dim > 1 ? g.size[1] : 1;
  const std::size_t n2 = g.dim > 2 ? g.size[2] : 1;
  std::size_t idx = 0;
  for (std::size_t i0 = 0; i0 < n0; ++i0)
    for (std::size_t i1 = 0; i1 < n1; ++i1)
      for (std::size_t i2 = 0; i2 < n2; ++i2, ++idx)
        if ((i0 + i1 + i2) & 1) f.values[idx] = -f.values[idx];
}

/// Per-axis factor tables exp(sign * i * x_min * xi_k) * scale.  For grids
/// centered on the origin the boundary phase reduces exactly to (-1)^k
/// (x_min * xi_k = -pi (k - N/2)), which keeps round trips at machine
/// precision; general origins fall back to explicit phases.
inline std::vector<Complex> boundary_phase(const Grid& pos, const Grid& freq, int axis,
                                           double sign, double scale) {
  const std::size_t n = freq.size[axis];
  std::vector<Complex> fac(n);
  const double mid = pos.x_min[axis] + 0.5 * static_cast<double>(n) * pos.dx[axis];
  if (std::abs(mid) <= 1e-12 * pos.dx[axis]) {
    for (std::size_t k = 0; k < n; ++k) fac[k] = Complex((k & 1) ? -scale : scale, 0.0);
  } else {
    for (std::size_t k = 0; k < n; ++k) {
      const double xi = freq.coord(axis, k);
      const double ang = sign * pos.x_min[axis] * xi;
      fac[k] = scale * Complex(std::cos(ang), std::sin(ang));
    }
  }
  return fac;
}

inline void apply_axis_factors(Field& f, const std::vector<std::vector<Complex>>& fac) {
  const Grid& g = f.grid;
  const std::size_t n0 = g.size[0];
  const std::size_t n1 = g.dim > 1 ? g.size[1] : 1;
  const std::size_t n2 = g.dim > 2 ? g.size[2] : 1;
  std::size_t idx = 0;
  for (std::size_t i0 = 0; i0 < n0; ++i0) {
    const Complex f0 = fac[0][i0];
    for (std::size_t i1 = 0; i1 < n1; ++i1) {
      const Complex f01 = g.dim > 1 ? f0 * fac[1][i1] : f0;
      for (std::size_t i2 = 0; i2 < n2; ++i2, ++idx) {
        f.values[idx] *= g.dim > 2 ? f01 * fac[2][i2] : f01;
      }
    }
  }
}

}  // namespace detail

/// Symmetric-normalization transform: samples of f on its grid map to
/// samples of (2 pi)^(-n/2) Int exp(-i x.xi) f(x) dx on the centered dual
/// frequency grid, to spectral accuracy.
inline Field fourier(const Field& f) {
  f.grid.validate();
  Field out = f;
  detail::apply_index_parity(out);
  detail::fft_all_axes(out, /*inverse=*/false);
  const Grid freq = f.grid.dual();
  std::vector<std::vector<Complex>> fac(static_cast<std::size_t>(f.grid.dim));
  for (int a = 0; a < f.grid.dim; ++a) {
    const double scale = f.grid.dx[a] / std::sqrt(2.0 * std::numbers::pi);
    fac[a] = detail::boundary_phase(f.grid, freq, a, -1.0, scale);
  }
  out.grid = freq;
  detail::apply_axis_factors(out, fac);
  out.time_tag = f.time_tag;
  return out;
}

/// Exact inverse of fourier().  The output lives on the centered dual of the
/// input frequency grid; for fields produced by fourier() from a centered
/// grid this is the original grid.
inline Field inverse_fourier(const Field& f) {
  f.grid.validate();
  const Grid pos = f.grid.dual();
  Field out = f;
  std::vector<std::vector<Complex>> fac(static_cast<std::size_t>(f.grid.dim));
  for (int a = 0; a < f.grid.dim; ++a) {
    const double scale = f.grid.dx[a] / std::sqrt(2.0 * std::numbers::pi);
    fac[a] = detail::boundary_phase(pos, f.grid, a, +1.0, scale);
  }
  detail::apply_axis_factors(out, fac);
  detail::fft_all_axes(out, /*inverse=*/true);
  detail::apply_index_parity(out);
  out.grid = pos;
  out.time_tag = f.time_tag;
  return out;
}

/// Multiply by exp(i c |x|^2) on the field's own grid.
inline Field modulate_chirp(const Field& f, double c) {
  Field out = f;
  transform_pointwise(out, [c](const std::array<double, 3>& x, Complex& v) {
    const double r2 = x[0] * x[0] + x[1] * x[1] + x[2] * x[2];
    const double ang = c * r2;
    v *= Complex(std::cos(ang), std::sin(ang));
  });
  return out;
}

/// M(tau): multiply by exp(i |x|^2 / (2 tau)).
inline Field modulate(const Field& f, double tau) {
  if (tau == 0.0) fail(ErrorCode::ZeroTau, "modulate requires tau != 0");
  return modulate_chirp(f, 0.5 / tau);
}

namespace detail {

inline Complex dilation_factor(int dim, double tau, double exponent_sign) {
  // (i tau)^(+-n/2), principal branch: arg(i tau) = sign(tau) * pi/2.
  const double mag = std::pow(std::abs(tau), exponent_sign * 0.5 * dim);
  const double ang =
      exponent_sign * 0.5 * dim * (tau > 0 ? 0.5 : -0.5) * std::numbers::pi;
  return mag * Complex(std::cos(ang), std::sin(ang));
}

inline Field reindex_reversed(const Field& f, const Grid& gout) {
  Field out(gout);
  const Grid& g = f.grid;
  const std::size_t n0 = g.size[0];
  const std::size_t n1 = g.dim > 1 ? g.size[1] : 1;
  const std::size_t n2 = g.dim > 2 ? g.size[2] : 1;
  std::size_t idx = 0;
  for (std::size_t i0 = 0; i0 < n0; ++i0)
    for (std::size_t i1 = 0; i1 < n1; ++i1)
      for (std::size_t i2 = 0; i2 < n2; ++i2, ++idx) {
        const std::size_t src = ((n0 - 1 - i0) * n1 + (g.dim > 1 ? n1 - 1 - i1 : 0)) * n2 +
                                (g.dim > 2 ? n2 - 1 - i2 : 0);
        out.values[idx] = f.values[src];
      }
  return out;
}

}  // namespace detail

/// D(tau): metadata-only rescale of the grid plus the unimodular amplitude
/// (i tau)^(-n/2).  No resampling happens, so the operation is exactly
/// unitary under the grid-aware quadrature.
inline Field dilate(const Field& f, double tau) {
  if (tau == 0.0) fail(ErrorCode::ZeroTau, "dilate requires tau != 0");
  const Complex fac = detail::dilation_factor(f.grid.dim, tau, -1.0);
  Field out;
  if (tau > 0.0) {
    out = f;
    out.grid = f.grid.scaled(tau);
  } else {
    Grid g = f.grid;
    for (int a = 0; a < g.dim; ++a) {
      const double x_max = f.grid.x_min[a] + (f.grid.size[a] - 1) * f.grid.dx[a];
      g.x_min[a] = tau * x_max;
      g.dx[a] = -tau * f.grid.dx[a];
    }
    out = detail::reindex_reversed(f, g);
    out.time_tag = f.time_tag;
  }
  for (auto& z : out.values) z *= fac;
  return out;
}

/// Exact inverse of dilate(., tau); one complex multiply per value.
inline Field dilate_inverse(const Field& f, double tau) {
  if (tau == 0.0) fail(ErrorCode::ZeroTau, "dilate_inverse requires tau != 0");
  const Complex fac = detail::dilation_factor(f.grid.dim, tau, +1.0);
  Field out;
  if (tau > 0.0) {
    out = f;
    out.grid = f.grid.scaled(1.0 / tau);
  } else {
    Grid g = f.grid;
    for (int a = 0; a < g.dim; ++a) {
      const double x_max = f.grid.x_min[a] + (f.grid.size[a] - 1) * f.grid.dx[a];
      g.x_min[a] = x_max / tau;
      g.dx[a] = -f.grid.dx[a] / tau;
    }
    out = detail::reindex_reversed(f, g);
    out.time_tag = f.time_tag;
  }
  for (auto& z : out.values) z *= fac;
  return out;
}

namespace detail {

inline ZetaValues mdfm_factors(const ClassicalSolution& cs, double t) {
  const ZetaValues z = cs.at(t);
  if (std::abs(z.zeta2) <= 1e-3 * std::max(std::abs(t), 1e-300))
    fail(ErrorCode::SingularFactor, "zeta2(t) too close to zero for the lens factorization");
  if (std::abs(z.dzeta2) <= 1e-12 * (1.0 + std::abs(z.zeta2)))
    fail(ErrorCode::SingularFactor, "zeta2'(t) too close to zero for the lens factorization");
  return z;
}

}  // namespace detail

/// U0(t,0) f via the four-factor composition, right to left.
inline Field mdfm_propagator(const ClassicalSolution& cs, double t, const Field& f) {
  const ZetaValues z = detail::mdfm_factors(cs, t);
  Field g = modulate_chirp(f, 0.5 * z.zeta1 / z.zeta2);
  g = fourier(g);
  g = dilate(g, z.zeta2);
  g = modulate_chirp(g, 0.5 * z.dzeta2 / z.zeta2);
  g.time_tag = t;
  return g;
}

/// U0(t,0)^{-1} f, each factor inverted exactly.
inline Field mdfm_inverse(const ClassicalSolution& cs, double t, const Field& f) {
  const ZetaValues z = detail::mdfm_factors(cs, t);
  Field g = modulate_chirp(f, -0.5 * z.dzeta2 / z.zeta2);
  g = dilate_inverse(g, z.zeta2);
  g = inverse_fourier(g);
  g = modulate_chirp(g, -0.5 * z.zeta1 / z.zeta2);
  g.time_tag.reset();
  return g;
}

/// U0(t,s) f = U0(t,0) U0(s,0)^{-1} f.
inline Field mdfm_between(const ClassicalSolution& cs, double t, double s, const Field& f) {
  return mdfm_propagator(cs, t, mdfm_inverse(cs, s, f));
}

/// Evaluate the trigonometric interpolant of `f` on an arbitrary grid.
/// O(N*M); intended for cross-grid comparisons in diagnostics and tests.
inline Field trig_resample(const Field& f, const Grid& target) {
  if (f.grid.dim != target.dim) fail(ErrorCode::ValidationError, "trig_resample dim mismatch");
  const Field fh = fourier(f);
  const double norm = std::pow(2.0 * std::numbers::pi, -0.5 * f.grid.dim) * fh.grid.cell_volume();
  Field out = make_field(target, [&](const std::array<double, 3>& x) {
    Complex acc(0.0, 0.0);
    const Grid& gq = fh.grid;
    const std::size_t n0 = gq.size[0];
    const std::size_t n1 = gq.dim > 1 ? gq.size[1] : 1;
    const std::size_t n2 = gq.dim > 2 ? gq.size[2] : 1;
    std::size_t idx = 0;
    for (std::size_t i0 = 0; i0 < n0; ++i0) {
      const double p0 = gq.coord(0, i0) * x[0];
      for (std::size_t i1 = 0; i1 < n1; ++i1) {
        const double p01 = p0 + (gq.dim > 1 ? gq.coord(1, i1) * x[1] : 0.0);
        for (std::size_t i2 = 0; i2 < n2; ++i2, ++idx) {
          const double ang = p01 + (gq.dim > 2 ? gq.coord(2, i2) * x[2] : 0.0);
          acc += fh.values[idx] * Complex(std::cos(ang), std::sin(ang));
        }
      }
    }
    return acc * norm;
  });
  out.time_tag = f.time_tag;
  return out;
}

}  // namespace tdho

#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <optional>
#include <random>
#include <vector>

#include "tdho/errors.hpp"

namespace tdho {

using Complex = std::complex<double>;

/// Uniform tensor grid in dimension 1..3.  Axis sizes are powers of two so
/// the spectral transforms stay exact; the induced frequency grid of axis a
/// has spacing 2*pi/(size[a]*dx[a]) and is centered at zero.
struct Grid {
  int dim = 1;
  std::array<std::size_t, 3> size{0, 0, 0};
  std::array<double, 3> x_min{0.0, 0.0, 0.0};
  std::array<double, 3> dx{1.0, 1.0, 1.0};

  static bool is_pow2(std::size_t n) { return n >= 2 && (n & (n - 1)) == 0; }

  /// Grid covering [-extent/2, extent/2) per axis with n points per axis.
  static Grid centered(int dim, std::size_t n, double extent) {
    Grid g;
    g.dim = dim;
    for (int a = 0; a < dim; ++a) {
      g.size[a] = n;
      g.dx[a] = extent / static_cast<double>(n);
      g.x_min[a] = -0.5 * static_cast<double>(n) * g.dx[a];
    }
    g.validate();
    return g;
  }

  void validate() const {
    if (dim < 1 || dim > 3) fail(ErrorCode::ValidationError, "grid dim must be 1..3");
    for (int a = 0; a < dim; ++a) {
      if (size[a] < 8 || !is_pow2(size[a]))
        fail(ErrorCode::ValidationError, "grid sizes must be powers of two >= 8");
      if (!(dx[a] > 0.0) || !std::isfinite(dx[a]) || !std::isfinite(x_min[a]))
        fail(ErrorCode::ValidationError, "grid spacing must be positive and finite");
    }
  }

  std::size_t total() const {
    std::size_t n = 1;
    for (int a = 0; a < dim; ++a) n *= size[a];
    return n;
  }

  double cell_volume() const {
    double v = 1.0;
    for (int a = 0; a < dim; ++a) v *= dx[a];
    return v;
  }

  double coord(int axis, std::size_t i) const {
    return x_min[axis] + static_cast<double>(i) * dx[axis];
  }

  bool centered_origin(double tol = 1e-9) const {
    for (int a = 0; a < dim; ++a) {
      double mid = x_min[a] + 0.5 * static_cast<double>(size[a]) * dx[a];
      if (std::abs(mid) > tol * dx[a]) return false;
    }
    return true;
  }

  /// Centered frequency grid dual to this one.
  Grid dual() const {
    Grid g = *this;
    for (int a = 0; a < dim; ++a) {
      g.dx[a] = 2.0 * std::numbers::pi / (static_cast<double>(size[a]) * dx[a]);
      g.x_min[a] = -0.5 * static_cast<double>(size[a]) * g.dx[a];
    }
    return g;
  }

  /// Metadata-only rescale x -> tau*x (tau > 0).
  Grid scaled(double tau) const {
    Grid g = *this;
    for (int a = 0; a < dim; ++a) {
      g.x_min[a] = x_min[a] * tau;
      g.dx[a] = dx[a] * tau;
    }
    return g;
  }

  bool compatible(const Grid& o, double rel = 1e-9) const {
    if (dim != o.dim) return false;
    for (int a = 0; a < dim; ++a) {
      if (size[a] != o.size[a]) return false;
      double s = std::abs(dx[a]) + std::abs(o.dx[a]);
      if (std::abs(dx[a] - o.dx[a]) > rel * s) return false;
      if (std::abs(x_min[a] - o.x_min[a]) > rel * (std::abs(x_min[a]) + std::abs(o.x_min[a]) + s))
        return false;
    }
    return true;
  }
};

/// Complex scalar field sampled on a Grid, row-major with the last axis
/// fastest.  time_tag records the physical time a snapshot belongs to.
struct Field {
  Grid grid;
  std::vector<Complex> values;
  std::optional<double> time_tag;

  Field() = default;
  explicit Field(const Grid& g) : grid(g), values(g.total(), Complex(0.0, 0.0)) {}
  Field(const Grid& g, std::vector<Complex> v) : grid(g), values(std::move(v)) {
    if (values.size() != grid.total())
      fail(ErrorCode::ValidationError, "field value count does not match grid");
  }

  std::size_t size() const { return values.size(); }

  bool finite() const {
    for (const auto& z : values)
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    return true;
  }
};

inline void require_compatible(const Field& a, const Field& b, const char* what) {
  if (!a.grid.compatible(b.grid))
    fail(ErrorCode::ValidationError, std::string("grid mismatch in ") + what);
}

/// Fill a field from f(x) where x is the coordinate vector.
template <class F>
Field make_field(const Grid& g, F&& f) {
  Field out(g);
  const std::size_t n0 = g.size[0];
  const std::size_t n1 = g.dim > 1 ? g.size[1] : 1;
  const std::size_t n2 = g.dim > 2 ? g.size[2] : 1;
  std::size_t idx = 0;
  for (std::size_t i0 = 0; i0 < n0; ++i0) {
    const double x0 = g.coord(0, i0);
    for (std::size_t i1 = 0; i1 < n1; ++i1) {
      const double x1 = g.dim > 1 ? g.coord(1, i1) : 0.0;
      for (std::size_t i2 = 0; i2 < n2; ++i2, ++idx) {
        const double x2 = g.dim > 2 ? g.coord(2, i2) : 0.0;
        out.values[idx] = f(std::array<double, 3>{x0, x1, x2});
      }
    }
  }
  return out;
}

/// Apply g(x, v) -> v in place.
template <class F>
void transform_pointwise(Field& f, F&& fn) {
  const Grid& g = f.grid;
  const std::size_t n0 = g.size[0];
  const std::size_t n1 = g.dim > 1 ? g.size[1] : 1;
  const std::size_t n2 = g.dim > 2 ? g.size[2] : 1;
  std::size_t idx = 0;
  for (std::size_t i0 = 0; i0 < n0; ++i0) {
    const double x0 = g.coord(0, i0);
    for (std::size_t i1 = 0; i1 < n1; ++i1) {
      const double x1 = g.dim > 1 ? g.coord(1, i1) : 0.0;
      for (std::size_t i2 = 0; i2 < n2; ++i2, ++idx) {
        const double x2 = g.dim > 2 ? g.coord(2, i2) : 0.0;
        fn(std::array<double, 3>{x0, x1, x2}, f.values[idx]);
      }
    }
  }
}

// Grid-aware norms.  All L^p quantities repo-wide go through these.

inline double l2_norm(const Field& f) {
  double s = 0.0;
  for (const auto& z : f.values) s += std::norm(z);
  return std::sqrt(s * f.grid.cell_volume());
}

inline double linf_norm(const Field& f) {
  double m = 0.0;
  for (const auto& z : f.values) m = std::max(m, std::abs(z));
  return m;
}

inline double lp_norm(const Field& f, double p) {
  if (std::isinf(p)) return linf_norm(f);
  if (!(p >= 1.0)) fail(ErrorCode::OutOfRange, "lp_norm requires p >= 1");
  double s = 0.0;
  for (const auto& z : f.values) s += std::pow(std::abs(z), p);
  return std::pow(s * f.grid.cell_volume(), 1.0 / p);
}

inline Complex inner_product(const Field& a, const Field& b) {
  require_compatible(a, b, "inner_product");
  Complex s(0.0, 0.0);
  for (std::size_t i = 0; i < a.values.size(); ++i) s += std::conj(a.values[i]) * b.values[i];
  return s * a.grid.cell_volume();
}

inline Field operator+(const Field& a, const Field& b) {
  require_compatible(a, b, "operator+");
  Field out = a;
  for (std::size_t i = 0; i < out.values.size(); ++i) out.values[i] += b.values[i];
  return out;
}

inline Field operator-(const Field& a, const Field& b) {
  require_compatible(a, b, "operator-");
  Field out = a;
  for (std::size_t i = 0; i < out.values.size(); ++i) out.values[i] -= b.values[i];
  return out;
}

inline Field operator*(Complex c, const Field& f) {
  Field out = f;
  for (auto& z : out.values) z *= c;
  return out;
}

inline double l2_distance(const Field& a, const Field& b) {
  require_compatible(a, b, "l2_distance");
  double s = 0.0;
  for (std::size_t i = 0; i < a.values.size(); ++i) s += std::norm(a.values[i] - b.values[i]);
  return std::sqrt(s * a.grid.cell_volume());
}

/// Deterministic complex noise field, used by the unitarity property suites.
inline Field random_field(const Grid& g, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Field out(g);
  for (auto& z : out.values) z = Complex(u(rng), u(rng));
  return out;
}

}  // namespace tdho

#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <vector>

#include "tdho/errors.hpp"

namespace tdho::fft {

using Complex = std::complex<double>;

inline bool is_pow2(std::size_t n) { return n >= 1 && (n & (n - 1)) == 0; }

/// Precomputed tables for one radix-2 size: bit-reversal permutation and the
/// unit roots exp(-2*pi*i*k/m) for every stage size m.  Tables are immutable
/// after construction and shared read-only across threads.
struct Plan {
  std::size_t n = 0;
  std::vector<std::size_t> bitrev;
  std::vector<Complex> twiddle;  // stage m uses entries [m/2 - 1, m - 2]

  explicit Plan(std::size_t size) : n(size) {
    bitrev.resize(n);
    std::size_t log2n = 0;
    while ((std::size_t{1} << log2n) < n) ++log2n;
    for (std::size_t i = 0; i < n; ++i) {
      std::size_t r = 0;
      for (std::size_t b = 0; b < log2n; ++b)
        if (i & (std::size_t{1} << b)) r |= std::size_t{1} << (log2n - 1 - b);
      bitrev[i] = r;
    }
    twiddle.resize(n > 1 ? n - 1 : 1);
    for (std::size_t m = 2; m <= n; m <<= 1) {
      for (std::size_t k = 0; k < m / 2; ++k) {
        double ang = -2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(m);
        twiddle[m / 2 - 1 + k] = Complex(std::cos(ang), std::sin(ang));
      }
    }
  }
};

inline const Plan& plan_for(std::size_t n) {
  static std::mutex mu;
  static std::map<std::size_t, std::unique_ptr<Plan>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, std::make_unique<Plan>(n)).first;
  return *it->second;
}

/// In-place transform with kernel exp(-+2*pi*i*jk/n); no normalization.
inline void transform(Complex* data, std::size_t n, bool inverse) {
  if (n == 1) return;
  if (!is_pow2(n)) fail(ErrorCode::ValidationError, "fft size must be a power of two");
  const Plan& p = plan_for(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t j = p.bitrev[i];
    if (j > i) std::swap(data[i], data[j]);
  }
  for (std::size_t m = 2; m <= n; m <<= 1) {
    const std::size_t half = m / 2;
    const Complex* w = &p.twiddle[half - 1];
    for (std::size_t base = 0; base < n; base += m) {
      for (std::size_t k = 0; k < half; ++k) {
        Complex wk = inverse ? std::conj(w[k]) : w[k];
        Complex a = data[base + k];
        Complex b = data[base + k + half] * wk;
        data[base + k] = a + b;
        data[base + k + half] = a - b;
      }
    }
  }
}

}  // namespace tdho::fft

#pragma once

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <string>

#include "tdho/errors.hpp"
#include "tdho/field.hpp"

namespace tdho {

// Field snapshot format (shared repo-wide):
//   magic "TDHO" | u32 version | u32 dim | u32 sizes[dim]
//   | f64 x_min[dim] | f64 dx[dim] | u8 has_time_tag | f64 time_tag
//   | u64 count | count * (f64 re, f64 im)
// All integers and floats little-endian.

static_assert(std::endian::native == std::endian::little,
              "snapshot format assumes a little-endian host");

namespace detail_snapshot {

template <class T>
void put(std::ofstream& out, T v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <class T>
T get(std::ifstream& in) {
  T v{};
  in.read(reinterpret_cast<char*>(&v), sizeof(T));
  if (!in) fail(ErrorCode::IoError, "truncated snapshot file");
  return v;
}

}  // namespace detail_snapshot

inline void write_field(const std::string& path, const Field& f) {
  using namespace detail_snapshot;
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::IoError, "cannot open " + path + " for writing");
  out.write("TDHO", 4);
  put<std::uint32_t>(out, 1);
  put<std::uint32_t>(out, static_cast<std::uint32_t>(f.grid.dim));
  for (int a = 0; a < f.grid.dim; ++a)
    put<std::uint32_t>(out, static_cast<std::uint32_t>(f.grid.size[a]));
  for (int a = 0; a < f.grid.dim; ++a) put<double>(out, f.grid.x_min[a]);
  for (int a = 0; a < f.grid.dim; ++a) put<double>(out, f.grid.dx[a]);
  put<std::uint8_t>(out, f.time_tag.has_value() ? 1 : 0);
  put<double>(out, f.time_tag.value_or(0.0));
  put<std::uint64_t>(out, static_cast<std::uint64_t>(f.values.size()));
  for (const auto& z : f.values) {
    put<double>(out, z.real());
    put<double>(out, z.imag());
  }
  if (!out) fail(ErrorCode::IoError, "write failed for " + path);
}

inline Field read_field(const std::string& path) {
  using namespace detail_snapshot;
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::IoError, "cannot open " + path);
  char magic[4];
  in.read(magic, 4);
  if (!in || std::memcmp(magic, "TDHO", 4) != 0)
    fail(ErrorCode::ValidationError, path + ": bad magic, not a field snapshot");
  const auto version = get<std::uint32_t>(in);
  if (version != 1) fail(ErrorCode::ValidationError, path + ": unsupported snapshot version");
  Grid g;
  g.dim = static_cast<int>(get<std::uint32_t>(in));
  if (g.dim < 1 || g.dim > 3) fail(ErrorCode::ValidationError, path + ": bad dimension");
  for (int a = 0; a < g.dim; ++a) g.size[a] = get<std::uint32_t>(in);
  for (int a = 0; a < g.dim; ++a) g.x_min[a] = get<double>(in);
  for (int a = 0; a < g.dim; ++a) g.dx[a] = get<double>(in);
  g.validate();
  const bool has_tag = get<std::uint8_t>(in) != 0;
  const double tag = get<double>(in);
  const auto count = get<std::uint64_t>(in);
  if (count != g.total()) fail(ErrorCode::ValidationError, path + ": value count mismatch");
  Field f(g);
  for (auto& z : f.values) {
    const double re = get<double>(in);
    const double im = get<double>(in);
    z = Complex(re, im);
  }
  if (has_tag) f.time_tag = tag;
  return f;
}

}  // namespace tdho

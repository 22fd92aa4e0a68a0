#pragma once

#include <string>
#include <vector>

#include "tdho/field.hpp"

namespace tdho {

/// Time-ordered snapshots of a propagated field.  Snapshots may live on
/// per-time rescaled grids (moving-frame runs); the grid travels with each
/// Field.  meta carries solver settings echoes and conservation diagnostics.
struct Trajectory {
  std::vector<double> times;
  std::vector<Field> fields;

  struct Meta {
    double initial_l2 = 0.0;
    double max_mass_drift = 0.0;  // max |l2(t) - l2(0)| / l2(0)
    double dt_initial = 0.0;
    std::string dt_control;
    std::string frame;
    std::size_t steps_taken = 0;
  } meta;

  std::size_t size() const { return times.size(); }

  void push(double t, Field f) {
    times.push_back(t);
    fields.push_back(std::move(f));
  }
};

}  // namespace tdho

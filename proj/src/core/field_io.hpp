#pragma once

#include <iosfwd>

#include "core/grid.hpp"

namespace minkflow {

/// Header "minkflow-field v1 n_r=<int> n_theta=<int> t=<float>", then n_r rows
/// of n_theta space-separated values at 17 significant digits.
void write_field(std::ostream& os, const Field& u, double t);

struct FieldSnapshot {
  Field u;
  double t = 0.0;
};

/// Throws Error(Parse) with the offending line number.
FieldSnapshot read_field(std::istream& is);

}  // namespace minkflow

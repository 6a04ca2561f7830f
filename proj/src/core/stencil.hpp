#pragma once

// Padded copy of a Field used by all derivative kernels: one extra row on
// each side (pole mirror below ring 0, ghost ring above n_r - 1) and one
// periodic halo column on each side.

#include <cstddef>
#include <vector>

#include "core/grid.hpp"

namespace minkflow::detail {

class PaddedField {
 public:
  PaddedField() = default;
  PaddedField(std::size_t n_r, std::size_t n_theta)
      : n_r_(n_r), n_theta_(n_theta), stride_(n_theta + 2), data_((n_r + 2) * (n_theta + 2)) {}

  /// Copies u (interior and ghost) and rebuilds the pole row and halo columns.
  /// Throws Error(MissingGhostRow) if u carries no ghost ring.
  void load(const Grid& grid, const Field& u);

  /// Row j in [-1, n_r]; valid column indices are [-1, n_theta].
  const double* row(std::ptrdiff_t j) const { return data_.data() + (j + 1) * stride_ + 1; }
  double* row(std::ptrdiff_t j) { return data_.data() + (j + 1) * stride_ + 1; }

 private:
  std::size_t n_r_ = 0;
  std::size_t n_theta_ = 0;
  std::size_t stride_ = 0;
  std::vector<double> data_;
};

struct LocalDerivatives {
  double r, t, rr, tt, rt;
};

struct StencilScales {
  double inv_2dr, inv_2dt, inv_dr2, inv_dt2, inv_4drdt;

  explicit StencilScales(const Grid& g)
      : inv_2dr(0.5 / g.dr()),
        inv_2dt(0.5 / g.dtheta()),
        inv_dr2(1.0 / (g.dr() * g.dr())),
        inv_dt2(1.0 / (g.dtheta() * g.dtheta())),
        inv_4drdt(0.25 / (g.dr() * g.dtheta())) {}
};

inline LocalDerivatives local_derivatives(const double* below, const double* here,
                                          const double* above, std::ptrdiff_t k,
                                          const StencilScales& s) {
  const double c = here[k];
  return {
      (above[k] - below[k]) * s.inv_2dr,
      (here[k + 1] - here[k - 1]) * s.inv_2dt,
      (above[k] - 2.0 * c + below[k]) * s.inv_dr2,
      (here[k + 1] - 2.0 * c + here[k - 1]) * s.inv_dt2,
      (above[k + 1] - above[k - 1] - below[k + 1] + below[k - 1]) * s.inv_4drdt,
  };
}

}  // namespace minkflow::detail

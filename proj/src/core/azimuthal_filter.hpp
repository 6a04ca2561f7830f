#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "core/grid.hpp"

namespace minkflow {

/// Truncates the azimuthal Fourier series of near-pole rings to the modes kept
/// by Grid::kept_modes. Rings that keep every mode are left untouched.
class AzimuthalFilter {
 public:
  explicit AzimuthalFilter(const Grid& grid);
  ~AzimuthalFilter();
  AzimuthalFilter(const AzimuthalFilter&) = delete;
  AzimuthalFilter& operator=(const AzimuthalFilter&) = delete;
  AzimuthalFilter(AzimuthalFilter&& other) noexcept;
  AzimuthalFilter& operator=(AzimuthalFilter&&) = delete;

  /// values is an n_r x n_theta row-major node array.
  void apply(std::span<double> values);

 private:
  struct Plans;
  std::size_t n_theta_ = 0;
  std::vector<std::size_t> kept_;
  Plans* plans_ = nullptr;
};

}  // namespace minkflow

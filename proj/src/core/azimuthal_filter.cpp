#include "core/azimuthal_filter.hpp"

#include <fftw3.h>

#include <algorithm>
#include <mutex>

namespace minkflow {

namespace {
// FFTW's planner is not reentrant.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}
}  // namespace

struct AzimuthalFilter::Plans {
  double* real = nullptr;
  fftw_complex* spectrum = nullptr;
  fftw_plan forward = nullptr;
  fftw_plan backward = nullptr;
};

AzimuthalFilter::AzimuthalFilter(const Grid& grid) : n_theta_(grid.n_theta()) {
  kept_.resize(grid.n_r());
  bool any = false;
  for (std::size_t j = 0; j < grid.n_r(); ++j) {
    kept_[j] = grid.kept_modes(j);
    any = any || grid.ring_filtered(j);
  }
  if (!any) return;
  const int n = static_cast<int>(n_theta_);
  std::lock_guard lock(planner_mutex());
  plans_ = new Plans;
  plans_->real = fftw_alloc_real(n_theta_);
  plans_->spectrum = fftw_alloc_complex(n_theta_ / 2 + 1);
  // FFTW_ESTIMATE keeps the chosen algorithm, and so the rounding, reproducible.
  plans_->forward =
      fftw_plan_dft_r2c_1d(n, plans_->real, plans_->spectrum, FFTW_ESTIMATE | FFTW_DESTROY_INPUT);
  plans_->backward =
      fftw_plan_dft_c2r_1d(n, plans_->spectrum, plans_->real, FFTW_ESTIMATE | FFTW_DESTROY_INPUT);
}

AzimuthalFilter::~AzimuthalFilter() {
  if (!plans_) return;
  std::lock_guard lock(planner_mutex());
  fftw_destroy_plan(plans_->forward);
  fftw_destroy_plan(plans_->backward);
  fftw_free(plans_->real);
  fftw_free(plans_->spectrum);
  delete plans_;
}

AzimuthalFilter::AzimuthalFilter(AzimuthalFilter&& other) noexcept
    : n_theta_(other.n_theta_), kept_(std::move(other.kept_)), plans_(other.plans_) {
  other.plans_ = nullptr;
}

void AzimuthalFilter::apply(std::span<double> values) {
  if (!plans_) return;
  const std::size_t bins = n_theta_ / 2 + 1;
  const double scale = 1.0 / static_cast<double>(n_theta_);
  for (std::size_t j = 0; j < kept_.size(); ++j) {
    if (kept_[j] >= n_theta_ / 2) continue;
    double* ring = values.data() + j * n_theta_;
    std::copy(ring, ring + n_theta_, plans_->real);
    fftw_execute(plans_->forward);
    for (std::size_t m = kept_[j] + 1; m < bins; ++m) {
      plans_->spectrum[m][0] = 0.0;
      plans_->spectrum[m][1] = 0.0;
    }
    fftw_execute(plans_->backward);
    for (std::size_t k = 0; k < n_theta_; ++k) ring[k] = plans_->real[k] * scale;
  }
}

}  // namespace minkflow

#pragma once

// Boundary-fitted polar mesh with staggered radial nodes and the metric data
// needed to turn (r, theta) differences into Cartesian derivatives.
//
// Computational coordinates: x = center + r R(theta) (cos theta, sin theta),
// r in [0, 1]. Ring j sits at r_j = (j + 1/2) / n_r, so no node lands on the
// pole; a single ghost ring at r = 1 + 1/(2 n_r) carries the boundary closure.

#include <array>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "core/domain.hpp"
#include "core/vec2.hpp"

namespace minkflow {

/// Grid function on the n_r x n_theta nodes, plus an optional ghost ring.
class Field {
 public:
  Field() = default;
  Field(std::size_t n_r, std::size_t n_theta, double fill = 0.0);

  std::size_t n_r() const { return n_r_; }
  std::size_t n_theta() const { return n_theta_; }
  std::size_t size() const { return values_.size(); }

  double& operator()(std::size_t j, std::size_t k) { return values_[j * n_theta_ + k]; }
  double operator()(std::size_t j, std::size_t k) const { return values_[j * n_theta_ + k]; }

  std::span<double> values() { return values_; }
  std::span<const double> values() const { return values_; }
  std::span<double> row(std::size_t j) { return {values_.data() + j * n_theta_, n_theta_}; }
  std::span<const double> row(std::size_t j) const {
    return {values_.data() + j * n_theta_, n_theta_};
  }

  bool has_ghost() const { return !ghost_.empty(); }
  std::span<const double> ghost() const { return ghost_; }
  void set_ghost(std::vector<double> ghost);
  void clear_ghost() { ghost_.clear(); }

  bool all_finite() const;

 private:
  std::size_t n_r_ = 0;
  std::size_t n_theta_ = 0;
  std::vector<double> values_;
  std::vector<double> ghost_;
};

struct GradientField {
  std::vector<double> x;
  std::vector<double> y;
};

struct HessianField {
  std::vector<double> xx;
  std::vector<double> xy;
  std::vector<double> yy;
};

/// Inverse Jacobian d(r,theta)/d(x,y) and the second derivatives of the
/// computational coordinates, d^2 r/dx_i dx_j and d^2 theta/dx_i dx_j.
struct PointMetric {
  double r_x = 0, r_y = 0, t_x = 0, t_y = 0;
  double r_xx = 0, r_xy = 0, r_yy = 0;
  double t_xx = 0, t_xy = 0, t_yy = 0;
  double jacobian = 0;
};

/// Geometry at the physical boundary r = 1 above column k.
struct BoundaryNode {
  double theta = 0;
  Vec2 normal{};              // outward unit normal gamma
  double normal_r = 0;        // gamma . grad r
  double normal_theta = 0;    // gamma . grad theta
  double arc_speed = 0;       // ds / dtheta
};

/// Value at the mirror point across the pole, -r_0 R(theta_k) e(theta_k),
/// reconstructed from rings 0..2 of the opposite column.
struct PoleSource {
  std::size_t column = 0;
  std::array<double, 3> weights{1.0, 0.0, 0.0};
};

class Grid {
 public:
  /// Throws Error(ResolutionTooLow) unless n_r >= 8, n_theta >= 16 and even.
  Grid(const Domain& domain, std::size_t n_r, std::size_t n_theta);

  std::size_t n_r() const { return n_r_; }
  std::size_t n_theta() const { return n_theta_; }
  std::size_t node_count() const { return n_r_ * n_theta_; }
  double dr() const { return dr_; }
  double dtheta() const { return dtheta_; }
  Vec2 center() const { return center_; }

  double radius(std::size_t j) const { return (static_cast<double>(j) + 0.5) * dr_; }
  double ghost_radius() const { return 1.0 + 0.5 * dr_; }
  double theta(std::size_t k) const { return static_cast<double>(k) * dtheta_; }

  /// Physical position of node (j, k); j == n_r addresses the ghost ring.
  Vec2 position(std::size_t j, std::size_t k) const { return positions_[j * n_theta_ + k]; }
  /// Mapping evaluated at arbitrary computational coordinates.
  Vec2 map(double r, double theta) const;
  PointMetric metric_at(double r, double theta) const;

  double h_min() const { return h_min_; }
  /// Cell area attached to node (j, k); sums to the domain area.
  double area_weight(std::size_t j, std::size_t k) const { return weight_[j * n_theta_ + k]; }
  double total_area() const { return total_area_; }

  const BoundaryNode& boundary(std::size_t k) const { return boundary_[k]; }
  const PoleSource& pole_source(std::size_t k) const { return pole_[k]; }

  /// Highest azimuthal mode kept by the pole filter on ring j; n_theta/2 means
  /// the ring is not filtered.
  std::size_t kept_modes(std::size_t j) const { return kept_modes_[j]; }
  bool ring_filtered(std::size_t j) const { return kept_modes_[j] < n_theta_ / 2; }

  // Metric arrays, one entry per node, row-major in (j, k).
  const double* r_x() const { return r_x_.data(); }
  const double* r_y() const { return r_y_.data(); }
  const double* t_x() const { return t_x_.data(); }
  const double* t_y() const { return t_y_.data(); }
  const double* r_xx() const { return r_xx_.data(); }
  const double* r_xy() const { return r_xy_.data(); }
  const double* r_yy() const { return r_yy_.data(); }
  const double* t_xx() const { return t_xx_.data(); }
  const double* t_xy() const { return t_xy_.data(); }
  const double* t_yy() const { return t_yy_.data(); }

  /// Samples f at the nodes; with_ghost also fills the ghost ring.
  Field sample(const std::function<double(Vec2)>& f, bool with_ghost = false) const;

 private:
  DomainSpec spec_;
  std::size_t n_r_;
  std::size_t n_theta_;
  double dr_;
  double dtheta_;
  Vec2 center_;
  std::vector<Vec2> positions_;
  std::vector<double> r_x_, r_y_, t_x_, t_y_;
  std::vector<double> r_xx_, r_xy_, r_yy_, t_xx_, t_xy_, t_yy_;
  std::vector<double> weight_;
  double total_area_ = 0.0;
  std::vector<BoundaryNode> boundary_;
  std::vector<PoleSource> pole_;
  std::vector<std::size_t> kept_modes_;
  double h_min_ = 0.0;
};

inline Grid build_grid(const Domain& domain, std::size_t n_r, std::size_t n_theta) {
  return Grid(domain, n_r, n_theta);
}

/// Cartesian gradient. Requires the ghost ring (Error MissingGhostRow).
GradientField gradient(const Grid& grid, const Field& u);
/// Cartesian Hessian. Requires the ghost ring (Error MissingGhostRow).
HessianField hessian(const Grid& grid, const Field& u);

/// d u / d theta at r = 1, extrapolated from the last two rings. Interior only.
std::vector<double> boundary_theta_derivative(const Grid& grid, const Field& u);
/// Arc-length derivative of u along the boundary, q = tau . Du.
std::vector<double> boundary_tangential_derivative(const Grid& grid, const Field& u);
/// gamma . Du at r = 1 as reconstructed from the boundary and ghost rings.
std::vector<double> boundary_normal_derivative(const Grid& grid, const Field& u);

}  // namespace minkflow

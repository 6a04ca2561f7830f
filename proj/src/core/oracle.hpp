#pragma once

// Reference computations independent of the 2-D solver: the radially
// symmetric flow on a disk, the radial translator by shooting, and planes
// that solve the boundary problem exactly.

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <optional>
#include <vector>

#include "core/domain.hpp"
#include "core/vec2.hpp"

namespace minkflow {

struct RadialProfile {
  std::vector<double> radii;
  std::vector<double> values;
  std::vector<double> slopes;  // u'(r) where the producer knows it
  std::vector<double> rates;   // u_t(r) for evolved profiles
  std::optional<double> lambda;
};

/// Cubic Lagrange interpolation of profile.values at r.
double interpolate(const RadialProfile& profile, double r);

/// Solves u_t = u'' / (1 - u'^2) + u' / r on [0, radius] with u'(0) = 0 and
/// u'(radius) = alpha / sqrt(1 + alpha^2), on n_pts staggered cells with
/// explicit midpoint steps, dt = sigma h^2 / (2 v_max^2). The result carries the
/// final rates and lambda = area-weighted mean of u_t.
/// Throws Error(SpacelikeLost) or Error(InvalidArgument).
RadialProfile radial_flow(const std::function<double(double)>& u0, double alpha, double radius,
                          double t_end, std::size_t n_pts, double sigma = 0.5);
RadialProfile radial_flow(const RadialProfile& u0, double alpha, double radius, double t_end,
                          std::size_t n_pts, double sigma = 0.5);

/// Radial translator u(r) + lambda t: shoots on lambda so that
/// phi' = (lambda - phi / r)(1 - phi^2), phi(0) = 0 reaches
/// phi(radius) = alpha / sqrt(1 + alpha^2). Samples r_i = i radius / (n_pts - 1),
/// u(0) = 0. Throws Error(ShootingFailed).
RadialProfile translator_shoot(double alpha, double radius, std::size_t n_pts = 4096);

/// Plane u = a . x with the angle prescription that makes it stationary.
struct CompatiblePlane {
  Vec2 slope;
  AnglePrescription alpha;
  double operator()(Vec2 x) const { return dot(slope, x); }
};

/// Throws Error(NotSpacelike) if |a| >= 1.
CompatiblePlane compatible_plane(Vec2 a);
/// alpha(theta) of the compatible plane on a concrete domain.
double compatible_plane_alpha(Vec2 a, const Domain& domain, double theta);

/// "# lambda=<value>" (when known), then "r,u" rows with 17 significant digits.
void write_profile_csv(std::ostream& os, const RadialProfile& profile);
RadialProfile read_profile_csv(std::istream& is);

}  // namespace minkflow

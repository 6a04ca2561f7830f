#pragma once

// Strictly convex planar domains described as radial graphs about a center,
// together with the boundary-angle prescription and the constants the
// gradient estimate is built from.

#include <cstddef>
#include <span>
#include <vector>

#include "core/vec2.hpp"

namespace minkflow {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr int kMaxFourierOrder = 16;

enum class DomainKind { Disk, Ellipse, RadialFourier };

struct DomainSpec {
  DomainKind kind = DomainKind::Disk;
  double radius = 1.0;  // disk
  double semi_a = 1.0;  // ellipse, along x
  double semi_b = 1.0;  // ellipse, along y
  // radial-fourier: R(t) = mean_radius + sum_m cos_coeffs[m-1] cos(m t) + sin_coeffs[m-1] sin(m t)
  double mean_radius = 1.0;
  std::vector<double> cos_coeffs;
  std::vector<double> sin_coeffs;
  Vec2 center{};

  static DomainSpec disk(double radius, Vec2 center = {});
  static DomainSpec ellipse(double semi_a, double semi_b, Vec2 center = {});
  static DomainSpec radial_fourier(double mean_radius, std::vector<double> cos_coeffs,
                                   std::vector<double> sin_coeffs, Vec2 center = {});

  /// Highest Fourier mode present in R(theta); 0 for the disk, 2 for ellipses
  /// (used only to size boundary sampling).
  int highest_mode() const;
};

/// R(theta) and its first two derivatives.
struct RadialSample {
  double value = 0.0;
  double d1 = 0.0;
  double d2 = 0.0;
};

RadialSample radial_function(const DomainSpec& spec, double theta);

enum class AngleKind { Constant, Fourier, CompatiblePlane };

/// Boundary angle alpha as a function of the boundary parameter only.
struct AnglePrescription {
  AngleKind kind = AngleKind::Constant;
  double value = 0.0;  // constant, or the mean term of the Fourier series
  std::vector<double> cos_coeffs;
  std::vector<double> sin_coeffs;
  Vec2 plane_slope{};  // CompatiblePlane: alpha = (gamma . a) / sqrt(1 - |a|^2)

  static AnglePrescription constant(double value);
  static AnglePrescription fourier(double mean, std::vector<double> cos_coeffs,
                                   std::vector<double> sin_coeffs);
  static AnglePrescription compatible_plane(Vec2 slope);

  int highest_mode() const;
};

class Domain {
 public:
  /// Samples the boundary at n_samples points and validates strict convexity.
  /// Throws Error(NonPositiveRadius | NotStrictlyConvex | InvalidArgument).
  Domain(DomainSpec spec, AnglePrescription alpha, std::size_t n_samples = 1024);

  const DomainSpec& spec() const { return spec_; }
  const AnglePrescription& angle() const { return alpha_; }
  Vec2 center() const { return spec_.center; }

  RadialSample radius_at(double theta) const { return radial_function(spec_, theta); }
  Vec2 boundary_point(double theta) const;
  /// ds/dtheta along the boundary curve.
  double arc_speed(double theta) const;
  /// Unit tangent, counter-clockwise.
  Vec2 boundary_tangent(double theta) const;
  /// Outward unit normal gamma.
  Vec2 boundary_normal(double theta) const;
  double curvature(double theta) const;
  double alpha(double theta) const;
  /// d alpha / d theta.
  double alpha_derivative(double theta) const;

  double alpha_bar() const { return alpha_bar_; }
  double kappa_min() const { return kappa_min_; }
  double C_alpha() const { return c_alpha_; }

  std::span<const double> sample_thetas() const { return thetas_; }
  std::span<const double> sample_kappa() const { return kappa_; }
  std::span<const Vec2> sample_normals() const { return gamma_; }

 private:
  DomainSpec spec_;
  AnglePrescription alpha_;
  std::vector<double> thetas_;
  std::vector<double> kappa_;
  std::vector<Vec2> gamma_;
  double alpha_bar_ = 0.0;
  double kappa_min_ = 0.0;
  double c_alpha_ = 0.0;
};

inline Domain build_domain(DomainSpec spec, AnglePrescription alpha, std::size_t n_samples) {
  return Domain(std::move(spec), std::move(alpha), n_samples);
}

/// Gradient-estimate constant
///   max{ 2 sqrt(1+ab^2), (1+ab^2)(ab C_H/k + (2ab^2+1) C_a/k + 1), sup v0 }
/// with ab = alpha_bar, k = kappa_min, C_a = C_alpha.
double theoretical_C(double alpha_bar, double kappa_min, double C_alpha, double C_H,
                     double sup_v0);
double theoretical_C(const Domain& domain, double C_H, double sup_v0);

}  // namespace minkflow

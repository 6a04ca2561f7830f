#include "core/domain.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "core/error.hpp"

namespace minkflow {

namespace {

struct SeriesValue {
  double value = 0.0;
  double d1 = 0.0;
  double d2 = 0.0;
};

SeriesValue fourier_series(double mean, const std::vector<double>& c,
                           const std::vector<double>& s, double theta) {
  SeriesValue out{mean, 0.0, 0.0};
  const std::size_t modes = std::max(c.size(), s.size());
  for (std::size_t i = 0; i < modes; ++i) {
    const double m = static_cast<double>(i + 1);
    const double a = i < c.size() ? c[i] : 0.0;
    const double b = i < s.size() ? s[i] : 0.0;
    const double cm = std::cos(m * theta);
    const double sm = std::sin(m * theta);
    out.value += a * cm + b * sm;
    out.d1 += m * (-a * sm + b * cm);
    out.d2 += -m * m * (a * cm + b * sm);
  }
  return out;
}

bool all_finite(const std::vector<double>& v) {
  return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

}  // namespace

DomainSpec DomainSpec::disk(double radius, Vec2 center) {
  DomainSpec s;
  s.kind = DomainKind::Disk;
  s.radius = radius;
  s.center = center;
  return s;
}

DomainSpec DomainSpec::ellipse(double semi_a, double semi_b, Vec2 center) {
  DomainSpec s;
  s.kind = DomainKind::Ellipse;
  s.semi_a = semi_a;
  s.semi_b = semi_b;
  s.center = center;
  return s;
}

DomainSpec DomainSpec::radial_fourier(double mean_radius, std::vector<double> cos_coeffs,
                                      std::vector<double> sin_coeffs, Vec2 center) {
  DomainSpec s;
  s.kind = DomainKind::RadialFourier;
  s.mean_radius = mean_radius;
  s.cos_coeffs = std::move(cos_coeffs);
  s.sin_coeffs = std::move(sin_coeffs);
  s.center = center;
  return s;
}

int DomainSpec::highest_mode() const {
  switch (kind) {
    case DomainKind::Disk: return 0;
    case DomainKind::Ellipse: return 2;
    case DomainKind::RadialFourier:
      return static_cast<int>(std::max(cos_coeffs.size(), sin_coeffs.size()));
  }
  return 0;
}

RadialSample radial_function(const DomainSpec& spec, double theta) {
  switch (spec.kind) {
    case DomainKind::Disk:
      return {spec.radius, 0.0, 0.0};
    case DomainKind::Ellipse: {
      // R = ab D^{-1/2}, D = b^2 cos^2 + a^2 sin^2
      const double a = spec.semi_a;
      const double b = spec.semi_b;
      const double c = std::cos(theta);
      const double s = std::sin(theta);
      const double d = b * b * c * c + a * a * s * s;
      const double d1 = (a * a - b * b) * std::sin(2.0 * theta);
      const double d2 = 2.0 * (a * a - b * b) * std::cos(2.0 * theta);
      const double ab = a * b;
      const double r = ab / std::sqrt(d);
      const double r1 = -0.5 * ab * d1 / (d * std::sqrt(d));
      const double r2 = ab * (0.75 * d1 * d1 / (d * d * std::sqrt(d)) - 0.5 * d2 / (d * std::sqrt(d)));
      return {r, r1, r2};
    }
    case DomainKind::RadialFourier: {
      const auto f = fourier_series(spec.mean_radius, spec.cos_coeffs, spec.sin_coeffs, theta);
      return {f.value, f.d1, f.d2};
    }
  }
  return {};
}

AnglePrescription AnglePrescription::constant(double value) {
  AnglePrescription a;
  a.kind = AngleKind::Constant;
  a.value = value;
  return a;
}

AnglePrescription AnglePrescription::fourier(double mean, std::vector<double> cos_coeffs,
                                             std::vector<double> sin_coeffs) {
  AnglePrescription a;
  a.kind = AngleKind::Fourier;
  a.value = mean;
  a.cos_coeffs = std::move(cos_coeffs);
  a.sin_coeffs = std::move(sin_coeffs);
  return a;
}

AnglePrescription AnglePrescription::compatible_plane(Vec2 slope) {
  AnglePrescription a;
  a.kind = AngleKind::CompatiblePlane;
  a.plane_slope = slope;
  return a;
}

int AnglePrescription::highest_mode() const {
  if (kind != AngleKind::Fourier) return 0;
  return static_cast<int>(std::max(cos_coeffs.size(), sin_coeffs.size()));
}

Domain::Domain(DomainSpec spec, AnglePrescription alpha, std::size_t n_samples)
    : spec_(std::move(spec)), alpha_(std::move(alpha)) {
  if (n_samples < 64) {
    throw Error(ErrorCode::InvalidArgument,
                "domain: n_samples must be >= 64, got " + std::to_string(n_samples));
  }
  const int modes = std::max(spec_.highest_mode(), alpha_.highest_mode());
  if (spec_.highest_mode() > kMaxFourierOrder || alpha_.highest_mode() > kMaxFourierOrder) {
    throw Error(ErrorCode::InvalidArgument, "domain: Fourier order exceeds 16");
  }
  if (n_samples < static_cast<std::size_t>(16 * modes)) {
    throw Error(ErrorCode::InvalidArgument,
                "domain: n_samples must be >= 16 x highest Fourier mode (" +
                    std::to_string(16 * modes) + ")");
  }
  const bool finite = std::isfinite(spec_.radius) && std::isfinite(spec_.semi_a) &&
                      std::isfinite(spec_.semi_b) && std::isfinite(spec_.mean_radius) &&
                      all_finite(spec_.cos_coeffs) && all_finite(spec_.sin_coeffs) &&
                      std::isfinite(spec_.center.x) && std::isfinite(spec_.center.y) &&
                      std::isfinite(alpha_.value) && all_finite(alpha_.cos_coeffs) &&
                      all_finite(alpha_.sin_coeffs) && std::isfinite(alpha_.plane_slope.x) &&
                      std::isfinite(alpha_.plane_slope.y);
  if (!finite) throw Error(ErrorCode::InvalidArgument, "domain: non-finite parameter");
  if (spec_.kind == DomainKind::Ellipse && (spec_.semi_a <= 0.0 || spec_.semi_b <= 0.0)) {
    throw Error(ErrorCode::NonPositiveRadius, "domain: ellipse semi-axes must be positive");
  }
  if (alpha_.kind == AngleKind::CompatiblePlane && norm(alpha_.plane_slope) >= 1.0) {
    throw Error(ErrorCode::NotSpacelike, "domain: compatible plane needs |a| < 1");
  }

  thetas_.resize(n_samples);
  kappa_.resize(n_samples);
  gamma_.resize(n_samples);
  double r_min = std::numeric_limits<double>::infinity();
  kappa_min_ = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n_samples; ++i) {
    const double t = 2.0 * kPi * static_cast<double>(i) / static_cast<double>(n_samples);
    thetas_[i] = t;
    r_min = std::min(r_min, radius_at(t).value);
  }
  if (!(r_min > 0.0)) {
    throw Error(ErrorCode::NonPositiveRadius,
                "domain: radial function not strictly positive (min R = " +
                    std::to_string(r_min) + ")");
  }
  alpha_bar_ = 0.0;
  c_alpha_ = 0.0;
  for (std::size_t i = 0; i < n_samples; ++i) {
    const double t = thetas_[i];
    kappa_[i] = curvature(t);
    gamma_[i] = boundary_normal(t);
    kappa_min_ = std::min(kappa_min_, kappa_[i]);
    alpha_bar_ = std::max(alpha_bar_, std::abs(this->alpha(t)));
    c_alpha_ = std::max(c_alpha_, std::abs(alpha_derivative(t)) / arc_speed(t));
  }
  if (!(kappa_min_ > 0.0)) {
    throw Error(ErrorCode::NotStrictlyConvex,
                "domain: boundary not strictly convex (min kappa = " +
                    std::to_string(kappa_min_) + ")");
  }
}

Vec2 Domain::boundary_point(double theta) const {
  return spec_.center + radius_at(theta).value * unit_radial(theta);
}

double Domain::arc_speed(double theta) const {
  const auto r = radius_at(theta);
  return std::hypot(r.value, r.d1);
}

Vec2 Domain::boundary_tangent(double theta) const {
  const auto r = radius_at(theta);
  const Vec2 t = r.d1 * unit_radial(theta) + r.value * unit_azimuthal(theta);
  return (1.0 / norm(t)) * t;
}

Vec2 Domain::boundary_normal(double theta) const {
  const auto r = radius_at(theta);
  const Vec2 n = r.value * unit_radial(theta) - r.d1 * unit_azimuthal(theta);
  return (1.0 / norm(n)) * n;
}

double Domain::curvature(double theta) const {
  const auto r = radius_at(theta);
  const double q = r.value * r.value + r.d1 * r.d1;
  return (r.value * r.value + 2.0 * r.d1 * r.d1 - r.value * r.d2) / (q * std::sqrt(q));
}

double Domain::alpha(double theta) const {
  switch (alpha_.kind) {
    case AngleKind::Constant: return alpha_.value;
    case AngleKind::Fourier:
      return fourier_series(alpha_.value, alpha_.cos_coeffs, alpha_.sin_coeffs, theta).value;
    case AngleKind::CompatiblePlane: {
      const Vec2 a = alpha_.plane_slope;
      return dot(boundary_normal(theta), a) / std::sqrt(1.0 - dot(a, a));
    }
  }
  return 0.0;
}

double Domain::alpha_derivative(double theta) const {
  switch (alpha_.kind) {
    case AngleKind::Constant: return 0.0;
    case AngleKind::Fourier:
      return fourier_series(alpha_.value, alpha_.cos_coeffs, alpha_.sin_coeffs, theta).d1;
    case AngleKind::CompatiblePlane: {
      // d gamma / ds = kappa T
      const Vec2 a = alpha_.plane_slope;
      return curvature(theta) * arc_speed(theta) * dot(boundary_tangent(theta), a) /
             std::sqrt(1.0 - dot(a, a));
    }
  }
  return 0.0;
}

double theoretical_C(double alpha_bar, double kappa_min, double C_alpha, double C_H,
                     double sup_v0) {
  const double a2 = 1.0 + alpha_bar * alpha_bar;
  const double first = 2.0 * std::sqrt(a2);
  const double second =
      a2 * (alpha_bar * C_H / kappa_min +
            (2.0 * alpha_bar * alpha_bar + 1.0) * C_alpha / kappa_min + 1.0);
  return std::max({first, second, sup_v0});
}

double theoretical_C(const Domain& domain, double C_H, double sup_v0) {
  return theoretical_C(domain.alpha_bar(), domain.kappa_min(), domain.C_alpha(), C_H, sup_v0);
}

}  // namespace minkflow

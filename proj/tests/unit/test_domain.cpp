#include <cmath>
#include <random>
#include <vector>

#include "core/domain.hpp"
#include "core/error.hpp"
#include "doctest.h"

using namespace minkflow;

namespace {

// Curvature of the circle through three consecutive boundary points.
double three_point_curvature(Vec2 a, Vec2 b, Vec2 c) {
  const Vec2 ab = b - a;
  const Vec2 bc = c - b;
  const Vec2 ca = a - c;
  const double cross = ab.x * bc.y - ab.y * bc.x;
  return 2.0 * cross / (norm(ab) * norm(bc) * norm(ca));
}

// Max deviation of the formula curvature from the three-point curvature on
// n uniformly spaced boundary points.
double curvature_mismatch(const Domain& d, std::size_t n) {
  double worst = 0.0;
  const double step = 2.0 * kPi / static_cast<double>(n);
  for (std::size_t i = 0; i < n; i += 7) {
    const double t = step * static_cast<double>(i);
    const double fd = three_point_curvature(d.boundary_point(t - step), d.boundary_point(t),
                                            d.boundary_point(t + step));
    worst = std::max(worst, std::abs(fd - d.curvature(t)));
  }
  return worst;
}

Domain ellipse21() {
  return Domain(DomainSpec::ellipse(2.0, 1.0), AnglePrescription::constant(0.0), 1024);
}

}  // namespace

TEST_CASE("unit disk with zero angle") {
  Domain d(DomainSpec::disk(1.0), AnglePrescription::constant(0.0), 256);
  CHECK(d.kappa_min() == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(d.alpha_bar() == 0.0);
  CHECK(d.C_alpha() == 0.0);
  for (double k : d.sample_kappa()) CHECK(k == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("disk of radius 2 with constant angle") {
  Domain d(DomainSpec::disk(2.0), AnglePrescription::constant(0.5), 256);
  CHECK(d.kappa_min() == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(d.alpha_bar() == doctest::Approx(0.5));
  CHECK(d.C_alpha() == 0.0);
}

TEST_CASE("ellipse curvature against three-point brute force") {
  const Domain d = ellipse21();
  CHECK(d.curvature(0.0) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(d.kappa_min() == doctest::Approx(0.25).epsilon(1e-6));

  const double h = 2.0 * kPi / 1e4;
  const double fd0 =
      three_point_curvature(d.boundary_point(-h), d.boundary_point(0.0), d.boundary_point(h));
  CHECK(fd0 == doctest::Approx(2.0).epsilon(1e-6));

  const double coarse = curvature_mismatch(d, 2500);
  const double fine = curvature_mismatch(d, 5000);
  const double order = std::log2(coarse / fine);
  INFO("mismatch " << coarse << " -> " << fine);
  CHECK(order >= 1.9);
}

TEST_CASE("radial fourier curvature converges under brute force refinement") {
  Domain d(DomainSpec::radial_fourier(1.0, {0.0, 0.05, 0.02}, {0.03, 0.0, 0.0}),
           AnglePrescription::constant(0.2), 1024);
  const double coarse = curvature_mismatch(d, 2000);
  const double fine = curvature_mismatch(d, 4000);
  CHECK(std::log2(coarse / fine) >= 1.9);
}

TEST_CASE("boundary normal examples") {
  Domain disk(DomainSpec::disk(1.0), AnglePrescription::constant(0.0), 256);
  const Vec2 n0 = disk.boundary_normal(0.0);
  CHECK(n0.x == doctest::Approx(1.0));
  CHECK(std::abs(n0.y) < 1e-15);
  const Vec2 n1 = disk.boundary_normal(kPi / 2);
  CHECK(std::abs(n1.x) < 1e-15);
  CHECK(n1.y == doctest::Approx(1.0));
  const Vec2 ne = ellipse21().boundary_normal(0.0);
  CHECK(ne.x == doctest::Approx(1.0));
  CHECK(std::abs(ne.y) < 1e-15);
}

TEST_CASE("normal is unit, orthogonal to the tangent and outward") {
  Domain d(DomainSpec::radial_fourier(1.5, {0.1, 0.0, 0.03}, {0.0, 0.04}, {0.3, -0.2}),
           AnglePrescription::fourier(0.1, {0.2}, {0.05}), 512);
  for (std::size_t i = 0; i < d.sample_thetas().size(); ++i) {
    const double t = d.sample_thetas()[i];
    const Vec2 g = d.sample_normals()[i];
    CHECK(std::abs(norm(g) - 1.0) < 1e-14);
    CHECK(std::abs(dot(g, d.boundary_tangent(t))) < 1e-12);
    CHECK(dot(g, d.boundary_point(t) - d.center()) > 0.0);
  }
}

TEST_CASE("fourier angle derivative constant uses arc length") {
  // alpha = 0.3 cos(theta) on the disk of radius 2: |d alpha/ds| = 0.3 |sin| / 2
  Domain d(DomainSpec::disk(2.0), AnglePrescription::fourier(0.0, {0.3}, {}), 1024);
  CHECK(d.C_alpha() == doctest::Approx(0.15).epsilon(1e-5));
  CHECK(d.alpha_bar() == doctest::Approx(0.3).epsilon(1e-5));
}

TEST_CASE("construction errors") {
  auto code_of = [](auto&& f) {
    try {
      f();
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::InvalidArgument;  // unreachable in these cases
  };
  CHECK_THROWS_AS(Domain(DomainSpec::disk(-1.0), AnglePrescription::constant(0.0), 128), Error);
  CHECK(code_of([] { Domain(DomainSpec::disk(0.0), AnglePrescription::constant(0.0), 128); }) ==
        ErrorCode::NonPositiveRadius);
  CHECK(code_of([] {
          Domain(DomainSpec::radial_fourier(1.0, {0.0, 0.0, 0.5}, {}),
                 AnglePrescription::constant(0.0), 256);
        }) == ErrorCode::NotStrictlyConvex);
  CHECK(code_of([] {
          Domain(DomainSpec::radial_fourier(1.0, {1.5}, {}), AnglePrescription::constant(0.0),
                 256);
        }) == ErrorCode::NonPositiveRadius);
  CHECK(code_of([] { Domain(DomainSpec::disk(1.0), AnglePrescription::constant(0.0), 32); }) ==
        ErrorCode::InvalidArgument);
  // 16 x highest mode
  CHECK(code_of([] {
          Domain(DomainSpec::radial_fourier(1.0, std::vector<double>(8, 0.0), {}),
                 AnglePrescription::constant(0.0), 64);
        }) == ErrorCode::InvalidArgument);
}

TEST_CASE("theoretical constant examples") {
  CHECK(theoretical_C(0.0, 1.0, 0.0, 5.0, 1.2) == doctest::Approx(2.0));
  CHECK(theoretical_C(1.0, 1.0, 0.0, 1.0, 1.0) == doctest::Approx(4.0));
  // evaluated independently: max{2.2360.., 1.25 * 6.2, 3} = 7.75
  CHECK(theoretical_C(0.5, 0.25, 0.2, 2.0, 3.0) == doctest::Approx(7.75).epsilon(1e-14));

  Domain d(DomainSpec::disk(1.0), AnglePrescription::constant(0.5), 256);
  CHECK(theoretical_C(d, 0.0, 1.0) == doctest::Approx(2.0 * std::sqrt(1.25)));
}

TEST_CASE("theoretical constant monotonicity on random tuples") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  for (int trial = 0; trial < 2000; ++trial) {
    const double ab = 3.0 * u01(rng), k = 0.05 + 2.0 * u01(rng), ca = 2.0 * u01(rng);
    const double ch = 5.0 * u01(rng), v0 = 1.0 + 4.0 * u01(rng);
    const double base = theoretical_C(ab, k, ca, ch, v0);
    const double d = 0.1 * u01(rng);
    CHECK(theoretical_C(ab + d, k, ca, ch, v0) >= base);
    CHECK(theoretical_C(ab, k, ca + d, ch, v0) >= base);
    CHECK(theoretical_C(ab, k, ca, ch + d, v0) >= base);
    CHECK(theoretical_C(ab, k, ca, ch, v0 + d) >= base);
    CHECK(theoretical_C(ab, k + d, ca, ch, v0) <= base);
  }
}

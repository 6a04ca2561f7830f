#include "core/oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>

#include "core/error.hpp"

namespace minkflow {

double interpolate(const RadialProfile& profile, double r) {
  const auto& x = profile.radii;
  const auto& y = profile.values;
  if (x.size() < 4) throw Error(ErrorCode::InvalidArgument, "interpolate: need >= 4 samples");
  const auto it = std::lower_bound(x.begin(), x.end(), r);
  auto hi = static_cast<std::ptrdiff_t>(it - x.begin());
  std::ptrdiff_t first = std::clamp<std::ptrdiff_t>(hi - 2, 0, static_cast<std::ptrdiff_t>(x.size()) - 4);
  double sum = 0.0;
  for (std::ptrdiff_t i = first; i < first + 4; ++i) {
    double w = 1.0;
    for (std::ptrdiff_t m = first; m < first + 4; ++m) {
      if (m != i) w *= (r - x[m]) / (x[i] - x[m]);
    }
    sum += w * y[i];
  }
  return sum;
}

RadialProfile radial_flow(const std::function<double(double)>& u0, double alpha, double radius,
                          double t_end, std::size_t n_pts, double sigma) {
  if (n_pts < 256) throw Error(ErrorCode::InvalidArgument, "radial_flow: n_pts must be >= 256");
  if (!(radius > 0.0) || !(t_end >= 0.0) || !(sigma > 0.0 && sigma <= 1.0) ||
      !std::isfinite(alpha)) {
    throw Error(ErrorCode::InvalidArgument, "radial_flow: invalid arguments");
  }
  const std::size_t n = n_pts;
  const double h = radius / static_cast<double>(n);
  const double slope_bc = alpha / std::hypot(1.0, alpha);
  std::vector<double> rho(n), inv_rho(n);
  for (std::size_t i = 0; i < n; ++i) {
    rho[i] = (static_cast<double>(i) + 0.5) * h;
    inv_rho[i] = 1.0 / rho[i];
  }

  // padded layout: [mirror, u_0 .. u_{n-1}, ghost]
  std::vector<double> u(n + 2), stage(n + 2), k1(n), k2(n);
  for (std::size_t i = 0; i < n; ++i) u[i + 1] = u0(rho[i]);

  const double inv_2h = 0.5 / h;
  const double inv_h2 = 1.0 / (h * h);
  auto rate = [&](std::vector<double>& w, std::vector<double>& out) {
    w[0] = w[1];
    w[n + 1] = w[n] + h * slope_bc;
    double margin = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
      const double d1 = (w[i + 2] - w[i]) * inv_2h;
      const double d2 = (w[i + 2] - 2.0 * w[i + 1] + w[i]) * inv_h2;
      const double m = 1.0 - d1 * d1;
      margin = std::min(margin, m);
      out[i] = d2 / m + d1 * inv_rho[i];
    }
    if (!(margin > 1e-10)) {
      throw Error(ErrorCode::SpacelikeLost, "radial_flow: 1 - u'^2 = " + std::to_string(margin));
    }
    return margin;
  };

  double t = 0.0;
  double margin = rate(u, k1);
  const double slack = 1e-12 * std::max(1.0, t_end);
  while (t < t_end - slack) {
    // 1-D analogue of the 2-D rule: trace of the diffusion coefficient is v^2
    const double v2 = 1.0 / margin;
    const double dt = std::min(sigma * h * h / (2.0 * v2), t_end - t);
    for (std::size_t i = 0; i < n; ++i) stage[i + 1] = u[i + 1] + 0.5 * dt * k1[i];
    rate(stage, k2);
    for (std::size_t i = 0; i < n; ++i) u[i + 1] += dt * k2[i];
    t += dt;
    margin = rate(u, k1);
  }

  RadialProfile out;
  out.radii = rho;
  out.values.assign(u.begin() + 1, u.begin() + 1 + static_cast<std::ptrdiff_t>(n));
  out.slopes.resize(n);
  for (std::size_t i = 0; i < n; ++i) out.slopes[i] = (u[i + 2] - u[i]) * inv_2h;
  out.rates = k1;
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    num += rho[i] * k1[i];
    den += rho[i];
  }
  out.lambda = num / den;
  return out;
}

RadialProfile radial_flow(const RadialProfile& u0, double alpha, double radius, double t_end,
                          std::size_t n_pts, double sigma) {
  return radial_flow([&](double r) { return interpolate(u0, r); }, alpha, radius, t_end, n_pts,
                     sigma);
}

namespace {

struct ShotResult {
  std::vector<double> phi;
  std::vector<double> u;
};

// RK4 for (phi, u) with phi' = (lambda - phi/r)(1 - phi^2), u' = phi. At r = 0
// the right-hand side takes its limit lambda / 2 (phi ~ lambda r / 2).
ShotResult shoot(double lambda, double radius, std::size_t n_pts, bool keep) {
  const double h = radius / static_cast<double>(n_pts - 1);
  auto f = [lambda](double r, double phi) {
    if (r == 0.0) return 0.5 * lambda;
    return (lambda - phi / r) * (1.0 - phi * phi);
  };
  ShotResult out;
  if (keep) {
    out.phi.resize(n_pts);
    out.u.resize(n_pts);
  }
  double phi = 0.0;
  double u = 0.0;
  if (keep) {
    out.phi[0] = 0.0;
    out.u[0] = 0.0;
  }
  for (std::size_t i = 0; i + 1 < n_pts; ++i) {
    const double r = static_cast<double>(i) * h;
    const double a1 = f(r, phi);
    const double b1 = phi;
    const double a2 = f(r + 0.5 * h, phi + 0.5 * h * a1);
    const double b2 = phi + 0.5 * h * a1;
    const double a3 = f(r + 0.5 * h, phi + 0.5 * h * a2);
    const double b3 = phi + 0.5 * h * a2;
    const double a4 = f(r + h, phi + h * a3);
    const double b4 = phi + h * a3;
    phi += h / 6.0 * (a1 + 2.0 * a2 + 2.0 * a3 + a4);
    u += h / 6.0 * (b1 + 2.0 * b2 + 2.0 * b3 + b4);
    if (keep) {
      out.phi[i + 1] = phi;
      out.u[i + 1] = u;
    }
  }
  if (!keep) out.phi.push_back(phi);
  return out;
}

}  // namespace

RadialProfile translator_shoot(double alpha, double radius, std::size_t n_pts) {
  if (!std::isfinite(alpha) || !(radius > 0.0) || n_pts < 16) {
    throw Error(ErrorCode::InvalidArgument, "translator_shoot: invalid arguments");
  }
  const double target = alpha / std::hypot(1.0, alpha);
  auto miss = [&](double lambda) { return shoot(lambda, radius, n_pts, false).phi.back() - target; };

  double half_width = (1.0 + std::abs(alpha)) * 4.0 / radius;
  double lo = -half_width, hi = half_width;
  double f_lo = miss(lo), f_hi = miss(hi);
  for (int widen = 0; widen < 10 && !(f_lo <= 0.0 && f_hi >= 0.0); ++widen) {
    half_width *= 2.0;
    lo = -half_width;
    hi = half_width;
    f_lo = miss(lo);
    f_hi = miss(hi);
  }
  if (!(f_lo <= 0.0 && f_hi >= 0.0)) {
    std::ostringstream os;
    os << "translator_shoot: no bracket for alpha = " << alpha << " within |lambda| <= "
       << half_width;
    throw Error(ErrorCode::ShootingFailed, os.str());
  }

  double lambda = 0.5 * (lo + hi);
  double f_mid = miss(lambda);
  for (int it = 0; it < 200 && f_mid != 0.0; ++it) {
    if (f_mid < 0.0) lo = lambda; else hi = lambda;
    const double next = 0.5 * (lo + hi);
    if (next == lo || next == hi) break;
    lambda = next;
    f_mid = miss(lambda);
  }
  if (!(std::abs(f_mid) < 1e-10)) {
    throw Error(ErrorCode::ShootingFailed,
                "translator_shoot: bisection stalled with residual " + std::to_string(f_mid));
  }

  ShotResult shot = shoot(lambda, radius, n_pts, true);
  RadialProfile out;
  out.radii.resize(n_pts);
  const double h = radius / static_cast<double>(n_pts - 1);
  for (std::size_t i = 0; i < n_pts; ++i) out.radii[i] = static_cast<double>(i) * h;
  out.values = std::move(shot.u);
  out.slopes = std::move(shot.phi);
  out.lambda = lambda;
  return out;
}

CompatiblePlane compatible_plane(Vec2 a) {
  if (!(norm(a) < 1.0)) {
    throw Error(ErrorCode::NotSpacelike, "compatible_plane: need |a| < 1");
  }
  return {a, AnglePrescription::compatible_plane(a)};
}

double compatible_plane_alpha(Vec2 a, const Domain& domain, double theta) {
  return dot(domain.boundary_normal(theta), a) / std::sqrt(1.0 - dot(a, a));
}

void write_profile_csv(std::ostream& os, const RadialProfile& profile) {
  char buf[128];
  if (profile.lambda) {
    std::snprintf(buf, sizeof buf, "# lambda=%.17g\n", *profile.lambda);
    os << buf;
  }
  os << "r,u\n";
  for (std::size_t i = 0; i < profile.radii.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", profile.radii[i], profile.values[i]);
    os << buf;
  }
}

RadialProfile read_profile_csv(std::istream& is) {
  RadialProfile p;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    if (line.empty() || line == "r,u") continue;
    if (line.rfind("# lambda=", 0) == 0) {
      p.lambda = std::stod(line.substr(9));
      continue;
    }
    if (line[0] == '#') continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) {
      throw Error(ErrorCode::Parse, "profile csv line " + std::to_string(line_no) + ": expected r,u");
    }
    p.radii.push_back(std::stod(line.substr(0, comma)));
    p.values.push_back(std::stod(line.substr(comma + 1)));
  }
  return p;
}

}  // namespace minkflow

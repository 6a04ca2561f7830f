#include "core/grid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "core/error.hpp"
#include "core/stencil.hpp"

namespace minkflow {

Field::Field(std::size_t n_r, std::size_t n_theta, double fill)
    : n_r_(n_r), n_theta_(n_theta), values_(n_r * n_theta, fill) {}

void Field::set_ghost(std::vector<double> ghost) {
  if (ghost.size() != n_theta_) {
    throw Error(ErrorCode::InvalidArgument, "field: ghost ring has wrong length");
  }
  ghost_ = std::move(ghost);
}

bool Field::all_finite() const {
  auto finite = [](double x) { return std::isfinite(x); };
  return std::all_of(values_.begin(), values_.end(), finite) &&
         std::all_of(ghost_.begin(), ghost_.end(), finite);
}

Grid::Grid(const Domain& domain, std::size_t n_r, std::size_t n_theta)
    : spec_(domain.spec()),
      n_r_(n_r),
      n_theta_(n_theta),
      dr_(1.0 / static_cast<double>(n_r)),
      dtheta_(2.0 * kPi / static_cast<double>(n_theta)),
      center_(domain.center()) {
  if (n_r < 8 || n_theta < 16 || n_theta % 2 != 0) {
    throw Error(ErrorCode::ResolutionTooLow,
                "grid: need n_r >= 8 and even n_theta >= 16, got " + std::to_string(n_r) +
                    " x " + std::to_string(n_theta));
  }
  const std::size_t nodes = n_r * n_theta;
  positions_.resize((n_r + 1) * n_theta);
  for (auto* v : {&r_x_, &r_y_, &t_x_, &t_y_, &r_xx_, &r_xy_, &r_yy_, &t_xx_, &t_xy_, &t_yy_,
                  &weight_}) {
    v->resize(nodes);
  }

  for (std::size_t j = 0; j <= n_r; ++j) {
    const double r = j < n_r ? radius(j) : ghost_radius();
    for (std::size_t k = 0; k < n_theta; ++k) {
      positions_[j * n_theta + k] = map(r, theta(k));
    }
  }

  total_area_ = 0.0;
  for (std::size_t j = 0; j < n_r; ++j) {
    for (std::size_t k = 0; k < n_theta; ++k) {
      const std::size_t i = j * n_theta + k;
      const PointMetric m = metric_at(radius(j), theta(k));
      if (!(m.jacobian > 0.0)) {
        throw Error(ErrorCode::InvalidArgument, "grid: non-positive Jacobian");
      }
      r_x_[i] = m.r_x;
      r_y_[i] = m.r_y;
      t_x_[i] = m.t_x;
      t_y_[i] = m.t_y;
      r_xx_[i] = m.r_xx;
      r_xy_[i] = m.r_xy;
      r_yy_[i] = m.r_yy;
      t_xx_[i] = m.t_xx;
      t_xy_[i] = m.t_xy;
      t_yy_[i] = m.t_yy;
      weight_[i] = m.jacobian * dr_ * dtheta_;
      total_area_ += weight_[i];
    }
  }

  boundary_.resize(n_theta);
  for (std::size_t k = 0; k < n_theta; ++k) {
    const double t = theta(k);
    const PointMetric m = metric_at(1.0, t);
    const Vec2 grad_r{m.r_x, m.r_y};
    const Vec2 grad_t{m.t_x, m.t_y};
    const Vec2 gamma = (1.0 / norm(grad_r)) * grad_r;
    const auto rad = radial_function(spec_, t);
    boundary_[k] = {t, gamma, dot(gamma, grad_r), dot(gamma, grad_t),
                    std::hypot(rad.value, rad.d1)};
  }

  pole_.resize(n_theta);
  const double r0 = radius(0);
  for (std::size_t k = 0; k < n_theta; ++k) {
    const std::size_t opposite = (k + n_theta / 2) % n_theta;
    const double ratio = radial_function(spec_, theta(k)).value /
                         radial_function(spec_, theta(opposite)).value;
    // fractional ring index of the mirror point along the opposite ray
    double s = r0 * ratio / dr_ - 0.5;
    if (std::abs(s) < 1e-14) s = 0.0;
    pole_[k] = {opposite, {0.5 * (s - 1.0) * (s - 2.0), -s * (s - 2.0), 0.5 * s * (s - 1.0)}};
  }

  // Pole filter: ring j keeps azimuthal modes whose discrete stiffness does not
  // exceed that of the radial stencil, so the explicit step is set by the
  // radial spacing rather than by the tiny arcs near the pole.
  double h_radial = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < n_theta; ++k) {
    const double across_pole = r0 * (radial_function(spec_, theta(k)).value +
                                     radial_function(spec_, theta(pole_[k].column)).value);
    h_radial = std::min(h_radial, across_pole);
    for (std::size_t j = 0; j < n_r; ++j) {
      h_radial = std::min(h_radial, norm(position(j + 1, k) - position(j, k)));
    }
  }
  h_min_ = h_radial;
  kept_modes_.resize(n_r);
  const std::size_t nyquist = n_theta / 2;
  for (std::size_t j = 0; j < n_r; ++j) {
    double chord = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < n_theta; ++k) {
      chord = std::min(chord, norm(position(j, (k + 1) % n_theta) - position(j, k)));
    }
    const double arc = chord * (0.5 * dtheta_) / std::sin(0.5 * dtheta_);
    if (arc >= h_radial) {
      kept_modes_[j] = nyquist;
      h_min_ = std::min(h_min_, chord);
      continue;
    }
    auto modes = static_cast<std::size_t>(std::floor(2.0 / dtheta_ * std::asin(arc / h_radial)));
    modes = std::clamp<std::size_t>(modes, 1, nyquist);
    kept_modes_[j] = modes;
    const double effective =
        modes == nyquist ? chord : arc / std::sin(0.5 * static_cast<double>(modes) * dtheta_);
    h_min_ = std::min(h_min_, effective);
  }
}

Vec2 Grid::map(double r, double theta) const {
  return center_ + (r * radial_function(spec_, theta).value) * unit_radial(theta);
}

PointMetric Grid::metric_at(double r, double theta) const {
  const auto rad = radial_function(spec_, theta);
  const Vec2 e = unit_radial(theta);
  const Vec2 p = unit_azimuthal(theta);

  // J = [x_r  x_t], columns are tangent vectors of the coordinate lines.
  const Vec2 x_r = rad.value * e;
  const Vec2 x_t = r * (rad.d1 * e + rad.value * p);
  const Vec2 x_rt = rad.d1 * e + rad.value * p;
  const Vec2 x_tt = r * ((rad.d2 - rad.value) * e + 2.0 * rad.d1 * p);

  const double det = x_r.x * x_t.y - x_t.x * x_r.y;
  PointMetric m;
  m.jacobian = det;
  // M = J^{-1}: rows are grad r and grad theta
  const double M[2][2] = {{x_t.y / det, -x_t.x / det}, {-x_r.y / det, x_r.x / det}};
  m.r_x = M[0][0];
  m.r_y = M[0][1];
  m.t_x = M[1][0];
  m.t_y = M[1][1];

  // d^2 xi_a / dx_i dx_j = - sum_{k,b,c} M_ak X^k_bc M_bi M_cj
  const double X[2][2][2] = {
      {{0.0, x_rt.x}, {x_rt.x, x_tt.x}},
      {{0.0, x_rt.y}, {x_rt.y, x_tt.y}},
  };
  double Q[2][2][2] = {};
  for (int a = 0; a < 2; ++a)
    for (int i = 0; i < 2; ++i)
      for (int jj = 0; jj < 2; ++jj) {
        double sum = 0.0;
        for (int k = 0; k < 2; ++k)
          for (int b = 0; b < 2; ++b)
            for (int c = 0; c < 2; ++c) sum += M[a][k] * X[k][b][c] * M[b][i] * M[c][jj];
        Q[a][i][jj] = -sum;
      }
  m.r_xx = Q[0][0][0];
  m.r_xy = Q[0][0][1];
  m.r_yy = Q[0][1][1];
  m.t_xx = Q[1][0][0];
  m.t_xy = Q[1][0][1];
  m.t_yy = Q[1][1][1];
  return m;
}

Field Grid::sample(const std::function<double(Vec2)>& f, bool with_ghost) const {
  Field u(n_r_, n_theta_);
  for (std::size_t j = 0; j < n_r_; ++j)
    for (std::size_t k = 0; k < n_theta_; ++k) u(j, k) = f(position(j, k));
  if (with_ghost) {
    std::vector<double> ghost(n_theta_);
    for (std::size_t k = 0; k < n_theta_; ++k) ghost[k] = f(position(n_r_, k));
    u.set_ghost(std::move(ghost));
  }
  return u;
}

namespace detail {

void PaddedField::load(const Grid& grid, const Field& u) {
  if (!u.has_ghost()) {
    throw Error(ErrorCode::MissingGhostRow, "field has no ghost ring; close the boundary first");
  }
  const auto n_r = static_cast<std::ptrdiff_t>(n_r_);
  const auto n_t = static_cast<std::ptrdiff_t>(n_theta_);
  for (std::ptrdiff_t j = 0; j < n_r; ++j) {
    const auto src = u.row(static_cast<std::size_t>(j));
    std::copy(src.begin(), src.end(), row(j));
  }
  std::copy(u.ghost().begin(), u.ghost().end(), row(n_r));
  double* pole = row(-1);
  for (std::ptrdiff_t k = 0; k < n_t; ++k) {
    const PoleSource& p = grid.pole_source(static_cast<std::size_t>(k));
    const auto c = static_cast<std::ptrdiff_t>(p.column);
    pole[k] = p.weights[0] * row(0)[c] + p.weights[1] * row(1)[c] + p.weights[2] * row(2)[c];
  }
  for (std::ptrdiff_t j = -1; j <= n_r; ++j) {
    double* r = row(j);
    r[-1] = r[n_t - 1];
    r[n_t] = r[0];
  }
}

}  // namespace detail

namespace {

void check_shape(const Grid& grid, const Field& u) {
  if (u.n_r() != grid.n_r() || u.n_theta() != grid.n_theta()) {
    throw Error(ErrorCode::InvalidArgument, "field shape does not match grid");
  }
}

}  // namespace

GradientField gradient(const Grid& grid, const Field& u) {
  check_shape(grid, u);
  detail::PaddedField pad(grid.n_r(), grid.n_theta());
  pad.load(grid, u);
  const detail::StencilScales s(grid);
  GradientField g{std::vector<double>(grid.node_count()), std::vector<double>(grid.node_count())};
  const auto n_t = static_cast<std::ptrdiff_t>(grid.n_theta());
  for (std::ptrdiff_t j = 0; j < static_cast<std::ptrdiff_t>(grid.n_r()); ++j) {
    for (std::ptrdiff_t k = 0; k < n_t; ++k) {
      const auto d = detail::local_derivatives(pad.row(j - 1), pad.row(j), pad.row(j + 1), k, s);
      const std::size_t i = static_cast<std::size_t>(j * n_t + k);
      g.x[i] = grid.r_x()[i] * d.r + grid.t_x()[i] * d.t;
      g.y[i] = grid.r_y()[i] * d.r + grid.t_y()[i] * d.t;
    }
  }
  return g;
}

HessianField hessian(const Grid& grid, const Field& u) {
  check_shape(grid, u);
  detail::PaddedField pad(grid.n_r(), grid.n_theta());
  pad.load(grid, u);
  const detail::StencilScales s(grid);
  const std::size_t n = grid.node_count();
  HessianField h{std::vector<double>(n), std::vector<double>(n), std::vector<double>(n)};
  const auto n_t = static_cast<std::ptrdiff_t>(grid.n_theta());
  for (std::ptrdiff_t j = 0; j < static_cast<std::ptrdiff_t>(grid.n_r()); ++j) {
    for (std::ptrdiff_t k = 0; k < n_t; ++k) {
      const auto d = detail::local_derivatives(pad.row(j - 1), pad.row(j), pad.row(j + 1), k, s);
      const std::size_t i = static_cast<std::size_t>(j * n_t + k);
      const double rx = grid.r_x()[i], ry = grid.r_y()[i];
      const double tx = grid.t_x()[i], ty = grid.t_y()[i];
      h.xx[i] = rx * rx * d.rr + 2.0 * rx * tx * d.rt + tx * tx * d.tt + grid.r_xx()[i] * d.r +
                grid.t_xx()[i] * d.t;
      h.xy[i] = rx * ry * d.rr + (rx * ty + tx * ry) * d.rt + tx * ty * d.tt +
                grid.r_xy()[i] * d.r + grid.t_xy()[i] * d.t;
      h.yy[i] = ry * ry * d.rr + 2.0 * ry * ty * d.rt + ty * ty * d.tt + grid.r_yy()[i] * d.r +
                grid.t_yy()[i] * d.t;
    }
  }
  return h;
}

std::vector<double> boundary_theta_derivative(const Grid& grid, const Field& u) {
  check_shape(grid, u);
  const std::size_t n_t = grid.n_theta();
  const std::size_t jb = grid.n_r() - 1;
  const double inv_2dt = 0.5 / grid.dtheta();
  std::vector<double> out(n_t);
  for (std::size_t k = 0; k < n_t; ++k) {
    const std::size_t kp = (k + 1) % n_t;
    const std::size_t km = (k + n_t - 1) % n_t;
    const double outer = (u(jb, kp) - u(jb, km)) * inv_2dt;
    const double inner = (u(jb - 1, kp) - u(jb - 1, km)) * inv_2dt;
    // rings sit half and one and a half cells inside r = 1
    out[k] = 1.5 * outer - 0.5 * inner;
  }
  return out;
}

std::vector<double> boundary_tangential_derivative(const Grid& grid, const Field& u) {
  auto q = boundary_theta_derivative(grid, u);
  for (std::size_t k = 0; k < q.size(); ++k) q[k] /= grid.boundary(k).arc_speed;
  return q;
}

std::vector<double> boundary_normal_derivative(const Grid& grid, const Field& u) {
  if (!u.has_ghost()) {
    throw Error(ErrorCode::MissingGhostRow, "field has no ghost ring; close the boundary first");
  }
  auto out = boundary_theta_derivative(grid, u);
  const std::size_t jb = grid.n_r() - 1;
  for (std::size_t k = 0; k < out.size(); ++k) {
    const BoundaryNode& b = grid.boundary(k);
    const double u_r = (u.ghost()[k] - u(jb, k)) / grid.dr();
    out[k] = b.normal_r * u_r + b.normal_theta * out[k];
  }
  return out;
}

}  // namespace minkflow

#include "core/flow.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>

namespace minkflow {

namespace {

std::string node_name(const Grid& grid, std::size_t index) {
  std::ostringstream os;
  os << "node (j=" << index / grid.n_theta() << ", k=" << index % grid.n_theta() << ")";
  return os.str();
}

// Evaluates a^{ij} u_ij into out (if non-null) and returns min(1 - |Du|^2).
double rhs_kernel(const Grid& g, const detail::PaddedField& pad, double* out) {
  const detail::StencilScales s(g);
  const auto n_t = static_cast<std::ptrdiff_t>(g.n_theta());
  double margin = std::numeric_limits<double>::infinity();
  for (std::ptrdiff_t j = 0; j < static_cast<std::ptrdiff_t>(g.n_r()); ++j) {
    const double* below = pad.row(j - 1);
    const double* here = pad.row(j);
    const double* above = pad.row(j + 1);
    const std::size_t base = static_cast<std::size_t>(j * n_t);
    const double* rx = g.r_x() + base;
    const double* ry = g.r_y() + base;
    const double* tx = g.t_x() + base;
    const double* ty = g.t_y() + base;
    const double* rxx = g.r_xx() + base;
    const double* rxy = g.r_xy() + base;
    const double* ryy = g.r_yy() + base;
    const double* txx = g.t_xx() + base;
    const double* txy = g.t_xy() + base;
    const double* tyy = g.t_yy() + base;
    double* dst = out ? out + base : nullptr;
    for (std::ptrdiff_t k = 0; k < n_t; ++k) {
      const auto d = detail::local_derivatives(below, here, above, k, s);
      const double ux = rx[k] * d.r + tx[k] * d.t;
      const double uy = ry[k] * d.r + ty[k] * d.t;
      const double m = 1.0 - ux * ux - uy * uy;
      margin = std::min(margin, m);
      if (!dst) continue;
      const double uxx = rx[k] * rx[k] * d.rr + 2.0 * rx[k] * tx[k] * d.rt +
                         tx[k] * tx[k] * d.tt + rxx[k] * d.r + txx[k] * d.t;
      const double uxy = rx[k] * ry[k] * d.rr + (rx[k] * ty[k] + tx[k] * ry[k]) * d.rt +
                         tx[k] * ty[k] * d.tt + rxy[k] * d.r + txy[k] * d.t;
      const double uyy = ry[k] * ry[k] * d.rr + 2.0 * ry[k] * ty[k] * d.rt +
                         ty[k] * ty[k] * d.tt + ryy[k] * d.r + tyy[k] * d.t;
      dst[k] = uxx + uyy + (ux * ux * uxx + 2.0 * ux * uy * uxy + uy * uy * uyy) / m;
    }
  }
  return margin;
}

[[noreturn]] void throw_spacelike_lost(const Grid& grid, const Field& u, double eps) {
  const GradientField du = gradient(grid, u);
  std::size_t worst = 0;
  double worst_margin = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < du.x.size(); ++i) {
    const double m = 1.0 - du.x[i] * du.x[i] - du.y[i] * du.y[i];
    if (m < worst_margin || std::isnan(m)) {
      worst_margin = m;
      worst = i;
      if (std::isnan(m)) break;
    }
  }
  std::ostringstream os;
  os << "spacelike condition lost at " << node_name(grid, worst)
     << ": 1 - |Du|^2 = " << worst_margin << " <= " << eps;
  throw Error(ErrorCode::SpacelikeLost, os.str());
}

}  // namespace

void SolverConfig::validate() const {
  auto fail = [](const std::string& field, const std::string& why) {
    throw Error(ErrorCode::Validation, "solver." + field + ": " + why);
  };
  if (!(sigma > 0.0 && sigma <= 1.0)) fail("sigma", "must lie in (0, 1]");
  if (!(eps_space > 0.0 && eps_space < 1e-4)) fail("eps_space", "must lie in (0, 1e-4)");
  if (!(t_end >= 0.0) || !std::isfinite(t_end)) fail("t_end", "must be finite and >= 0");
  if (!(trans_tol > 0.0)) fail("trans_tol", "must be positive");
  if (!(trans_window >= 0.0)) fail("trans_window", "must be >= 0");
  if (!(snapshot_every > 0.0)) fail("snapshot_every", "must be positive");
  if (!(monitor_every > 0.0)) fail("monitor_every", "must be positive");
}

double boundary_normal_slope(double q, double alpha) {
  if (!(std::abs(q) < 1.0)) {
    std::ostringstream os;
    os << "tangential slope |q| = " << std::abs(q) << " >= 1 on the boundary";
    throw Error(ErrorCode::TangentTooSteep, os.str());
  }
  if (!std::isfinite(alpha)) throw Error(ErrorCode::NonFinite, "boundary angle is not finite");
  if (alpha == 0.0) return 0.0;
  // |alpha| / sqrt(1 + alpha^2) via hypot so huge angles do not overflow
  const double a = std::abs(alpha) / std::hypot(1.0, alpha);
  return std::copysign(std::sqrt(1.0 - q * q) * a, alpha);
}

std::vector<double> boundary_alpha(const Grid& grid, const Domain& domain) {
  std::vector<double> a(grid.n_theta());
  for (std::size_t k = 0; k < a.size(); ++k) a[k] = domain.alpha(grid.theta(k));
  return a;
}

void close_ghost_in_place(const Grid& grid, const std::vector<double>& alpha, Field& u) {
  const std::vector<double> u_t = boundary_theta_derivative(grid, u);
  const std::size_t jb = grid.n_r() - 1;
  std::vector<double> ghost(grid.n_theta());
  for (std::size_t k = 0; k < ghost.size(); ++k) {
    const BoundaryNode& b = grid.boundary(k);
    double p = 0.0;
    try {
      p = boundary_normal_slope(u_t[k] / b.arc_speed, alpha[k]);
    } catch (const Error& e) {
      throw Error(e.code(), std::string(e.what()) + " at boundary column k=" + std::to_string(k));
    }
    // gamma . Du = normal_r (ghost - u_b)/dr + normal_theta u_theta  at r = 1
    ghost[k] = u(jb, k) + grid.dr() * (p - b.normal_theta * u_t[k]) / b.normal_r;
  }
  u.set_ghost(std::move(ghost));
}

Field close_ghost(const Grid& grid, const Domain& domain, Field u) {
  close_ghost_in_place(grid, boundary_alpha(grid, domain), u);
  return u;
}

Field interior_rhs(const Grid& grid, const Field& u, double eps_space) {
  detail::PaddedField pad(grid.n_r(), grid.n_theta());
  pad.load(grid, u);
  Field out(grid.n_r(), grid.n_theta());
  const double margin = rhs_kernel(grid, pad, out.values().data());
  if (!(margin > eps_space)) throw_spacelike_lost(grid, u, eps_space);
  return out;
}

double spacelike_margin(const Grid& grid, const Field& u) {
  detail::PaddedField pad(grid.n_r(), grid.n_theta());
  pad.load(grid, u);
  return rhs_kernel(grid, pad, nullptr);
}

double cfl_dt(double h_min, double v_max, double sigma) {
  return sigma * h_min * h_min / (2.0 * (1.0 + v_max * v_max));
}

double cfl_dt(const Grid& grid, double v_max, const SolverConfig& cfg) {
  return cfl_dt(grid.h_min(), v_max, cfg.sigma);
}

double boundary_compatibility_residual(const Grid& grid, const Domain& domain, const Field& u) {
  const std::vector<double> u_t = boundary_theta_derivative(grid, u);
  const std::size_t jb = grid.n_r() - 1;
  double worst = 0.0;
  for (std::size_t k = 0; k < grid.n_theta(); ++k) {
    const BoundaryNode& b = grid.boundary(k);
    // quadratic through rings jb, jb-1, jb-2 differentiated at r = 1
    const double u_r = (2.0 * u(jb, k) - 3.0 * u(jb - 1, k) + u(jb - 2, k)) / grid.dr();
    const double normal = b.normal_r * u_r + b.normal_theta * u_t[k];
    const double tangential = u_t[k] / b.arc_speed;
    const double margin = std::max(0.0, 1.0 - normal * normal - tangential * tangential);
    worst = std::max(worst, std::abs(normal - std::sqrt(margin) * domain.alpha(b.theta)));
  }
  return worst;
}

FlowSolver::FlowSolver(const Domain& domain, const Grid& grid, SolverConfig cfg)
    : domain_(domain),
      grid_(grid),
      cfg_(cfg),
      alpha_(boundary_alpha(grid, domain)),
      filter_(grid),
      pad_(grid.n_r(), grid.n_theta()),
      rate_(grid.n_r(), grid.n_theta()),
      stage_(grid.n_r(), grid.n_theta()),
      stage_rate_(grid.n_r(), grid.n_theta()) {
  cfg_.validate();
}

double FlowSolver::evaluate(const Field& u, Field& out) {
  pad_.load(grid_, u);
  const double margin = rhs_kernel(grid_, pad_, out.values().data());
  if (!(margin > cfg_.eps_space)) throw_spacelike_lost(grid_, u, cfg_.eps_space);
  filter_.apply(out.values());
  return margin;
}

FlowSolver::Tendency FlowSolver::tendency(Field& u) {
  const bool cached = cache_valid_ && cached_u_.size() == u.size() &&
                      std::equal(u.values().begin(), u.values().end(),
                                 cached_u_.values().begin());
  if (!cached) {
    cache_valid_ = false;
    close_ghost_in_place(grid_, alpha_, u);
    cached_margin_ = evaluate(u, rate_);
    cached_u_ = u;
    cache_valid_ = true;
  } else if (!u.has_ghost()) {
    u.set_ghost(std::vector<double>(cached_u_.ghost().begin(), cached_u_.ghost().end()));
  }
  return {rate_, cached_margin_};
}

FlowState FlowSolver::step(FlowState state, double max_dt) {
  const FlowState before = state;
  try {
    const Tendency k1 = tendency(state.u);
    const double v_max = 1.0 / std::sqrt(k1.min_margin);
    const double dt = std::min(cfl_dt(grid_, v_max, cfg_), max_dt);

    const auto u0 = state.u.values();
    const auto r1 = rate_.values();
    auto mid = stage_.values();
    for (std::size_t i = 0; i < u0.size(); ++i) mid[i] = u0[i] + 0.5 * dt * r1[i];
    close_ghost_in_place(grid_, alpha_, stage_);
    evaluate(stage_, stage_rate_);

    FlowState next;
    next.u = Field(grid_.n_r(), grid_.n_theta());
    const auto r2 = stage_rate_.values();
    auto out = next.u.values();
    for (std::size_t i = 0; i < u0.size(); ++i) out[i] = u0[i] + dt * r2[i];
    next.t = state.t + dt;
    next.step_count = state.step_count + 1;
    next.last_dt = dt;
    if (!next.u.all_finite()) {
      std::size_t bad = 0;
      while (bad < out.size() && std::isfinite(out[bad])) ++bad;
      throw Error(ErrorCode::NonFinite, "non-finite value at " + node_name(grid_, bad));
    }

    cache_valid_ = false;
    close_ghost_in_place(grid_, alpha_, next.u);
    cached_margin_ = evaluate(next.u, rate_);
    cached_u_ = next.u;
    cache_valid_ = true;
    return next;
  } catch (const Error& e) {
    cache_valid_ = false;
    std::ostringstream os;
    os << e.what() << " (step " << before.step_count + 1 << ", t = " << before.t << ")";
    throw FlowError(e.code(), os.str(), before);
  }
}

}  // namespace minkflow

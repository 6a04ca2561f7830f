#pragma once

// Graphical spacelike mean curvature flow
//   u_t = (delta_ij + u_i u_j / (1 - |Du|^2)) u_ij            in the domain
//   gamma . Du = alpha sqrt(1 - |Du|^2)                       on the boundary
// discretized on a Grid and stepped with explicit midpoint RK2.

#include <cstddef>
#include <vector>

#include "core/azimuthal_filter.hpp"
#include "core/domain.hpp"
#include "core/error.hpp"
#include "core/grid.hpp"
#include "core/stencil.hpp"

namespace minkflow {

struct SolverConfig {
  double sigma = 0.5;         // CFL safety factor, (0, 1]
  double eps_space = 1e-10;   // spacelike floor on 1 - |Du|^2, (0, 1e-4)
  double t_end = 1.0;
  double trans_tol = 1e-4;    // translator threshold on osc(u_t)
  double trans_window = 1.0;  // time osc(u_t) must stay below trans_tol
  double snapshot_every = 1.0;
  double monitor_every = 0.01;

  /// Throws Error(Validation) naming the offending field.
  void validate() const;
};

struct FlowState {
  Field u;
  double t = 0.0;
  std::size_t step_count = 0;
  double last_dt = 0.0;
};

/// Thrown by the stepper; carries the last state that passed every check.
class FlowError : public Error {
 public:
  FlowError(ErrorCode code, const std::string& message, FlowState last_good)
      : Error(code, message), state_(std::move(last_good)) {}
  const FlowState& last_good_state() const { return state_; }

 private:
  FlowState state_;
};

/// Normal slope p = gamma . Du solving p = alpha sqrt(1 - p^2 - q^2), given the
/// tangential slope q. Throws Error(TangentTooSteep) if |q| >= 1.
double boundary_normal_slope(double q, double alpha);

/// Fills the ghost ring of u so that the reconstructed gamma . Du at r = 1
/// matches the boundary condition. alpha holds one value per column.
/// Throws Error(TangentTooSteep) naming the column.
void close_ghost_in_place(const Grid& grid, const std::vector<double>& alpha, Field& u);
Field close_ghost(const Grid& grid, const Domain& domain, Field u);

/// alpha(theta_k) for every grid column.
std::vector<double> boundary_alpha(const Grid& grid, const Domain& domain);

/// Expanded interior operator a^{ij}(Du) u_ij at every node. Requires the
/// ghost ring; throws Error(SpacelikeLost) if 1 - |Du|^2 <= eps_space.
Field interior_rhs(const Grid& grid, const Field& u, double eps_space = 1e-10);

/// min over nodes of 1 - |Du|^2. Requires the ghost ring.
double spacelike_margin(const Grid& grid, const Field& u);

/// dt = sigma h_min^2 / (2 (1 + v_max^2)).
double cfl_dt(double h_min, double v_max, double sigma);
double cfl_dt(const Grid& grid, double v_max, const SolverConfig& cfg);

/// max over boundary columns of |gamma . Du - alpha sqrt(1 - |Du|^2)| using
/// one-sided differences from the interior (no ghost ring needed).
double boundary_compatibility_residual(const Grid& grid, const Domain& domain, const Field& u);

class FlowSolver {
 public:
  FlowSolver(const Domain& domain, const Grid& grid, SolverConfig cfg);

  struct Tendency {
    const Field& rate;   // u_t used by the stepper (pole-filtered)
    double min_margin;   // min 1 - |Du|^2
  };

  /// Closes the ghost ring of u and evaluates the time derivative.
  Tendency tendency(Field& u);

  /// One midpoint step; dt is the CFL step capped at max_dt.
  /// Throws FlowError(SpacelikeLost | NonFinite | TangentTooSteep).
  FlowState step(FlowState state, double max_dt = 1e300);

  const Domain& domain() const { return domain_; }
  const Grid& grid() const { return grid_; }
  const SolverConfig& config() const { return cfg_; }
  const std::vector<double>& alpha() const { return alpha_; }

 private:
  double evaluate(const Field& u, Field& out);

  const Domain& domain_;
  const Grid& grid_;
  SolverConfig cfg_;
  std::vector<double> alpha_;
  AzimuthalFilter filter_;
  detail::PaddedField pad_;
  Field rate_;
  Field stage_;
  Field stage_rate_;
  // tendency of the last state returned by step(), reused by the next call
  Field cached_u_;
  double cached_margin_ = 0.0;
  bool cache_valid_ = false;
};

}  // namespace minkflow

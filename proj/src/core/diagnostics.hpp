#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "core/domain.hpp"
#include "core/flow.hpp"
#include "core/grid.hpp"

namespace minkflow {

/// Constants of the a priori estimates, fixed from the initial data.
struct TheoreticalBounds {
  double C_H = 0.0;        // sup over initial data of |H| / v
  double alpha_bar = 0.0;
  double kappa_min = 0.0;
  double C_alpha = 0.0;
  double C_grad = 0.0;     // bound on v
  double sup_v0 = 1.0;
};

TheoreticalBounds make_bounds(const Domain& domain, double C_H, double sup_v0);

struct MonitorRecord {
  double t = 0.0;
  double sup_v = 1.0;
  double sup_H_over_v = 0.0;  // equals sup |u_t|
  double lambda_est = 0.0;    // area-weighted mean of u_t
  double osc_ut = 0.0;        // sup u_t - inf u_t
  double sup_abs_u = 0.0;
  double spacelike_margin = 1.0;
  double dt = 0.0;
};

/// v = (1 - |Du|^2)^{-1/2}. Requires the ghost ring; throws SpacelikeLost.
Field compute_v(const Grid& grid, const Field& u, double eps_space = 1e-10);
/// H = v u_t with u_t from interior_rhs.
Field compute_H(const Grid& grid, const Field& u, double eps_space = 1e-10);

double area_mean(const Grid& grid, std::span<const double> values);

MonitorRecord make_record(const Grid& grid, const FlowState& state, const Field& rate,
                          double min_margin);

struct Violation {
  std::string quantity;
  double bound = 0.0;
  double observed = 0.0;
  double t = 0.0;
};

/// Checks sup|H|/v <= C_H (1+tol), sup v <= C_grad (1+tol) and
/// sup|u| <= u0_sup + t C_H + tol.
std::vector<Violation> check_bounds(const MonitorRecord& record, const TheoreticalBounds& bounds,
                                    double u0_sup, double tol);

struct TranslatorFit {
  double lambda = 0.0;
  double since = 0.0;
};

std::optional<TranslatorFit> detect_translator(std::span<const MonitorRecord> history,
                                               const SolverConfig& cfg);

/// u minus its area-weighted mean.
Field extract_translator_profile(const Grid& grid, const FlowState& state, double lambda);

inline constexpr const char* kMonitorCsvHeader =
    "t,sup_v,sup_H_over_v,lambda_est,osc_ut,sup_abs_u,spacelike_margin,dt";

void write_monitor_header(std::ostream& os);
void write_monitor_row(std::ostream& os, const MonitorRecord& r);

}  // namespace minkflow

#include "core/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>

namespace minkflow {

TheoreticalBounds make_bounds(const Domain& domain, double C_H, double sup_v0) {
  TheoreticalBounds b;
  b.C_H = C_H;
  b.alpha_bar = domain.alpha_bar();
  b.kappa_min = domain.kappa_min();
  b.C_alpha = domain.C_alpha();
  b.sup_v0 = sup_v0;
  b.C_grad = theoretical_C(domain, C_H, sup_v0);
  return b;
}

Field compute_v(const Grid& grid, const Field& u, double eps_space) {
  const GradientField du = gradient(grid, u);
  Field v(grid.n_r(), grid.n_theta());
  auto out = v.values();
  for (std::size_t i = 0; i < out.size(); ++i) {
    const double m = 1.0 - du.x[i] * du.x[i] - du.y[i] * du.y[i];
    if (!(m > eps_space)) {
      throw Error(ErrorCode::SpacelikeLost,
                  "compute_v: 1 - |Du|^2 = " + std::to_string(m) + " at node " +
                      std::to_string(i));
    }
    out[i] = 1.0 / std::sqrt(m);
  }
  return v;
}

Field compute_H(const Grid& grid, const Field& u, double eps_space) {
  Field h = compute_v(grid, u, eps_space);
  const Field rate = interior_rhs(grid, u, eps_space);
  auto out = h.values();
  const auto r = rate.values();
  for (std::size_t i = 0; i < out.size(); ++i) out[i] *= r[i];
  return h;
}

double area_mean(const Grid& grid, std::span<const double> values) {
  double sum = 0.0;
  for (std::size_t j = 0; j < grid.n_r(); ++j)
    for (std::size_t k = 0; k < grid.n_theta(); ++k)
      sum += grid.area_weight(j, k) * values[j * grid.n_theta() + k];
  return sum / grid.total_area();
}

MonitorRecord make_record(const Grid& grid, const FlowState& state, const Field& rate,
                          double min_margin) {
  MonitorRecord r;
  r.t = state.t;
  r.dt = state.last_dt;
  r.spacelike_margin = min_margin;
  r.sup_v = 1.0 / std::sqrt(min_margin);
  const auto ut = rate.values();
  const auto [lo, hi] = std::minmax_element(ut.begin(), ut.end());
  r.osc_ut = *hi - *lo;
  r.sup_H_over_v = std::max(std::abs(*lo), std::abs(*hi));
  r.lambda_est = area_mean(grid, ut);
  double sup_u = 0.0;
  for (double x : state.u.values()) sup_u = std::max(sup_u, std::abs(x));
  r.sup_abs_u = sup_u;
  return r;
}

std::vector<Violation> check_bounds(const MonitorRecord& record, const TheoreticalBounds& bounds,
                                    double u0_sup, double tol) {
  std::vector<Violation> out;
  const double h_bound = bounds.C_H * (1.0 + tol);
  if (record.sup_H_over_v > h_bound) {
    out.push_back({"sup_H_over_v", h_bound, record.sup_H_over_v, record.t});
  }
  const double v_bound = bounds.C_grad * (1.0 + tol);
  if (record.sup_v > v_bound) out.push_back({"sup_v", v_bound, record.sup_v, record.t});
  const double u_bound = u0_sup + record.t * bounds.C_H + tol;
  if (record.sup_abs_u > u_bound) {
    out.push_back({"sup_abs_u", u_bound, record.sup_abs_u, record.t});
  }
  return out;
}

std::optional<TranslatorFit> detect_translator(std::span<const MonitorRecord> history,
                                               const SolverConfig& cfg) {
  if (history.empty()) return std::nullopt;
  const MonitorRecord& last = history.back();
  if (!(last.osc_ut < cfg.trans_tol)) return std::nullopt;
  double since = last.t;
  for (auto it = history.rbegin(); it != history.rend() && it->osc_ut < cfg.trans_tol; ++it) {
    since = it->t;
  }
  if (last.t - since < cfg.trans_window) return std::nullopt;
  return TranslatorFit{last.lambda_est, since};
}

Field extract_translator_profile(const Grid& grid, const FlowState& state, double /*lambda*/) {
  Field profile(grid.n_r(), grid.n_theta());
  const double mean = area_mean(grid, state.u.values());
  const auto src = state.u.values();
  auto dst = profile.values();
  for (std::size_t i = 0; i < dst.size(); ++i) dst[i] = src[i] - mean;
  return profile;
}

void write_monitor_header(std::ostream& os) { os << kMonitorCsvHeader << '\n'; }

void write_monitor_row(std::ostream& os, const MonitorRecord& r) {
  char buf[512];
  std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", r.t,
                r.sup_v, r.sup_H_over_v, r.lambda_est, r.osc_ut, r.sup_abs_u, r.spacelike_margin,
                r.dt);
  os << buf;
}

}  // namespace minkflow

#include "minkflow/minkflow.h"

#include <exception>
#include <memory>
#include <new>
#include <string>
#include <vector>

#include "core/app.hpp"
#include "core/config.hpp"
#include "core/domain.hpp"
#include "core/error.hpp"
#include "core/flow.hpp"
#include "core/grid.hpp"
#include "core/oracle.hpp"

struct mf_domain {
  minkflow::Domain domain;
};

struct mf_grid {
  minkflow::Grid grid;
};

struct mf_config {
  minkflow::RunConfig config;
};

struct mf_run_result {
  minkflow::RunReport report;
};

namespace {

thread_local std::string g_last_error;

mf_status fail(mf_status status, std::string message) {
  g_last_error = std::move(message);
  return status;
}

// Runs body, mapping C++ exceptions onto status codes.
template <class F>
mf_status guarded(F&& body) {
  try {
    g_last_error.clear();
    body();
    return MF_OK;
  } catch (const minkflow::Error& e) {
    return fail(static_cast<mf_status>(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(MF_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(MF_ERR_INTERNAL, e.what());
  }
}

std::vector<double> coeffs(const double* p, size_t n) {
  return p ? std::vector<double>(p, p + n) : std::vector<double>(n, 0.0);
}

}  // namespace

extern "C" {

const char* mf_version(void) { return "1.0.0"; }

const char* mf_status_string(mf_status status) {
  if (status == MF_OK) return "OK";
  if (status == MF_ERR_INTERNAL) return "InternalError";
  return minkflow::to_string(static_cast<minkflow::ErrorCode>(status));
}

const char* mf_last_error(void) { return g_last_error.c_str(); }

mf_status mf_domain_create(const mf_domain_spec* spec, const mf_alpha_spec* alpha,
                           size_t n_samples, mf_domain** out) {
  if (!spec || !alpha || !out) return fail(MF_ERR_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] {
    using namespace minkflow;
    const Vec2 c{spec->center[0], spec->center[1]};
    DomainSpec ds;
    switch (spec->kind) {
      case MF_DOMAIN_DISK: ds = DomainSpec::disk(spec->radius, c); break;
      case MF_DOMAIN_ELLIPSE: ds = DomainSpec::ellipse(spec->semi_a, spec->semi_b, c); break;
      case MF_DOMAIN_RADIAL_FOURIER:
        ds = DomainSpec::radial_fourier(spec->mean_radius,
                                        coeffs(spec->cos_coeffs, spec->n_modes),
                                        coeffs(spec->sin_coeffs, spec->n_modes), c);
        break;
      default: throw Error(ErrorCode::InvalidArgument, "unknown domain kind");
    }
    AnglePrescription ap;
    switch (alpha->kind) {
      case MF_ALPHA_CONSTANT: ap = AnglePrescription::constant(alpha->value); break;
      case MF_ALPHA_FOURIER:
        ap = AnglePrescription::fourier(alpha->value, coeffs(alpha->cos_coeffs, alpha->n_modes),
                                        coeffs(alpha->sin_coeffs, alpha->n_modes));
        break;
      case MF_ALPHA_COMPATIBLE_PLANE:
        ap = AnglePrescription::compatible_plane({alpha->plane_slope[0], alpha->plane_slope[1]});
        break;
      default: throw Error(ErrorCode::InvalidArgument, "unknown alpha kind");
    }
    *out = new mf_domain{Domain(std::move(ds), std::move(ap), n_samples)};
  });
}

void mf_domain_destroy(mf_domain* domain) { delete domain; }

mf_status mf_domain_get_constants(const mf_domain* domain, mf_domain_constants* out) {
  if (!domain || !out) return fail(MF_ERR_INVALID_ARGUMENT, "null argument");
  out->alpha_bar = domain->domain.alpha_bar();
  out->kappa_min = domain->domain.kappa_min();
  out->C_alpha = domain->domain.C_alpha();
  return MF_OK;
}

mf_status mf_domain_boundary_normal(const mf_domain* domain, double theta, double out[2]) {
  if (!domain || !out) return fail(MF_ERR_INVALID_ARGUMENT, "null argument");
  const auto n = domain->domain.boundary_normal(theta);
  out[0] = n.x;
  out[1] = n.y;
  return MF_OK;
}

mf_status mf_domain_curvature(const mf_domain* domain, double theta, double* out) {
  if (!domain || !out) return fail(MF_ERR_INVALID_ARGUMENT, "null argument");
  *out = domain->domain.curvature(theta);
  return MF_OK;
}

mf_status mf_theoretical_C(const mf_domain* domain, double C_H, double sup_v0, double* out) {
  if (!domain || !out) return fail(MF_ERR_INVALID_ARGUMENT, "null argument");
  if (!(C_H >= 0.0) || !(sup_v0 >= 1.0)) {
    return fail(MF_ERR_INVALID_ARGUMENT, "need C_H >= 0 and sup_v0 >= 1");
  }
  *out = minkflow::theoretical_C(domain->domain, C_H, sup_v0);
  return MF_OK;
}

mf_status mf_grid_create(const mf_domain* domain, size_t n_r, size_t n_theta, mf_grid** out) {
  if (!domain || !out) return fail(MF_ERR_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] { *out = new mf_grid{minkflow::Grid(domain->domain, n_r, n_theta)}; });
}

void mf_grid_destroy(mf_grid* grid) { delete grid; }

mf_status mf_grid_node_position(const mf_grid* grid, size_t j, size_t k, double out[2]) {
  if (!grid || !out) return fail(MF_ERR_INVALID_ARGUMENT, "null argument");
  if (j > grid->grid.n_r() || k >= grid->grid.n_theta()) {
    return fail(MF_ERR_INVALID_ARGUMENT, "node index out of range");
  }
  const auto p = grid->grid.position(j, k);
  out[0] = p.x;
  out[1] = p.y;
  return MF_OK;
}

mf_status mf_grid_h_min(const mf_grid* grid, double* out) {
  if (!grid || !out) return fail(MF_ERR_INVALID_ARGUMENT, "null argument");
  *out = grid->grid.h_min();
  return MF_OK;
}

mf_status mf_cfl_dt(const mf_grid* grid, double v_max, double sigma, double* out) {
  if (!grid || !out) return fail(MF_ERR_INVALID_ARGUMENT, "null argument");
  if (!(v_max >= 1.0) || !(sigma > 0.0 && sigma <= 1.0)) {
    return fail(MF_ERR_INVALID_ARGUMENT, "need v_max >= 1 and sigma in (0, 1]");
  }
  *out = minkflow::cfl_dt(grid->grid.h_min(), v_max, sigma);
  return MF_OK;
}

mf_status mf_boundary_normal_slope(double q, double alpha, double* p) {
  if (!p) return fail(MF_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] { *p = minkflow::boundary_normal_slope(q, alpha); });
}

mf_status mf_translator_speed(double alpha, double radius, size_t n_pts, double* lambda) {
  if (!lambda) return fail(MF_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] { *lambda = *minkflow::translator_shoot(alpha, radius, n_pts).lambda; });
}

mf_status mf_oracle_command(double alpha, double radius, const char* out_dir, double* lambda) {
  if (!out_dir || !lambda) return fail(MF_ERR_INVALID_ARGUMENT, "null argument");
  const auto report = minkflow::oracle_command(alpha, radius, out_dir);
  if (report.exit_status != minkflow::kExitClean) {
    const auto code = report.error ? static_cast<mf_status>(*report.error) : MF_ERR_INTERNAL;
    return fail(code, report.message);
  }
  *lambda = report.lambda;
  g_last_error.clear();
  return MF_OK;
}

mf_status mf_config_parse(const char* text, mf_config** out) {
  if (!text || !out) return fail(MF_ERR_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] { *out = new mf_config{minkflow::parse_config(text)}; });
}

mf_status mf_config_load(const char* path, mf_config** out) {
  if (!path || !out) return fail(MF_ERR_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] { *out = new mf_config{minkflow::load_config(path)}; });
}

void mf_config_destroy(mf_config* config) { delete config; }

mf_status mf_config_set_output_dir(mf_config* config, const char* dir) {
  if (!config || !dir || !*dir) return fail(MF_ERR_INVALID_ARGUMENT, "null or empty argument");
  config->config.output_dir = dir;
  return MF_OK;
}

mf_status mf_config_set_seed(mf_config* config, uint64_t seed) {
  if (!config) return fail(MF_ERR_INVALID_ARGUMENT, "null argument");
  config->config.initial.seed = seed;
  return MF_OK;
}

mf_status mf_config_set_checks(mf_config* config, int enabled) {
  if (!config) return fail(MF_ERR_INVALID_ARGUMENT, "null argument");
  config->config.checks = enabled != 0;
  return MF_OK;
}

const char* mf_config_output_dir(const mf_config* config) {
  return config ? config->config.output_dir.c_str() : "";
}

mf_status mf_run(const mf_config* config, mf_run_result** out) {
  if (!config || !out) return fail(MF_ERR_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] { *out = new mf_run_result{minkflow::run_command(config->config)}; });
}

void mf_run_result_destroy(mf_run_result* result) { delete result; }

int mf_run_result_exit_code(const mf_run_result* result) {
  return result ? result->report.exit_status : minkflow::kExitSolverError;
}

const char* mf_run_result_termination(const mf_run_result* result) {
  return result ? result->report.termination.c_str() : "";
}

int mf_run_result_lambda(const mf_run_result* result, double* lambda) {
  if (!result || !result->report.lambda) return 0;
  if (lambda) *lambda = *result->report.lambda;
  return 1;
}

size_t mf_run_result_violations(const mf_run_result* result) {
  return result ? result->report.violations : 0;
}

double mf_run_result_max_sup_v(const mf_run_result* result) {
  return result ? result->report.max_sup_v : 0.0;
}

double mf_run_result_t_final(const mf_run_result* result) {
  return result ? result->report.t_final : 0.0;
}

const char* mf_run_result_message(const mf_run_result* result) {
  return result ? result->report.message.c_str() : "";
}

}  // extern "C"

/*
 * minkflow C API.
 *
 * Spacelike mean curvature flow of graphs over strictly convex planar
 * domains in Minkowski space R^{2+1}, with a Neumann boundary-angle
 * condition. All objects are opaque handles owned by the caller and released
 * with the matching *_destroy function. Every fallible call returns an
 * mf_status; on failure mf_last_error() describes the problem (per thread).
 */
#ifndef MINKFLOW_H_
#define MINKFLOW_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(MINKFLOW_BUILDING)
#    define MINKFLOW_API __declspec(dllexport)
#  else
#    define MINKFLOW_API __declspec(dllimport)
#  endif
#else
#  define MINKFLOW_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum mf_status {
  MF_OK = 0,
  MF_ERR_INVALID_ARGUMENT = 1,
  MF_ERR_NON_POSITIVE_RADIUS = 2,
  MF_ERR_NOT_STRICTLY_CONVEX = 3,
  MF_ERR_RESOLUTION_TOO_LOW = 4,
  MF_ERR_MISSING_GHOST_ROW = 5,
  MF_ERR_SPACELIKE_LOST = 6,
  MF_ERR_TANGENT_TOO_STEEP = 7,
  MF_ERR_NON_FINITE = 8,
  MF_ERR_NOT_SPACELIKE = 9,
  MF_ERR_SHOOTING_FAILED = 10,
  MF_ERR_PARSE = 11,
  MF_ERR_VALIDATION = 12,
  MF_ERR_IO = 13,
  MF_ERR_INTERNAL = 99
} mf_status;

typedef struct mf_domain mf_domain;
typedef struct mf_grid mf_grid;
typedef struct mf_config mf_config;
typedef struct mf_run_result mf_run_result;

MINKFLOW_API const char* mf_version(void);
MINKFLOW_API const char* mf_status_string(mf_status status);
/* Message of the last failed call on this thread; "" if none. */
MINKFLOW_API const char* mf_last_error(void);

/* ---- domain ------------------------------------------------------------ */

typedef enum mf_domain_kind {
  MF_DOMAIN_DISK = 0,
  MF_DOMAIN_ELLIPSE = 1,
  MF_DOMAIN_RADIAL_FOURIER = 2
} mf_domain_kind;

typedef struct mf_domain_spec {
  mf_domain_kind kind;
  double radius;               /* disk */
  double semi_a, semi_b;       /* ellipse */
  double mean_radius;          /* radial fourier */
  const double* cos_coeffs;    /* modes 1..n_modes, may be NULL */
  const double* sin_coeffs;
  size_t n_modes;
  double center[2];
} mf_domain_spec;

typedef enum mf_alpha_kind {
  MF_ALPHA_CONSTANT = 0,
  MF_ALPHA_FOURIER = 1,
  MF_ALPHA_COMPATIBLE_PLANE = 2
} mf_alpha_kind;

typedef struct mf_alpha_spec {
  mf_alpha_kind kind;
  double value;                /* constant, or Fourier mean */
  const double* cos_coeffs;
  const double* sin_coeffs;
  size_t n_modes;
  double plane_slope[2];       /* compatible plane */
} mf_alpha_spec;

typedef struct mf_domain_constants {
  double alpha_bar;            /* sup |alpha| */
  double kappa_min;            /* inf boundary curvature */
  double C_alpha;              /* sup |d alpha / ds| */
} mf_domain_constants;

MINKFLOW_API mf_status mf_domain_create(const mf_domain_spec* spec, const mf_alpha_spec* alpha,
                                        size_t n_samples, mf_domain** out);
MINKFLOW_API void mf_domain_destroy(mf_domain* domain);
MINKFLOW_API mf_status mf_domain_get_constants(const mf_domain* domain,
                                               mf_domain_constants* out);
MINKFLOW_API mf_status mf_domain_boundary_normal(const mf_domain* domain, double theta,
                                                 double out[2]);
MINKFLOW_API mf_status mf_domain_curvature(const mf_domain* domain, double theta, double* out);
/* Gradient-estimate constant for this domain. */
MINKFLOW_API mf_status mf_theoretical_C(const mf_domain* domain, double C_H, double sup_v0,
                                        double* out);

/* ---- grid and pointwise solver pieces ------------------------------------ */

MINKFLOW_API mf_status mf_grid_create(const mf_domain* domain, size_t n_r, size_t n_theta,
                                      mf_grid** out);
MINKFLOW_API void mf_grid_destroy(mf_grid* grid);
/* j == n_r addresses the ghost ring. */
MINKFLOW_API mf_status mf_grid_node_position(const mf_grid* grid, size_t j, size_t k,
                                             double out[2]);
MINKFLOW_API mf_status mf_grid_h_min(const mf_grid* grid, double* out);
MINKFLOW_API mf_status mf_cfl_dt(const mf_grid* grid, double v_max, double sigma, double* out);

/* p solving p = alpha sqrt(1 - p^2 - q^2); MF_ERR_TANGENT_TOO_STEEP if |q| >= 1. */
MINKFLOW_API mf_status mf_boundary_normal_slope(double q, double alpha, double* p);

/* ---- oracle --------------------------------------------------------------- */

MINKFLOW_API mf_status mf_translator_speed(double alpha, double radius, size_t n_pts,
                                           double* lambda);
/* Writes <out_dir>/translator_profile.csv. */
MINKFLOW_API mf_status mf_oracle_command(double alpha, double radius, const char* out_dir,
                                         double* lambda);

/* ---- configured runs ------------------------------------------------------ */

MINKFLOW_API mf_status mf_config_parse(const char* text, mf_config** out);
MINKFLOW_API mf_status mf_config_load(const char* path, mf_config** out);
MINKFLOW_API void mf_config_destroy(mf_config* config);
MINKFLOW_API mf_status mf_config_set_output_dir(mf_config* config, const char* dir);
MINKFLOW_API mf_status mf_config_set_seed(mf_config* config, uint64_t seed);
MINKFLOW_API mf_status mf_config_set_checks(mf_config* config, int enabled);
MINKFLOW_API const char* mf_config_output_dir(const mf_config* config);

/* Runs the flow and writes outputs. Solver failures are reported through the
 * result (exit code 2), not the returned status. */
MINKFLOW_API mf_status mf_run(const mf_config* config, mf_run_result** out);
MINKFLOW_API void mf_run_result_destroy(mf_run_result* result);
/* 0 clean, 1 estimate violations, 2 solver error. */
MINKFLOW_API int mf_run_result_exit_code(const mf_run_result* result);
MINKFLOW_API const char* mf_run_result_termination(const mf_run_result* result);
/* Returns 1 and sets *lambda when a translator was detected. */
MINKFLOW_API int mf_run_result_lambda(const mf_run_result* result, double* lambda);
MINKFLOW_API size_t mf_run_result_violations(const mf_run_result* result);
MINKFLOW_API double mf_run_result_max_sup_v(const mf_run_result* result);
MINKFLOW_API double mf_run_result_t_final(const mf_run_result* result);
MINKFLOW_API const char* mf_run_result_message(const mf_run_result* result);

#ifdef __cplusplus
}
#endif

#endif /* MINKFLOW_H_ */

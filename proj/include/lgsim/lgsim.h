/* Leggett-Garg simulator for collective qubit ensembles: C interface. */
#ifndef LGSIM_LGSIM_H
#define LGSIM_LGSIM_H

#include <stddef.h>

#if defined(_WIN32)
#if defined(LGSIM_BUILDING_LIBRARY)
#define LGSIM_API __declspec(dllexport)
#else
#define LGSIM_API __declspec(dllimport)
#endif
#else
#define LGSIM_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum lgsim_status {
  LGSIM_OK = 0,
  LGSIM_ERR_INVALID_ARGUMENT = 1,
  LGSIM_ERR_DOMAIN = 2,       /* spin labels off the ladder of j */
  LGSIM_ERR_BACKEND = 3,      /* request needs the other backend */
  LGSIM_ERR_MEMORY_GUARD = 4, /* see lgsim_last_error_bytes() */
  LGSIM_ERR_INTEGRATION = 5,  /* see lgsim_last_error_time() */
  LGSIM_ERR_NUMERIC = 6,      /* invariant violated (imaginary residue, K > 3) */
  LGSIM_ERR_CONFIG = 7,       /* message is "field: reason" */
  LGSIM_ERR_IO = 8,
  LGSIM_ERR_INTERNAL = 9
} lgsim_status;

typedef enum lgsim_scheme {
  LGSIM_SCHEME_CENTRAL_VN = 0,
  LGSIM_SCHEME_SINGLE_STATE_VN = 1,
  LGSIM_SCHEME_PARITY_VN = 2,
  LGSIM_SCHEME_EXTREME_VN = 3,
  LGSIM_SCHEME_NORMALIZED_JZ_VN = 4,
  LGSIM_SCHEME_CENTRAL_LUEDERS = 5
} lgsim_scheme;

#define LGSIM_SCHEME_COUNT 6

typedef enum lgsim_boundary { LGSIM_BOUNDARY_M0_MINUS = 0, LGSIM_BOUNDARY_M0_PLUS = 1 } lgsim_boundary;

typedef enum lgsim_backend { LGSIM_BACKEND_DICKE = 0, LGSIM_BACKEND_FULL = 1, LGSIM_BACKEND_AUTO = 2 } lgsim_backend;

typedef enum lgsim_validation_level { LGSIM_VALIDATE_FAST = 0, LGSIM_VALIDATE_FULL = 1 } lgsim_validation_level;

/* Rates in units of Omega: lower case per qubit, capitalised collective. */
typedef struct lgsim_noise {
  double gamma_d;
  double gamma_l;
  double Gamma_d;
  double Gamma_l;
} lgsim_noise;

typedef struct lgsim_sample {
  double omega_tau;
  double k;
  double c21;
  double c32;
  double c31;
} lgsim_sample;

/* grid_points = 0 selects max(2000, 20 N). */
typedef struct lgsim_search {
  int grid_points;
  double refine_tol;
} lgsim_search;

typedef struct lgsim_kmax {
  double k_max;
  double omega_tau_max;
  int at_edge;
  int grid_points;
} lgsim_kmax;

typedef struct lgsim_disconnectivity {
  double delta_best;
  double delta_worst;
  double delta_av;
  double plus_mean;
  double minus_mean;
} lgsim_disconnectivity;

typedef struct lgsim_model lgsim_model;
typedef struct lgsim_curve lgsim_curve;
typedef struct lgsim_config lgsim_config;

/* Receives output paths, warnings, or validation lines. */
typedef void (*lgsim_line_fn)(const char* line, void* user);

LGSIM_API const char* lgsim_version(void);
LGSIM_API const char* lgsim_status_string(lgsim_status status);

/* Thread-local details of the last failed call on this thread. */
LGSIM_API const char* lgsim_last_error(void);
LGSIM_API size_t lgsim_last_error_bytes(void);
LGSIM_API double lgsim_last_error_time(void);

LGSIM_API const char* lgsim_scheme_name(lgsim_scheme scheme);
LGSIM_API lgsim_status lgsim_scheme_parse(const char* text, lgsim_scheme* out);

/* Wigner rotation elements; spin labels are passed doubled. */
LGSIM_API lgsim_status lgsim_small_d(int two_j, int two_m_from, int two_m_to, double beta, double* out);
LGSIM_API lgsim_status lgsim_element_from_top(int two_j, int two_m, double theta, double* out);
LGSIM_API lgsim_status lgsim_element_from_bottom(int two_j, int two_m, double theta, double* out);

/* Noise-free closed forms. */
LGSIM_API lgsim_status lgsim_k_extreme_closed_form(double j, double omega_tau, double* out);
LGSIM_API lgsim_status lgsim_k_extreme_closed_form_max(double j, lgsim_kmax* out);
LGSIM_API lgsim_status lgsim_k_single_state_asymptote(double j, double* out);

/* noise may be NULL (noise-free). full_space_cap <= 0 selects 10. */
LGSIM_API lgsim_status lgsim_model_create(lgsim_scheme scheme, lgsim_boundary boundary, int n_qubits,
                                          const lgsim_noise* noise, lgsim_backend backend, int full_space_cap,
                                          lgsim_model** out);
LGSIM_API void lgsim_model_destroy(lgsim_model* model);
/* The resolved backend: DICKE or FULL. */
LGSIM_API lgsim_status lgsim_model_backend(const lgsim_model* model, lgsim_backend* out);
LGSIM_API lgsim_status lgsim_model_correlation(const lgsim_model* model, double t_a, double t_b, double* out);
LGSIM_API lgsim_status lgsim_model_k(const lgsim_model* model, double omega_tau, lgsim_sample* out);
/* search may be NULL for defaults. */
LGSIM_API lgsim_status lgsim_model_kmax(const lgsim_model* model, const lgsim_search* search, lgsim_kmax* out);
LGSIM_API lgsim_status lgsim_model_curve(const lgsim_model* model, const double* omega_tau, size_t count,
                                         const lgsim_search* search, lgsim_curve** out);

LGSIM_API size_t lgsim_curve_size(const lgsim_curve* curve);
LGSIM_API lgsim_status lgsim_curve_sample(const lgsim_curve* curve, size_t index, lgsim_sample* out);
LGSIM_API lgsim_status lgsim_curve_kmax(const lgsim_curve* curve, lgsim_kmax* out);
LGSIM_API void lgsim_curve_destroy(lgsim_curve* curve);

LGSIM_API lgsim_status lgsim_disconnectivity_compute(lgsim_scheme scheme, lgsim_boundary boundary, int n_qubits,
                                                     lgsim_disconnectivity* out);

LGSIM_API lgsim_status lgsim_config_create(lgsim_config** out);
LGSIM_API lgsim_status lgsim_config_load(const char* path, lgsim_config** out);
LGSIM_API lgsim_status lgsim_config_set(lgsim_config* config, const char* key, const char* value);
/* List keys (schemes, n_values) only. */
LGSIM_API lgsim_status lgsim_config_append(lgsim_config* config, const char* key, const char* value);
LGSIM_API lgsim_status lgsim_config_validate(const lgsim_config* config);
LGSIM_API void lgsim_config_destroy(lgsim_config* config);

LGSIM_API lgsim_status lgsim_cmd_curve(const lgsim_config* config, lgsim_line_fn sink, void* user);
LGSIM_API lgsim_status lgsim_cmd_kmax_sweep(const lgsim_config* config, lgsim_line_fn sink, void* user);
LGSIM_API lgsim_status lgsim_cmd_disconnectivity(const lgsim_config* config, lgsim_line_fn sink, void* user);
LGSIM_API lgsim_status lgsim_cmd_plot_script(const char* const* csv_paths, size_t count, const char* script_path);

/* failures receives the number of FAIL checks; deviations are not failures. */
LGSIM_API lgsim_status lgsim_validate(lgsim_validation_level level, int corrupt_jminus, lgsim_line_fn sink,
                                      void* user, int* failures);

#ifdef __cplusplus
}
#endif

#endif

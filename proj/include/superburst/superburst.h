#ifndef SUPERBURST_H
#define SUPERBURST_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define SB_API __declspec(dllexport)
#else
#define SB_API __attribute__((visibility("default")))
#endif

typedef enum sb_status {
  SB_OK = 0,
  SB_ERR_INVALID_ARGUMENT = 1,
  SB_ERR_PARSE = 2,
  SB_ERR_INCOMPATIBLE = 3,
  SB_ERR_OUT_OF_RANGE = 4,
  SB_ERR_UNSUPPORTED = 5,
  SB_ERR_NUMERIC = 6,
  SB_ERR_NO_ROOT = 7,
  SB_ERR_IO = 8,
  SB_ERR_BUFFER = 9,
  SB_ERR_INTERNAL = 10
} sb_status;

typedef struct sb_lattice sb_lattice;
typedef struct sb_model sb_model;
typedef struct sb_matrix sb_matrix;     /* decoherence matrix */
typedef struct sb_spectrum sb_spectrum; /* spectral summary */
typedef struct sb_trace sb_trace;       /* emission trace */

/* Message of the last failed call on this thread; empty after success. */
SB_API const char* sb_last_error(void);
SB_API const char* sb_status_name(sb_status status);
SB_API const char* sb_version(void);

/* String results are copied into buf (NUL-terminated, truncated to cap).
   *len receives the full length; SB_ERR_BUFFER if it did not fit. */

/* Lattices: "D:n1xn2[:periodic|:open][:d=spacing]". */
SB_API sb_status sb_lattice_parse(const char* descriptor, sb_lattice** out);
SB_API void sb_lattice_free(sb_lattice* lattice);
SB_API sb_status sb_lattice_size(const sb_lattice* lattice, size_t* n);
SB_API sb_status sb_lattice_dimension(const sb_lattice* lattice, int* dimension);
SB_API sb_status sb_lattice_extents(const sb_lattice* lattice, int* extents, size_t cap, size_t* count);
SB_API sb_status sb_lattice_is_periodic(const sb_lattice* lattice, int* periodic);
SB_API sb_status sb_lattice_descriptor(const sb_lattice* lattice, char* buf, size_t cap, size_t* len);
SB_API sb_status sb_lattice_equal(const sb_lattice* a, const sb_lattice* b, int* equal);

/* Models: nn, nnvar, nnn, exp, power, chiral, dicke|all. */
SB_API sb_status sb_model_parse(const char* descriptor, sb_model** out);
SB_API void sb_model_free(sb_model* model);
SB_API sb_status sb_model_descriptor(const sb_model* model, char* buf, size_t cap, size_t* len);
SB_API sb_status sb_model_kind(const sb_model* model, char* buf, size_t cap, size_t* len);
SB_API sb_status sb_model_equal(const sb_model* a, const sb_model* b, int* equal);
/* *has = 0 for models without a single coupling parameter. */
SB_API sb_status sb_model_coupling(const sb_model* model, double* gamma, int* has);
SB_API sb_status sb_model_with_coupling(const sb_model* model, double gamma, sb_model** out);
SB_API sb_status sb_model_check(const sb_model* model, const sb_lattice* lattice);

/* Decoherence matrices. */
SB_API sb_status sb_matrix_build(const sb_model* model, const sb_lattice* lattice, sb_matrix** out);
/* Row-major N*N real and imaginary parts. */
SB_API sb_status sb_matrix_from_entries(size_t n, const double* re, const double* im, sb_matrix** out);
SB_API void sb_matrix_free(sb_matrix* matrix);
SB_API sb_status sb_matrix_size(const sb_matrix* matrix, size_t* n);
SB_API sb_status sb_matrix_entry(const sb_matrix* matrix, size_t i, size_t j, double* re, double* im);
SB_API sb_status sb_matrix_is_real(const sb_matrix* matrix, int* is_real);
SB_API sb_status sb_matrix_psd_certificate(const sb_matrix* matrix, double tolerance, int* certified);

/* Spectra. */
typedef struct sb_spectrum_info {
  size_t n;
  double min_eigenvalue;
  double max_eigenvalue;
  double trace_gamma;
  double trace_gamma2;
  double trace_gamma3;
  double eigen_trace_gamma2;
  double eigen_trace_gamma3;
  int is_physical;
  double tolerance;
} sb_spectrum_info;

SB_API sb_status sb_spectrum_analyze(const sb_matrix* matrix, double tolerance, int with_vectors, sb_spectrum** out);
SB_API void sb_spectrum_free(sb_spectrum* spectrum);
SB_API sb_status sb_spectrum_get_info(const sb_spectrum* spectrum, sb_spectrum_info* info);
/* Descending eigenvalues. */
SB_API sb_status sb_spectrum_eigenvalues(const sb_spectrum* spectrum, double* values, size_t cap, size_t* count);
/* Column k of the eigenvector matrix as re/im arrays of length N. */
SB_API sb_status sb_spectrum_eigenvector(const sb_spectrum* spectrum, size_t k, double* re, double* im, size_t cap);
/* *has = 0 when no closed form is known for the model/lattice. */
SB_API sb_status sb_closed_form_spectrum(const sb_model* model, const sb_lattice* lattice, double* values, size_t cap,
                                         size_t* count, int* has);
SB_API sb_status sb_gamma_p(const sb_model* model, const sb_lattice* lattice, double tolerance, double* gamma_p);

/* Correlations. */
typedef struct sb_correlation_report {
  size_t n;
  double g2;
  int has_g3;
  double g3;
  double rdot0;
  double rddot0;
  int is_superradiant;
} sb_correlation_report;

SB_API sb_status sb_correlate(const sb_spectrum* spectrum, sb_correlation_report* report);
SB_API sb_status sb_g2_from_traces(size_t n, double t1, double t2, double* g2);
SB_API sb_status sb_g3_from_traces(size_t n, double t2, double t3, double* g3);
SB_API sb_status sb_chiral_g2(size_t n, double kd, double chi, double* g2);
SB_API sb_status sb_one_jump_rate(const sb_spectrum* spectrum, const sb_matrix* matrix, double* rate);
SB_API sb_status sb_product_state_rdot0(const sb_matrix* matrix, double theta, double phi, double* rdot0);

typedef struct sb_critical {
  int has_transition;
  double gamma;
  char method[32];
} sb_critical;

SB_API sb_status sb_gamma_s(const sb_model* model, const sb_lattice* lattice, sb_critical* out);
/* Bulk per-site sums on a torus with the given extents. */
SB_API sb_status sb_gamma_s_bulk(const sb_model* model, const int* extents, size_t dimension, sb_critical* out);
SB_API sb_status sb_gamma_s_limit(const sb_model* model, int dimension, double* gamma, int* has);

typedef enum sb_region { SB_REGION_UNPHYSICAL = 0, SB_REGION_PHYSICAL_NO_BURST = 1, SB_REGION_SUPERRADIANT = 2 } sb_region;
SB_API const char* sb_region_name(sb_region region);
SB_API sb_status sb_nnn_region(double gamma1, double gamma2, sb_region* region);
SB_API sb_status sb_nnn_region_finite(double gamma1, double gamma2, size_t n, double tolerance, sb_region* region);
SB_API double sb_nnn_min_gamma2(void);

/* Bounds. */
typedef struct sb_bound {
  size_t n;
  double bound_value;
  int has_relaxed;
  double relaxed_value;
  int certifies_no_burst;
  char method[32];
} sb_bound;

/* *has = 0 when no analytic bound applies. */
SB_API sb_status sb_analytic_bound(const sb_model* model, const sb_lattice* lattice, sb_bound* out, int* has);
SB_API sb_status sb_brute_force_bound(const sb_matrix* matrix, sb_bound* out);

/* Dynamics. Coherent coupling: NULL, "none" or "all:<J>". State: "excited" or
   "product:theta=..,phi=..". */
typedef struct sb_evolve_options {
  double rtol;
  double atol;
} sb_evolve_options;

SB_API sb_evolve_options sb_default_evolve_options(void);
SB_API sb_status sb_time_grid(double tmax, size_t points, size_t early_points, double* times, size_t cap, size_t* count);
SB_API sb_status sb_lindblad_evolve(const sb_matrix* matrix, const char* coherent, const char* state, const double* times,
                                    size_t count, const sb_evolve_options* options, sb_trace** out);
SB_API sb_status sb_lindblad_rdot0(const sb_matrix* matrix, const char* coherent, const char* state, double* rdot0);
SB_API sb_status sb_dicke_local_evolve(size_t n, double gamma, const double* times, size_t count,
                                       const sb_evolve_options* options, sb_trace** out);
/* Cumulant dynamics on a translation-invariant ring. */
SB_API sb_status sb_cumulant_evolve(const sb_matrix* matrix, const char* coherent, const char* state, const double* times,
                                    size_t count, const sb_evolve_options* options, sb_trace** out);
SB_API sb_status sb_cumulant_rate_derivative(const sb_matrix* matrix, const char* coherent, double p, const double* c,
                                             const double* q, size_t n, double* rdot);
SB_API sb_status sb_nn_meanfield_bound(int dimension, double p, double c1, double c2, double n, double* bound);
SB_API void sb_trace_free(sb_trace* trace);
SB_API sb_status sb_trace_length(const sb_trace* trace, size_t* count);
/* Series: "t", "R", and for cumulant traces also "p", "c1", "c2", "Rdot". */
SB_API sb_status sb_trace_series(const sb_trace* trace, const char* name, double* values, size_t cap, size_t* count);

typedef struct sb_trace_diagnostics {
  double initial_rate;
  double max_trace_error;
  double max_hermiticity_error;
  double min_population;
  double max_population;
  double max_imag_correlation;
} sb_trace_diagnostics;
SB_API sb_status sb_trace_get_diagnostics(const sb_trace* trace, sb_trace_diagnostics* out);

typedef struct sb_burst_report {
  int has_burst;
  int is_delayed;
  double peak_time;
  double peak_rate;
  double fractional_increase;
} sb_burst_report;
SB_API sb_status sb_detect_burst(const sb_trace* trace, double threshold, sb_burst_report* out);

#ifdef __cplusplus
}
#endif

#endif

/* hemirobin: hemisphere Robin Laplacian eigenvalue-cluster toolkit.
 *
 * C interface of the shared library. All functions return hr_status; on
 * failure hr_last_error() carries a thread-local message. Handles are opaque
 * and owned by the caller through the matching *_free function.
 */
#ifndef HEMIROBIN_H
#define HEMIROBIN_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum hr_status {
  HR_OK = 0,
  HR_EINVAL = 1,   /* invalid argument or configuration */
  HR_EDOMAIN = 2,  /* parameter outside the mathematical domain */
  HR_ENUMERIC = 3, /* numerical failure (solver, quadrature, truncation) */
} hr_status;

typedef struct hr_sigma hr_sigma;   /* Robin coefficient (trig polynomial) */
typedef struct hr_testfn hr_testfn; /* test function f with f(0)=0 */

const char* hr_version(void);
const char* hr_last_error(void);

/* sigma ingestion: JSON {"type":"coeffs","coeffs":[[k,re,im],...]} or
 * {"type":"samples","values":[...],"degree":D}; or raw coefficient arrays of
 * length 2*degree+1 (index k+degree). Hermitian symmetry is validated. */
hr_status hr_sigma_from_json(const char* json, hr_sigma** out);
hr_status hr_sigma_from_coeffs(int degree, const double* re, const double* im, hr_sigma** out);
void hr_sigma_free(hr_sigma* s);
int hr_sigma_degree(const hr_sigma* s);
hr_status hr_sigma_evaluate(const hr_sigma* s, double phi, double* out);

/* f(x) = (sum_k coeffs[k] x^k) * bump(x/bump_radius); coeffs[0] must be 0.
 * bump_radius <= 0 selects a plain polynomial (only degree <= 1 is accepted
 * by the limiting integrals). */
hr_status hr_testfn_create(const double* coeffs, size_t ncoeffs, double bump_radius, hr_testfn** out);
void hr_testfn_free(hr_testfn* f);

/* ---- cluster operator ---- */

/* gaps must hold ell+1 doubles; ascending eigenvalues of the cluster operator */
hr_status hr_gap_spectrum(const hr_sigma* s, int ell, double* gaps);
hr_status hr_cluster_trace(const hr_sigma* s, int ell, double* out);
/* lower/upper must hold ell+1 doubles each: spectra of V_l[sigma -+ eps|sigma|] */
hr_status hr_sandwich_spectra(const hr_sigma* s, int ell, double epsilon, double* lower, double* upper);

/* ---- limiting densities ---- */

hr_status hr_limit_functional(const hr_sigma* s, const hr_testfn* f, double* out);
/* (1/(ell+1)) sum_k f(gap_k) for the ell-th cluster */
hr_status hr_empirical_functional(const hr_sigma* s, const hr_testfn* f, int ell, double* out);
hr_status hr_rho_density(const hr_sigma* s, double y, double* out);
/* out[0]=naive, out[1]=correct, out[2]=substitution_check */
hr_status hr_weinstein(const hr_sigma* s, const hr_testfn* f, double out[3]);
hr_status hr_geodesic_average(const hr_sigma* s, double theta, double phi, double eps, double* out);

/* ---- Galerkin solver ---- */

/* full truncated Robin spectrum, ascending; *evals is allocated, free with
 * hr_free_doubles; *count = (lmax+1)^2 */
hr_status hr_robin_spectrum(const hr_sigma* s, int lmax, double** evals, size_t* count);
void hr_free_doubles(double* p);
/* per-window totals for ell in [ell_lo, ell_hi] (array length ell_hi-ell_lo+1),
 * eigenvalues below cutoff only; stragglers = count outside every window */
hr_status hr_window_counts(const double* evals, size_t count, double window_c, int ell_lo,
                           int ell_hi, double cutoff, int* totals, size_t* stragglers);
hr_status hr_odd_construction(const hr_sigma* s, int ell, int* dimension, double* max_residual,
                              double* scale);

/* ---- one-dimensional companion ---- */

hr_status hr_sl_robin_eigenvalue(double sigma, int n, double* out);
hr_status hr_sl_step_eigenvalue(double sigma, double eps, int n, double* out);

/* ---- acceptance suite ---- */

/* Runs every acceptance criterion; with print_progress != 0 one PASS/FAIL
 * line per criterion goes to stdout. *report_json (free with hr_free_string)
 * is the machine-readable verdict; *all_pass is 1 when every criterion holds. */
hr_status hr_verify_run(unsigned seed, int print_progress, char** report_json, int* all_pass);
void hr_free_string(char* p);

#ifdef __cplusplus
}
#endif

#endif /* HEMIROBIN_H */

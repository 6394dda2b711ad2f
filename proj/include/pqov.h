/* C interface to the perfect quantum optical vortex library.
 *
 * All functions return a pqov_status; on failure pqov_last_error() gives a
 * thread-local description. Objects returned through out-parameters are owned
 * by the caller and released with the matching *_free function.
 */
#ifndef PQOV_H
#define PQOV_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum {
  PQOV_OK = 0,
  PQOV_ERR_USAGE = 1,    /* invalid argument or unsupported parameter range */
  PQOV_ERR_NUMERIC = 2,  /* quadrature/accuracy failure */
  PQOV_ERR_IO = 3        /* file I/O failure */
} pqov_status;

typedef struct {
  double wavelength_nm;   /* default 810 */
  double focal_length_cm; /* default 70 */
  double alpha;           /* default 15 */
  int charge;             /* default 0 */
  int threads;            /* 0 = all hardware threads */
} pqov_params;

void pqov_params_init(pqov_params* params);

/* Opaque 2-D grid: either a complex amplitude field or a real Wigner slice. */
typedef struct pqov_field pqov_field;
typedef struct pqov_curve pqov_curve;

const char* pqov_version(void);
const char* pqov_last_error(void);

/* Quadrature-distribution amplitude grid; state is "bg" or "perfect".
 * Axes are x/sigma and y/sigma on [-extent, extent] with grid points each. */
pqov_status pqov_quad_grid(const pqov_params* params, const char* state, int grid,
                           double extent, pqov_field** out);

/* Phase winding count on a circle of the given dimensionless radius. */
pqov_status pqov_phase_jumps(const pqov_params* params, const char* state, int grid,
                             double extent, double circle_radius, int* jumps_out);

/* Ring radius of the perfect vortex, in sigma units. */
pqov_status pqov_ring_radius(const pqov_params* params, double* radius_out);

/* Wigner slice; plane is one of xy, x_px, x_py, y_py, y_px, px_py and
 * (fixed1, fixed2) are the two held coordinates in plane order. method is
 * "definition" or "analytic". quad_nodes/quad_half_width 0 = automatic. */
pqov_status pqov_wigner_slice(const pqov_params* params, const char* plane, double fixed1,
                              double fixed2, int grid, double extent, const char* method,
                              int quad_nodes, double quad_half_width, pqov_field** out);

/* Negativity-volume curve over the x-p_y slice at y=0, p_x=0. */
pqov_status pqov_negativity_scan(const pqov_params* params, int q_min, int q_max,
                                 const char* method, int grid, double extent,
                                 pqov_curve** out);

/* Reduced cross-module self checks. *all_passed is 1 iff every check passed;
 * the status is PQOV_OK whenever the suite itself could run. The report text
 * is written through report_out and freed with pqov_string_free. */
pqov_status pqov_selftest(int threads, double bessel_perturbation, char** report_out,
                          int* all_passed);

pqov_status pqov_field_write_csv(const pqov_field* field, const char* path);
pqov_status pqov_curve_write_csv(const pqov_curve* curve, const char* path);

int pqov_field_rows(const pqov_field* field); /* axis1 count */
int pqov_field_cols(const pqov_field* field); /* axis2 count */
/* For complex fields im_out receives the imaginary part; for real slices 0. */
pqov_status pqov_field_value(const pqov_field* field, int i1, int i2, double* re_out,
                             double* im_out);

int pqov_curve_size(const pqov_curve* curve);
pqov_status pqov_curve_entry(const pqov_curve* curve, int index, int* charge_out,
                             double* n_value_out, int* ok_out);

void pqov_field_free(pqov_field* field);
void pqov_curve_free(pqov_curve* curve);
void pqov_string_free(char* text);

#ifdef __cplusplus
}
#endif

#endif /* PQOV_H */

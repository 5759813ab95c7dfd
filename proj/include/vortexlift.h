/* vortexlift: exact vortex-carrying solutions of a harmonically interacting
 * nonlinear Schroedinger equation, their vortex-line kinematics, a split-step
 * spectral cross-check, and contact-nonlinearity regime estimates.
 *
 * C API over the C++ core: opaque handles, integer status codes, thread-local
 * error messages. Every function returning vl_status sets the last-error
 * message on failure; out-parameters are untouched unless VL_OK is returned.
 */
#ifndef VORTEXLIFT_H
#define VORTEXLIFT_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum vl_status {
  VL_OK = 0,
  VL_ERR_INVALID_ARGUMENT = 1,
  VL_ERR_FREQUENCY_COLLAPSE = 2, /* modified squared frequency <= 0 */
  VL_ERR_BOX_TOO_SMALL = 3,      /* sampling box fails the boundary check */
  VL_ERR_NUMERIC = 4,
  VL_ERR_IO = 5,
  VL_ERR_INTERNAL = 6
} vl_status;

/* Message describing the most recent failure on this thread ("" if none). */
const char* vl_last_error(void);

/* ---- opaque handles -------------------------------------------------- */
typedef struct vl_trap vl_trap;           /* frequencies + interaction + norm */
typedef struct vl_state vl_state;         /* polynomial x Gaussian wavefunction */
typedef struct vl_lifted vl_lifted;       /* solution of the interacting equation */
typedef struct vl_grid vl_grid;           /* complex field on a regular grid */
typedef struct vl_polylines vl_polylines; /* traced vortex lines */

/* ---- plain value structs --------------------------------------------- */
typedef struct vl_moments {
  double n;
  double time;
  double r[3];
  double p[3];
  double u[3];
  double t_kin[3];
  double w[3];
} vl_moments;

typedef struct vl_gp_params {
  double n_atoms;
  double a_scatt;
  double box_l;
  double d_sep;
  double mass; /* set mass = hbar = 1 for natural units */
  double hbar;
} vl_gp_params;

typedef struct vl_regime_report {
  double xi;
  double center_ratio;
  double t0_seconds;
  double trap_period_seconds;
  double ratio_threshold;
  double timescale_factor;
  int nonlinearity_negligible;
  int trap_negligible;
  int separation_warning;
  double xi_quoted;        /* quoted sodium-condensate estimate, for the log */
  double t0_quoted_seconds;
} vl_regime_report;

/* ---- trap configuration ---------------------------------------------- */
vl_status vl_trap_create(const double omega_tilde[3], double omega_sq_int,
                         double norm, vl_trap** out);
void vl_trap_destroy(vl_trap* trap);
vl_status vl_trap_modified_frequencies(const vl_trap* trap, double out_omega[3]);

/* ---- analytic states -------------------------------------------------- */
vl_status vl_state_ground(const double widths[3], vl_state** out);
vl_status vl_state_single_vortex(double a_disp, const double widths[3],
                                 vl_state** out);
vl_status vl_state_two_perpendicular_vortices(double d, double box_l,
                                              double n_atoms, vl_state** out);
void vl_state_destroy(vl_state* s);
vl_status vl_state_evaluate(const vl_state* s, const double r[3],
                            double out_re_im[2]);
vl_status vl_state_norm_sq(const vl_state* s, double* out);
vl_status vl_state_time(const vl_state* s, double* out);
vl_status vl_state_save(const vl_state* s, const char* path);
vl_status vl_state_load(const char* path, vl_state** out);

/* Exact evolution under the harmonic trap `freqs` (widths must match). */
vl_status vl_state_evolve_linear(const vl_state* s, const double freqs[3],
                                 double t, vl_state** out);

/* Max |i d/dt psi - H psi| over `count` probe points (3 doubles each). */
vl_status vl_state_linear_residual(const vl_state* s, const double freqs[3],
                                   const double* probes_xyz, size_t count,
                                   double* out);

/* ---- global moments ---------------------------------------------------- */
vl_status vl_moments_of_state(const vl_state* s, vl_moments* out);
vl_status vl_moments_of_lifted(const vl_lifted* ls, vl_moments* out);
vl_status vl_moments_of_grid(const vl_grid* g, vl_moments* out);
vl_status vl_moments_evolve(const vl_moments* m0, const vl_trap* trap, double t,
                            vl_moments* out);
vl_status vl_moments_write_csv(const vl_moments* traj, size_t count,
                               const vl_trap* trap, const char* path);

/* ---- lifted (interacting) solutions ------------------------------------ */
/* Builds psi(.,t) = exp(i f + i a.r) phi(. - b, t) from the t=0 linear state
 * phi0; phi0's widths must equal the trap's modified frequencies and its
 * squared norm must equal the trap norm. */
vl_status vl_lift(const vl_state* phi0, const vl_trap* trap, double t,
                  vl_lifted** out);
void vl_lifted_destroy(vl_lifted* ls);
vl_status vl_lifted_evaluate(const vl_lifted* ls, const double r[3],
                             double out_re_im[2]);
vl_status vl_lifted_abf(const vl_lifted* ls, double out_a[3], double out_b[3],
                        double* out_f);
vl_status vl_lifted_residual(const vl_lifted* ls, const double* probes_xyz,
                             size_t count, double* out);
/* CSV of a(t), b(t), f(t) for the lift of phi0 over [t0, t1]. */
vl_status vl_lift_write_csv(const vl_state* phi0, const vl_trap* trap,
                            double t0, double t1, int samples,
                            const char* path);

/* ---- vortex kinematics -------------------------------------------------- */
/* In-plane zero of the displaced single-vortex solution; *out_unbounded is
 * set (and x,y left at 0) when |cos((wx-wy)t)| < 1e-12. */
vl_status vl_single_vortex_zero(double a_disp, const double omega[3], double t,
                                double* out_x, double* out_y, double* out_det,
                                int* out_unbounded);

/* Phase-winding zero scan of an axis-aligned plane window on an n x n grid.
 * Writes up to `capacity` zeros as (pos x,y,z, charge) into out_zeros (4
 * doubles per zero). */
vl_status vl_state_find_zeros(const vl_state* s, int plane_axis,
                              double plane_offset, const double window[4],
                              int n, double* out_zeros, size_t capacity,
                              size_t* out_count);
vl_status vl_lifted_find_zeros(const vl_lifted* ls, int plane_axis,
                               double plane_offset, const double window[4],
                               int n, double* out_zeros, size_t capacity,
                               size_t* out_count);

/* Vortex-line extraction from a sampled field. Faces whose amplitudes all
 * fall below noise_floor x the grid peak are ignored (1e-12 is a good
 * default for well-resolved fields). */
vl_status vl_grid_trace_lines(const vl_grid* g, double noise_floor,
                              vl_polylines** out);
void vl_polylines_destroy(vl_polylines* pl);
vl_status vl_polylines_count(const vl_polylines* pl, size_t* out);
vl_status vl_polylines_ambiguous_cells(const vl_polylines* pl, int* out);
vl_status vl_polylines_line_info(const vl_polylines* pl, size_t line,
                                 size_t* out_points, int* out_charge,
                                 int* out_closed);
vl_status vl_polylines_line_points(const vl_polylines* pl, size_t line,
                                   double* out_xyz, size_t capacity);
vl_status vl_polylines_write_csv(const vl_polylines* pl, const char* path);
vl_status vl_polylines_write_json(const vl_polylines* pl, const char* path);
/* Endpoint/boundary pairing signature, e.g. "x-:x+|y-:y+"; changes across a
 * reconnection. */
vl_status vl_polylines_signature(const vl_polylines* pl, char* buf,
                                 size_t bufsize);

/* ---- sampled grids and the split-step oracle ---------------------------- */
vl_status vl_grid_sample_state(const vl_state* s, const int n[3],
                               const double box[3], vl_grid** out);
vl_status vl_grid_sample_lifted(const vl_lifted* ls, const int n[3],
                                const double box[3], vl_grid** out);
void vl_grid_destroy(vl_grid* g);
vl_status vl_grid_norm_sq(const vl_grid* g, double* out);
vl_status vl_grid_time(const vl_grid* g, double* out);
vl_status vl_grid_l2_distance(const vl_grid* a, const vl_grid* b, double* out);
vl_status vl_grid_save(const vl_grid* g, const char* path);
vl_status vl_grid_load(const char* path, vl_grid** out);

/* Advances the grid in place by n_steps split steps of the harmonic-force
 * equation (dt may be negative for backward evolution). */
vl_status vl_grid_step_harmonic(vl_grid* g, const vl_trap* trap, double dt,
                                int n_steps);
/* Same for the cubic contact equation in a symmetric trap. */
vl_status vl_grid_step_contact(vl_grid* g, double trap_omega,
                               const vl_gp_params* gp, double dt, int n_steps);

/* ---- contact-nonlinearity estimates ------------------------------------- */
vl_status vl_gp_center_ratio(const vl_gp_params* gp, double* out);
vl_status vl_gp_xi(const vl_gp_params* gp, double* out);
vl_status vl_gp_t0(const vl_gp_params* gp, double* out);
/* Contact/kinetic ratio at a point of an analytic state (modulus and phase
 * as re, im). */
vl_status vl_gp_ratio_at(const vl_state* s, const double pt[3], double a_scatt,
                         double out_re_im[2]);
vl_status vl_gp_regime_report(const vl_gp_params* gp, double trap_period,
                              double ratio_threshold, double timescale_factor,
                              vl_regime_report* out);
vl_status vl_gp_regime_write(const vl_regime_report* rep, const char* path);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* VORTEXLIFT_H */

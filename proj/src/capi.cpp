#include "vortexlift.h"

#include <cstring>
#include <string>
#include <vector>

#include "analytic_state.hpp"
#include "errors.hpp"
#include "gp_analysis.hpp"
#include "grid.hpp"
#include "linear_evolution.hpp"
#include "moment_dynamics.hpp"
#include "nonlinear_lift.hpp"
#include "steppers.hpp"
#include "vortex_tracker.hpp"

using namespace vlift;

struct vl_trap {
  TrapConfig impl;
};
struct vl_state {
  HermiteGaussianState impl;
};
struct vl_lifted {
  LiftedState impl;
};
struct vl_grid {
  GridState impl;
};
struct vl_polylines {
  TraceResult impl;
  GridSpec spec;
};

namespace {

thread_local std::string g_last_error;

template <class Fn>
vl_status guarded(Fn&& fn) {
  try {
    fn();
    g_last_error.clear();
    return VL_OK;
  } catch (const FrequencyCollapseError& e) {
    g_last_error = e.what();
    return VL_ERR_FREQUENCY_COLLAPSE;
  } catch (const BoxTooSmallError& e) {
    g_last_error = e.what();
    return VL_ERR_BOX_TOO_SMALL;
  } catch (const InvalidArgument& e) {
    g_last_error = e.what();
    return VL_ERR_INVALID_ARGUMENT;
  } catch (const NumericError& e) {
    g_last_error = e.what();
    return VL_ERR_NUMERIC;
  } catch (const IoError& e) {
    g_last_error = e.what();
    return VL_ERR_IO;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return VL_ERR_INTERNAL;
  }
}

Vec3 to_vec(const double v[3]) { return {v[0], v[1], v[2]}; }

vl_moments to_c(const GlobalMoments& m) {
  vl_moments out;
  out.n = m.n;
  out.time = m.time;
  for (int a = 0; a < 3; ++a) {
    out.r[a] = m.r[a];
    out.p[a] = m.p[a];
    out.u[a] = m.u[a];
    out.t_kin[a] = m.t_kin[a];
    out.w[a] = m.w[a];
  }
  return out;
}

GlobalMoments from_c(const vl_moments& m) {
  GlobalMoments out;
  out.n = m.n;
  out.time = m.time;
  for (int a = 0; a < 3; ++a) {
    out.r[a] = m.r[a];
    out.p[a] = m.p[a];
    out.u[a] = m.u[a];
    out.t_kin[a] = m.t_kin[a];
    out.w[a] = m.w[a];
  }
  return out;
}

GpParams from_c(const vl_gp_params& p) {
  return GpParams(p.n_atoms, p.a_scatt, p.box_l, p.d_sep, p.mass, p.hbar);
}

std::vector<Vec3> probes_from(const double* xyz, size_t count) {
  std::vector<Vec3> probes(count);
  for (size_t i = 0; i < count; ++i) {
    probes[i] = {xyz[3 * i], xyz[3 * i + 1], xyz[3 * i + 2]};
  }
  return probes;
}

vl_status require(bool cond, const char* msg) {
  if (cond) return VL_OK;
  g_last_error = msg;
  return VL_ERR_INVALID_ARGUMENT;
}

}  // namespace

extern "C" {

const char* vl_last_error(void) { return g_last_error.c_str(); }

/* ---- trap ---- */

vl_status vl_trap_create(const double omega_tilde[3], double omega_sq_int,
                         double norm, vl_trap** out) {
  if (require(omega_tilde && out, "null pointer")) return VL_ERR_INVALID_ARGUMENT;
  return guarded([&] {
    *out = new vl_trap{TrapConfig(to_vec(omega_tilde), omega_sq_int, norm)};
  });
}

void vl_trap_destroy(vl_trap* trap) { delete trap; }

vl_status vl_trap_modified_frequencies(const vl_trap* trap,
                                       double out_omega[3]) {
  if (require(trap && out_omega, "null pointer")) return VL_ERR_INVALID_ARGUMENT;
  return guarded([&] {
    Vec3 w = trap->impl.modified_frequencies();
    for (int a = 0; a < 3; ++a) out_omega[a] = w[a];
  });
}

/* ---- states ---- */

vl_status vl_state_ground(const double widths[3], vl_state** out) {
  if (require(widths && out, "null pointer")) return VL_ERR_INVALID_ARGUMENT;
  return guarded([&] { *out = new vl_state{make_ground_state(to_vec(widths))}; });
}

vl_status vl_state_single_vortex(double a_disp, const double widths[3],
                                 vl_state** out) {
  if (require(widths && out, "null pointer")) return VL_ERR_INVALID_ARGUMENT;
  return guarded(
      [&] { *out = new vl_state{make_single_vortex(a_disp, to_vec(widths))}; });
}

vl_status vl_state_two_perpendicular_vortices(double d, double box_l,
                                              double n_atoms, vl_state** out) {
  if (require(out != nullptr, "null pointer")) return VL_ERR_INVALID_ARGUMENT;
  return guarded([&] {
    *out = new vl_state{make_two_perpendicular_vortices(d, box_l, n_atoms)};
  });
}

void vl_state_destroy(vl_state* s) { delete s; }

vl_status vl_state_evaluate(const vl_state* s, const double r[3],
                            double out_re_im[2]) {
  if (require(s && r && out_re_im, "null pointer")) return VL_ERR_INVALID_ARGUMENT;
  return guarded([&] {
    Complex v = evaluate(s->impl, to_vec(r));
    out_re_im[0] = v.real();
    out_re_im[1] = v.imag();
  });
}

vl_status vl_state_norm_sq(const vl_state* s, double* out) {
  if (require(s && out, "null pointer")) return VL_ERR_INVALID_ARGUMENT;
  return guarded([&] { *out = norm_sq(s->impl); });
}

vl_status vl_state_time(const vl_state* s, double* out) {
  if (require(s && out, "null pointer")) return VL_ERR_INVALID_ARGUMENT;
  return guarded([&] { *out = s->impl.time; });
}

vl_status vl_state_save(const vl_state* s, const char* path) {
  if (require(s && path, "null pointer")) return VL_ERR_INVALID_ARGUMENT;
  return guarded([&] { save_state(s->impl, path); });
}

vl_status vl_state_load(const char* path, vl_state** out) {
  if (require(path && out, "null pointer")) return VL_ERR_INVALID_ARGUMENT;
  return guarded([&] { *out = new vl_state{load_state(path)}; });
}

vl_status vl_state_evolve_linear(const vl_state* s, const double freqs[3],
                                 double t, vl_state** out) {
  if (require(s && freqs && out, "null pointer")) return VL_ERR_INVALID_ARGUMENT;
  return guarded(
      [&] { *out = new vl_state{evolve_linear(s->impl, to_vec(freqs), t)}; });
}

vl_status vl_state_linear_residual(const vl_state* s, const double freqs[3],
                                   const double* probes_xyz, size_t count,
                                   double* out) {
  if (require(s && freqs && probes_xyz && out, "null pointer")) {
    return VL_ERR_INVALID_ARGUMENT;
  }
  return guarded([&] {
    auto probes = probes_from(probes_xyz, count);
    *out = residual_linear(s->impl, to_vec(freqs), probes);
  });
}

/* ---- moments ---- */

vl_status vl_moments_of_state(const vl_state* s, vl_moments* out) {
  if (require(s && out, "null pointer")) return VL_ERR_INVALID_ARGUMENT;
  return guarded([&] { *out = to_c(compute_moments(s->impl)); });
}

vl_status vl_moments_of_lifted(const vl_lifted* ls, vl_moments* out) {
  if (require(ls && out, "null pointer")) return VL_ERR_INVALID_ARGUMENT;
  return guarded([&] { *out = to_c(compute_moments(ls->impl)); });
}

vl_status vl_moments_of_grid(const vl_grid* g, vl_moments* out) {
  if (require(g && out, "null pointer")) return VL_ERR_INVALID_ARGUMENT;
  return guarded([&] { *out = to_c(grid_moments(g->impl)); });
}

vl_status vl_moments_evolve(const vl_moments* m0, const vl_trap* trap, double t,
                            vl_moments* out) {
  if (require(m0 && trap && out, "null pointer")) return VL_ERR_INVALID_ARGUMENT;
  return guarded(
      [&] { *out = to_c(evolve_moments(from_c(*m0), trap->impl, t)); });
}

vl_status vl_moments_write_csv(const vl_moments* traj, size_t count,
                               const vl_trap* trap, const char* path) {
  if (require(traj && trap && path, "null pointer")) return VL_ERR_INVALID_ARGUMENT;
  return guarded([&] {
    std::vector<GlobalMoments> ms(count);
    for (size_t i = 0; i < count; ++i) ms[i] = from_c(traj[i]);
    write_moments_csv(ms, trap->impl, path);
  });
}

/* ---- lift ---- */

vl_status vl_lift(const vl_state* phi0, const vl_trap* trap, double t,
                  vl_lifted** out) {
  if (require(phi0 && trap && out, "null pointer")) return VL_ERR_INVALID_ARGUMENT;
  return guarded([&] { *out = new vl_lifted{lift(phi0->impl, trap->impl, t)}; });
}

void vl_lifted_destroy(vl_lifted* ls) { delete ls; }

vl_status vl_lifted_evaluate(const vl_lifted* ls, const double r[3],
                             double out_re_im[2]) {
  if (require(ls && r && out_re_im, "null pointer")) return VL_ERR_INVALID_ARGUMENT;
  return guarded([&] {
    Complex v = evaluate(ls->impl, to_vec(r));
    out_re_im[0] = v.real();
    out_re_im[1] = v.imag();
  });
}

vl_status vl_lifted_abf(const vl_lifted* ls, double out_a[3], double out_b[3],
                        double* out_f) {
  if (require(ls && out_a && out_b && out_f, "null pointer")) {
    return VL_ERR_INVALID_ARGUMENT;
  }
  return guarded([&] {
    for (int i = 0; i < 3; ++i) {
      out_a[i] = ls->impl.a[i];
      out_b[i] = ls->impl.b[i];
    }
    *out_f = ls->impl.f;
  });
}

vl_status vl_lifted_residual(const vl_lifted* ls, const double* probes_xyz,
                             size_t count, double* out) {
  if (require(ls && probes_xyz && out, "null pointer")) {
    return VL_ERR_INVALID_ARGUMENT;
  }
  return guarded([&] {
    auto probes = probes_from(probes_xyz, count);
    *out = lifted_residual(ls->impl, probes);
  });
}

vl_status vl_lift_write_csv(const vl_state* phi0, const vl_trap* trap,
                            double t0, double t1, int samples,
                            const char* path) {
  if (require(phi0 && trap && path, "null pointer")) return VL_ERR_INVALID_ARGUMENT;
  return guarded([&] {
    GlobalMoments m0 = compute_moments(phi0->impl);
    write_lift_csv(m0, trap->impl, t0, t1, samples, path);
  });
}

/* ---- vortex kinematics ---- */

vl_status vl_single_vortex_zero(double a_disp, const double omega[3], double t,
                                double* out_x, double* out_y, double* out_det,
                                int* out_unbounded) {
  if (require(omega && out_x && out_y && out_det && out_unbounded,
              "null pointer")) {
    return VL_ERR_INVALID_ARGUMENT;
  }
  return guarded([&] {
    VortexTrajectoryPoint p = single_vortex_trajectory(a_disp, to_vec(omega), t);
    *out_x = p.x;
    *out_y = p.y;
    *out_det = p.det;
    *out_unbounded = p.unbounded ? 1 : 0;
  });
}

namespace {

vl_status find_zeros_impl(const FieldSampler& sampler, int plane_axis,
                          double plane_offset, const double window[4], int n,
                          double* out_zeros, size_t capacity,
                          size_t* out_count) {
  return guarded([&] {
    ZeroSearchResult res = find_zeros_in_plane(
        sampler, PlaneSpec{plane_axis, plane_offset},
        {window[0], window[1], window[2], window[3]}, n);
    *out_count = res.zeros.size();
    size_t n_write = std::min(capacity, res.zeros.size());
    for (size_t i = 0; i < n_write; ++i) {
      out_zeros[4 * i] = res.zeros[i].position[0];
      out_zeros[4 * i + 1] = res.zeros[i].position[1];
      out_zeros[4 * i + 2] = res.zeros[i].position[2];
      out_zeros[4 * i + 3] = res.zeros[i].charge;
    }
  });
}

}  // namespace

vl_status vl_state_find_zeros(const vl_state* s, int plane_axis,
                              double plane_offset, const double window[4],
                              int n, double* out_zeros, size_t capacity,
                              size_t* out_count) {
  if (require(s && window && out_zeros && out_count, "null pointer")) {
    return VL_ERR_INVALID_ARGUMENT;
  }
  return find_zeros_impl(sampler_of(s->impl), plane_axis, plane_offset, window,
                         n, out_zeros, capacity, out_count);
}

vl_status vl_lifted_find_zeros(const vl_lifted* ls, int plane_axis,
                               double plane_offset, const double window[4],
                               int n, double* out_zeros, size_t capacity,
                               size_t* out_count) {
  if (require(ls && window && out_zeros && out_count, "null pointer")) {
    return VL_ERR_INVALID_ARGUMENT;
  }
  return find_zeros_impl(sampler_of(ls->impl), plane_axis, plane_offset, window,
                         n, out_zeros, capacity, out_count);
}

vl_status vl_grid_trace_lines(const vl_grid* g, double noise_floor,
                              vl_polylines** out) {
  if (require(g && out, "null pointer")) return VL_ERR_INVALID_ARGUMENT;
  return guarded([&] {
    *out = new vl_polylines{trace_vortex_lines(g->impl, noise_floor),
                            g->impl.spec};
  });
}

void vl_polylines_destroy(vl_polylines* pl) { delete pl; }

vl_status vl_polylines_count(const vl_polylines* pl, size_t* out) {
  if (require(pl && out, "null pointer")) return VL_ERR_INVALID_ARGUMENT;
  *out = pl->impl.lines.size();
  return VL_OK;
}

vl_status vl_polylines_ambiguous_cells(const vl_polylines* pl, int* out) {
  if (require(pl && out, "null pointer")) return VL_ERR_INVALID_ARGUMENT;
  *out = pl->impl.ambiguous_cells;
  return VL_OK;
}

vl_status vl_polylines_line_info(const vl_polylines* pl, size_t line,
                                 size_t* out_points, int* out_charge,
                                 int* out_closed) {
  if (require(pl && out_points && out_charge && out_closed, "null pointer")) {
    return VL_ERR_INVALID_ARGUMENT;
  }
  if (require(line < pl->impl.lines.size(), "line index out of range")) {
    return VL_ERR_INVALID_ARGUMENT;
  }
  const VortexPolyline& l = pl->impl.lines[line];
  *out_points = l.points.size();
  *out_charge = l.charge;
  *out_closed = l.closed ? 1 : 0;
  return VL_OK;
}

vl_status vl_polylines_line_points(const vl_polylines* pl, size_t line,
                                   double* out_xyz, size_t capacity) {
  if (require(pl && out_xyz, "null pointer")) return VL_ERR_INVALID_ARGUMENT;
  if (require(line < pl->impl.lines.size(), "line index out of range")) {
    return VL_ERR_INVALID_ARGUMENT;
  }
  const VortexPolyline& l = pl->impl.lines[line];
  size_t n = std::min(capacity, l.points.size());
  for (size_t i = 0; i < n; ++i) {
    out_xyz[3 * i] = l.points[i][0];
    out_xyz[3 * i + 1] = l.points[i][1];
    out_xyz[3 * i + 2] = l.points[i][2];
  }
  return VL_OK;
}

vl_status vl_polylines_write_csv(const vl_polylines* pl, const char* path) {
  if (require(pl && path, "null pointer")) return VL_ERR_INVALID_ARGUMENT;
  return guarded([&] { write_polylines_csv(pl->impl, path); });
}

vl_status vl_polylines_write_json(const vl_polylines* pl, const char* path) {
  if (require(pl && path, "null pointer")) return VL_ERR_INVALID_ARGUMENT;
  return guarded([&] { write_polylines_json(pl->impl, path); });
}

vl_status vl_polylines_signature(const vl_polylines* pl, char* buf,
                                 size_t bufsize) {
  if (require(pl && buf && bufsize > 0, "null pointer")) {
    return VL_ERR_INVALID_ARGUMENT;
  }
  return guarded([&] {
    std::string sig = boundary_signature(pl->impl, pl->spec);
    std::snprintf(buf, bufsize, "%s", sig.c_str());
  });
}

/* ---- grids / oracle ---- */

namespace {

GridSpec spec_from(const int n[3], const double box[3]) {
  return GridSpec({n[0], n[1], n[2]}, {box[0], box[1], box[2]});
}

}  // namespace

vl_status vl_grid_sample_state(const vl_state* s, const int n[3],
                               const double box[3], vl_grid** out) {
  if (require(s && n && box && out, "null pointer")) return VL_ERR_INVALID_ARGUMENT;
  return guarded([&] { *out = new vl_grid{sample(s->impl, spec_from(n, box))}; });
}

vl_status vl_grid_sample_lifted(const vl_lifted* ls, const int n[3],
                                const double box[3], vl_grid** out) {
  if (require(ls && n && box && out, "null pointer")) return VL_ERR_INVALID_ARGUMENT;
  return guarded(
      [&] { *out = new vl_grid{sample(ls->impl, spec_from(n, box))}; });
}

void vl_grid_destroy(vl_grid* g) { delete g; }

vl_status vl_grid_norm_sq(const vl_grid* g, double* out) {
  if (require(g && out, "null pointer")) return VL_ERR_INVALID_ARGUMENT;
  return guarded([&] { *out = grid_norm_sq(g->impl); });
}

vl_status vl_grid_time(const vl_grid* g, double* out) {
  if (require(g && out, "null pointer")) return VL_ERR_INVALID_ARGUMENT;
  *out = g->impl.time;
  return VL_OK;
}

vl_status vl_grid_l2_distance(const vl_grid* a, const vl_grid* b, double* out) {
  if (require(a && b && out, "null pointer")) return VL_ERR_INVALID_ARGUMENT;
  return guarded([&] { *out = l2_distance(a->impl, b->impl); });
}

vl_status vl_grid_save(const vl_grid* g, const char* path) {
  if (require(g && path, "null pointer")) return VL_ERR_INVALID_ARGUMENT;
  return guarded([&] { save_grid(g->impl, path); });
}

vl_status vl_grid_load(const char* path, vl_grid** out) {
  if (require(path && out, "null pointer")) return VL_ERR_INVALID_ARGUMENT;
  return guarded([&] { *out = new vl_grid{load_grid(path)}; });
}

vl_status vl_grid_step_harmonic(vl_grid* g, const vl_trap* trap, double dt,
                                int n_steps) {
  if (require(g && trap, "null pointer")) return VL_ERR_INVALID_ARGUMENT;
  return guarded([&] {
    HarmonicOracle oracle(g->impl.spec, trap->impl);
    for (int s = 0; s < n_steps; ++s) oracle.step(g->impl, dt);
  });
}

vl_status vl_grid_step_contact(vl_grid* g, double trap_omega,
                               const vl_gp_params* gp, double dt, int n_steps) {
  if (require(g && gp, "null pointer")) return VL_ERR_INVALID_ARGUMENT;
  return guarded([&] {
    GpParams params = from_c(*gp);
    ContactOracle oracle(g->impl.spec, trap_omega, params.a_scatt, params.mass,
                         params.hbar);
    for (int s = 0; s < n_steps; ++s) oracle.step(g->impl, dt);
  });
}

/* ---- contact estimates ---- */

vl_status vl_gp_center_ratio(const vl_gp_params* gp, double* out) {
  if (require(gp && out, "null pointer")) return VL_ERR_INVALID_ARGUMENT;
  return guarded([&] { *out = center_ratio(from_c(*gp)); });
}

vl_status vl_gp_xi(const vl_gp_params* gp, double* out) {
  if (require(gp && out, "null pointer")) return VL_ERR_INVALID_ARGUMENT;
  return guarded([&] { *out = xi_estimate(from_c(*gp)); });
}

vl_status vl_gp_t0(const vl_gp_params* gp, double* out) {
  if (require(gp && out, "null pointer")) return VL_ERR_INVALID_ARGUMENT;
  return guarded([&] { *out = vortex_timescale(from_c(*gp)); });
}

vl_status vl_gp_ratio_at(const vl_state* s, const double pt[3], double a_scatt,
                         double out_re_im[2]) {
  if (require(s && pt && out_re_im, "null pointer")) return VL_ERR_INVALID_ARGUMENT;
  return guarded([&] {
    Complex v = ratio_field(s->impl, to_vec(pt), a_scatt);
    out_re_im[0] = v.real();
    out_re_im[1] = v.imag();
  });
}

vl_status vl_gp_regime_report(const vl_gp_params* gp, double trap_period,
                              double ratio_threshold, double timescale_factor,
                              vl_regime_report* out) {
  if (require(gp && out, "null pointer")) return VL_ERR_INVALID_ARGUMENT;
  return guarded([&] {
    RegimeReport rep =
        regime_report(from_c(*gp), trap_period, ratio_threshold,
                      timescale_factor);
    out->xi = rep.xi;
    out->center_ratio = rep.center_ratio_value;
    out->t0_seconds = rep.t0_seconds;
    out->trap_period_seconds = rep.trap_period_seconds;
    out->ratio_threshold = rep.ratio_threshold;
    out->timescale_factor = rep.timescale_factor;
    out->nonlinearity_negligible = rep.nonlinearity_negligible ? 1 : 0;
    out->trap_negligible = rep.trap_negligible ? 1 : 0;
    out->separation_warning = rep.separation_warning ? 1 : 0;
    out->xi_quoted = rep.xi_quoted;
    out->t0_quoted_seconds = rep.t0_quoted_seconds;
  });
}

vl_status vl_gp_regime_write(const vl_regime_report* rep, const char* path) {
  if (require(rep && path, "null pointer")) return VL_ERR_INVALID_ARGUMENT;
  return guarded([&] {
    RegimeReport r;
    r.xi = rep->xi;
    r.center_ratio_value = rep->center_ratio;
    r.t0_seconds = rep->t0_seconds;
    r.trap_period_seconds = rep->trap_period_seconds;
    r.ratio_threshold = rep->ratio_threshold;
    r.timescale_factor = rep->timescale_factor;
    r.nonlinearity_negligible = rep->nonlinearity_negligible != 0;
    r.trap_negligible = rep->trap_negligible != 0;
    r.separation_warning = rep->separation_warning != 0;
    r.xi_quoted = rep->xi_quoted;
    r.t0_quoted_seconds = rep->t0_quoted_seconds;
    write_regime_report(r, path);
  });
}

} /* extern "C" */

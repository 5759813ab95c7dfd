#pragma once

#include <span>
#include <string>

#include "analytic_state.hpp"
#include "moment_dynamics.hpp"

namespace vlift {

// omega_j = sqrt(tilde_omega_j^2 - N * Omega^2); throws FrequencyCollapseError
// when a radicand is non-positive.
Vec3 modified_frequencies(const TrapConfig& cfg);

// Rigid displacement b(t) of the lifted solution (closed form, per axis):
//   b_j = (1/N)[R_j(0)(cos wt_j t - cos w_j t) + P_j(0)(sin wt_j t / wt_j
//                                                       - sin w_j t / w_j)]
Vec3 shift_b(const GlobalMoments& m0, const TrapConfig& cfg, double t);

// Phase-gradient vector a(t) = db/dt (closed form, per axis).
Vec3 phase_a(const GlobalMoments& m0, const TrapConfig& cfg, double t);

// Right-hand side of the global-phase equation,
//   df/dt = 1/2 sum_j w_j^2 b_j^2 - 1/2 |a|^2 + Omega^2 (U(t) + |R(t)|^2/2N),
// with U and R advanced by the closed-form moment solutions.
double phase_f_rate(const GlobalMoments& m0, const TrapConfig& cfg, double t);

// Global phase f(t), adaptive quadrature of phase_f_rate to absolute
// tolerance `tol`.
double phase_f(const GlobalMoments& m0, const TrapConfig& cfg, double t,
               double tol = 1e-10);

// Solution of the interacting equation assembled from a linear solution:
//   psi(r, t) = exp(i f + i a.r) phi(r - b, t).
struct LiftedState {
  HermiteGaussianState phi;  // linear solution evolved to `time`
  Vec3 a{};
  Vec3 b{};
  double f = 0.0;
  GlobalMoments m0;          // initial moments driving the closed forms
  TrapConfig cfg;
  double time = 0.0;
};

// Builds the lifted solution at time t from the t=0 linear state. Requires
// phi0.time == 0, widths equal to the modified frequencies, and
// norm_sq(phi0) == cfg.norm (1e-8 relative).
LiftedState lift(const HermiteGaussianState& phi0, const TrapConfig& cfg,
                 double t, double f_tol = 1e-10);

Complex evaluate(const LiftedState& ls, const Vec3& r);
std::array<Complex, 3> gradient(const LiftedState& ls, const Vec3& r);
double norm_sq(const LiftedState& ls);

// Moments of the lifted solution: R and P gain N*b and N*a; the
// center-subtracted U, T, W are shift/boost invariant.
GlobalMoments compute_moments(const LiftedState& ls);

// Max modulus of the interacting-equation residual at the probe points,
// using analytic derivatives of the lifted form and the closed-form moment
// trajectories.
double lifted_residual(const LiftedState& ls, std::span<const Vec3> probes);

// CSV of the lift functions: time + ax,ay,az,bx,by,bz,f.
void write_lift_csv(const GlobalMoments& m0, const TrapConfig& cfg, double t0,
                    double t1, int samples, const std::string& path);

}  // namespace vlift

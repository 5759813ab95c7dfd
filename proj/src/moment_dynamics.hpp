#pragma once

#include <span>
#include <string>
#include <vector>

#include "analytic_state.hpp"

namespace vlift {

// Global quantities of a wavefunction at one instant: norm, center of mass,
// total momentum, and the center-subtracted quadratic moments per axis.
struct GlobalMoments {
  double n = 0.0;    // total squared norm
  Vec3 r{};          // integral of x_j |psi|^2
  Vec3 p{};          // -i integral of psi* d_j psi
  Vec3 u{};          // 1/2 <x_j^2> - R_j^2 / 2N
  Vec3 t_kin{};      // 1/2 <|d_j psi|^2> - P_j^2 / 2N
  Vec3 w{};          // Im <x_j psi, d_j psi>/2 - R_j P_j / 2N
  double time = 0.0;
};

GlobalMoments compute_moments(const HermiteGaussianState& s);

// Closed-form advance by duration t: R, P rotate at the trap frequencies,
// U, T, W at twice the modified frequencies; N is conserved.
GlobalMoments evolve_moments(const GlobalMoments& m0, const TrapConfig& cfg,
                             double t);

// Max |central-difference d/dt - closed-form right-hand side| per equation
// family over a uniformly sampled trajectory (endpoints excluded).
struct MomentOdeResiduals {
  double n = 0.0, r = 0.0, p = 0.0, u = 0.0, t_kin = 0.0, w = 0.0;
  double max() const;
};

MomentOdeResiduals moment_ode_residual(std::span<const GlobalMoments> traj,
                                       const TrapConfig& cfg);

// CSV: time + 19 columns (N, R, P, U, T, W per axis, and the per-axis
// conserved combination E_j = T_jj + omega_j^2 U_jj).
void write_moments_csv(std::span<const GlobalMoments> traj,
                       const TrapConfig& cfg, const std::string& path);

}  // namespace vlift

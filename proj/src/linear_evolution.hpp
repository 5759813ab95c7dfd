#pragma once

#include <span>

#include "analytic_state.hpp"

namespace vlift {

// Exact evolution by the harmonic Hamiltonian with frequencies `trap_freqs`:
// each mode picks up exp(-i sum_j (n_j + 1/2) omega_j t). Requires the state's
// Gaussian widths to equal the trap frequencies (eigenbasis exactness); t is a
// duration and may be negative.
HermiteGaussianState evolve_linear(const HermiteGaussianState& s0,
                                   const Vec3& trap_freqs, double t);

// Max |i d/dt phi - H phi| over the probe points, with the time derivative
// from the eigenphase rule of `trap_freqs` and H phi from the Hermite ladder
// identities on the state's own widths. Near zero iff the state actually
// solves the trap's equation; O(1) for a mismatched trap.
double residual_linear(const HermiteGaussianState& s, const Vec3& trap_freqs,
                       std::span<const Vec3> probes);

}  // namespace vlift

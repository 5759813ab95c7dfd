#pragma once

#include <functional>
#include <span>

#include "gp_analysis.hpp"
#include "grid.hpp"
#include "spectral.hpp"

namespace vlift {

// Split-step integrator (symmetric potential-kinetic-potential) for the
// harmonic-force nonlinear equation. The mean-field term is applied through
// its exact moment reduction: the trap quadratic plus a density-dependent
// linear-plus-constant potential, with N, R, U measured from the current
// field before each potential half-step.
class HarmonicOracle {
 public:
  HarmonicOracle(const GridSpec& spec, const TrapConfig& cfg);
  void step(GridState& g, double dt) const;

 private:
  void potential_half_step(GridState& g, double dt) const;
  GridSpec spec_;
  TrapConfig cfg_;
  SpectralTransform fft_;
  mutable std::vector<Complex> kinetic_;
  mutable double kinetic_dt_ = 0.0;
};

// Split-step integrator for the cubic contact equation in a symmetric trap:
//   i hbar d/dt psi = (-hbar^2/2m lap + m w^2 r^2/2 + 4 pi hbar^2 a/m
//   |psi|^2) psi.
// Natural-unit mode: hbar = mass = 1.
class ContactOracle {
 public:
  ContactOracle(const GridSpec& spec, double trap_omega, double a_scatt,
                double mass = 1.0, double hbar = 1.0);
  void step(GridState& g, double dt) const;

 private:
  GridSpec spec_;
  double trap_omega_, a_scatt_, mass_, hbar_;
  SpectralTransform fft_;
  mutable std::vector<Complex> kinetic_;
  mutable double kinetic_dt_ = 0.0;
};

// One-shot convenience wrappers.
GridState step_harmonic_nlse(const GridState& g, const TrapConfig& cfg,
                             double dt);
GridState step_gp(const GridState& g, double trap_omega, const GpParams& gp,
                  double dt);

struct ObserverEntry {
  int stride = 1;
  std::function<void(const GridState&, int step)> fn;
};

// Repeated stepping with strided observers (also called at step 0 and at the
// final step). Deterministic given its inputs.
GridState evolve(GridState g, const std::function<void(GridState&, double)>& stepper,
                 double dt, int n_steps, std::span<const ObserverEntry> observers = {});

}  // namespace vlift

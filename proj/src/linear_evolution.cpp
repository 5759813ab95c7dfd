#include "linear_evolution.hpp"

#include <cmath>

#include "errors.hpp"

namespace vlift {

namespace {

void check_widths_match(const Vec3& widths, const Vec3& freqs) {
  for (int a = 0; a < 3; ++a) {
    double diff = std::abs(widths[a] - freqs[a]);
    if (diff > 1e-12 * std::max(widths[a], freqs[a])) {
      throw InvalidArgument(
          "state widths must equal the trap frequencies for eigenbasis "
          "evolution");
    }
  }
}

double mode_energy(const Index3& n, const Vec3& freqs) {
  return (n[0] + 0.5) * freqs[0] + (n[1] + 0.5) * freqs[1] +
         (n[2] + 0.5) * freqs[2];
}

}  // namespace

HermiteGaussianState evolve_linear(const HermiteGaussianState& s0,
                                   const Vec3& trap_freqs, double t) {
  check_widths_match(s0.widths, trap_freqs);
  HermiteGaussianState s = s0;
  for (auto& [n, c] : s.coeffs) {
    c *= std::exp(Complex(0.0, -mode_energy(n, trap_freqs) * t));
  }
  s.time = s0.time + t;
  return s;
}

double residual_linear(const HermiteGaussianState& s, const Vec3& trap_freqs,
                       std::span<const Vec3> probes) {
  // i d/dt phi: eigenphase rule, coefficient-wise E_n c_n.
  HermiteGaussianState dt_part = s;
  for (auto& [n, c] : dt_part.coeffs) c *= mode_energy(n, trap_freqs);

  // H phi = -1/2 laplacian + 1/2 sum_j omega_j^2 x_j^2, via ladder operators
  // on the state's own widths.
  CoeffMap h;
  for (int a = 0; a < 3; ++a) {
    CoeffMap d2 = apply_derivative(apply_derivative(s.coeffs, a, s.widths[a]),
                                   a, s.widths[a]);
    for (const auto& [n, c] : d2) h[n] -= 0.5 * c;
    CoeffMap x2 = apply_position(apply_position(s.coeffs, a, s.widths[a]), a,
                                 s.widths[a]);
    double w2 = trap_freqs[a] * trap_freqs[a];
    for (const auto& [n, c] : x2) h[n] += 0.5 * w2 * c;
  }
  HermiteGaussianState h_part{s.widths, std::move(h), s.time};

  double worst = 0.0;
  for (const Vec3& r : probes) {
    worst = std::max(worst,
                     std::abs(evaluate(dt_part, r) - evaluate(h_part, r)));
  }
  return worst;
}

}  // namespace vlift

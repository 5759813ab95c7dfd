#pragma once

#include <string>

#include "grid.hpp"

namespace vlift {

// Physical parameters of the contact-interaction analysis. SI inputs; set
// hbar = mass = 1 (and lengths in trap units) for natural-unit work.
struct GpParams {
  double n_atoms;      // atom number N
  double a_scatt;      // scattering length
  double box_l;        // condensate linear dimension L
  double d_sep;        // vortex separation d
  double mass = 1.0;
  double hbar = 1.0;

  GpParams(double n_atoms_, double a_scatt_, double box_l_, double d_sep_,
           double mass_ = 1.0, double hbar_ = 1.0);

  // d beyond L/2 leaves the small-separation regime the estimates assume.
  bool separation_warning() const { return d_sep > 0.5 * box_l; }
};

// Ratio of the contact term to the kinetic term, 8 pi a |psi|^2 psi / (-lap
// psi), with the analytic ladder Laplacian. Errors when |lap psi| falls below
// 1e-12 of the local field scale (indeterminate ratio).
Complex ratio_field(const HermiteGaussianState& s, const Vec3& pt,
                    double a_scatt);

// Grid variant: 7-point stencil Laplacian at the grid point nearest pt.
Complex ratio_field(const GridState& g, const Vec3& pt, double a_scatt);

// Closed form of the ratio at the center of the two-line state:
//   N a d^6 / (sqrt(pi) L (L^2 + 3d^2/8)(24 L^4 + d^4)).
double center_ratio(const GpParams& gp);

// Order-of-magnitude estimate xi = N (a/L) (d/L)^6.
double xi_estimate(const GpParams& gp);

// Characteristic vortex-motion timescale T0 = m d^2 / hbar (seconds for SI
// inputs).
double vortex_timescale(const GpParams& gp);

// Order-of-magnitude values quoted for a sodium condensate with
// L = 50 um, N = 1e6, a = 5 nm; logged next to the formula-computed numbers.
constexpr double kSodiumXiEstimate = 1e-3;
constexpr double kSodiumT0Seconds = 3e-4;

struct RegimeReport {
  double xi = 0.0;
  double center_ratio_value = 0.0;
  double t0_seconds = 0.0;
  double trap_period_seconds = 0.0;
  double ratio_threshold = 1e-2;
  double timescale_factor = 10.0;
  bool nonlinearity_negligible = false;
  bool trap_negligible = false;
  bool separation_warning = false;
  double xi_quoted = kSodiumXiEstimate;
  double t0_quoted_seconds = kSodiumT0Seconds;
};

// Verdicts: nonlinearity negligible when center_ratio < ratio_threshold;
// trap negligible when T0 < trap_period / timescale_factor.
RegimeReport regime_report(const GpParams& gp, double trap_period,
                           double ratio_threshold = 1e-2,
                           double timescale_factor = 10.0);

void write_regime_report(const RegimeReport& rep, const std::string& path);
RegimeReport read_regime_report(const std::string& path);

}  // namespace vlift

#pragma once

#include <map>
#include <string>

#include "geometry.hpp"

namespace vlift {

// Sparse polynomial / Hermite coefficient container, multi-index -> amplitude.
using CoeffMap = std::map<Index3, Complex>;

// Highest per-axis polynomial degree accepted by the constructors; the
// Hermite normalization constants grow factorially beyond this.
constexpr int kMaxDegree = 16;

// Trap frequencies, interaction strength and norm of the nonlinear equation.
// Validates at construction that every modified squared frequency
// omega_j^2 = tilde_omega_j^2 - norm * omega_sq_int stays positive.
struct TrapConfig {
  Vec3 tilde_omega;      // trap angular frequencies (natural units)
  double omega_sq_int;   // interaction strength; > 0 repulsive, < 0 attractive
  double norm;           // conserved total norm N of the solution

  TrapConfig(const Vec3& tilde_omega_, double omega_sq_int_, double norm_);

  // omega_j = sqrt(tilde_omega_j^2 - N * omega_sq_int)
  Vec3 modified_frequencies() const;
};

// Wavefunction (sum of Hermite modes) x (anisotropic Gaussian):
//   phi(r) = sum_n c_n prod_j H_{n_j}(sqrt(w_j) x_j) * exp(-sum_j w_j x_j^2/2)
// Immutable value type; all operations below are pure.
struct HermiteGaussianState {
  Vec3 widths;     // Gaussian exponents w_j, all > 0
  CoeffMap coeffs; // finitely many nonzero amplitudes, degrees <= kMaxDegree
  double time = 0.0;
};

// Unit-normalized Gaussian ground state on the given widths.
HermiteGaussianState make_ground_state(const Vec3& widths);

// Unit-normalized single straight vortex along z, displaced by a_disp along x:
// prefactor (x - a + iy). The normalization constant is computed from the
// closed-form norm.
HermiteGaussianState make_single_vortex(double a_disp, const Vec3& widths);

// Two perpendicular straight vortex lines separated by d:
//   A (x + i(z - d/2)) (y + i(z + d/2)) exp(-r^2 / 2L^2),
// normalized so that the squared norm equals n_atoms. Widths are 1/L^2.
HermiteGaussianState make_two_perpendicular_vortices(double d, double box_l,
                                                     double n_atoms);

// Closed-form normalization constant A of the two-line state.
double two_line_normalization(double d, double box_l, double n_atoms);

// State with the given monomial prefactor (exact basis conversion), scaled so
// that the squared norm equals `target_norm` (skipped if target_norm <= 0).
HermiteGaussianState state_from_polynomial(const CoeffMap& monomials,
                                           const Vec3& widths,
                                           double target_norm = -1.0);

Complex evaluate(const HermiteGaussianState& s, const Vec3& r);
std::array<Complex, 3> gradient(const HermiteGaussianState& s, const Vec3& r);
Complex laplacian(const HermiteGaussianState& s, const Vec3& r);

// Closed-form squared norm, sum_n |c_n|^2 h(n).
double norm_sq(const HermiteGaussianState& s);

// h(n) = prod_j 2^{n_j} n_j! sqrt(pi / w_j), the basis-mode squared norm.
double basis_norm_sq(const Index3& n, const Vec3& widths);

// <f|g> = sum_n conj(f_n) g_n h(n); both states must share widths.
Complex inner_product(const HermiteGaussianState& f,
                      const HermiteGaussianState& g);

// Exact change of basis between monomial and Hermite representations on the
// given widths; the two maps are mutually inverse.
CoeffMap monomials_to_hermite(const CoeffMap& monomials, const Vec3& widths);
CoeffMap hermite_to_monomials(const CoeffMap& coeffs, const Vec3& widths);

// Coefficient-space ladder operators (multiplication by x_axis and d/dx_axis);
// exact on the Hermite-Gaussian basis.
CoeffMap apply_position(const CoeffMap& coeffs, int axis, double width);
CoeffMap apply_derivative(const CoeffMap& coeffs, int axis, double width);

// Evaluates a polynomial given by monomial coefficients (no Gaussian factor).
Complex evaluate_monomials(const CoeffMap& monomials, const Vec3& r);

// Key-value text serialization, 17-significant-digit floats.
void save_state(const HermiteGaussianState& s, const std::string& path);
HermiteGaussianState load_state(const std::string& path);

}  // namespace vlift

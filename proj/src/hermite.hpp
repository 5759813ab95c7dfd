#pragma once

#include <vector>

namespace vlift {

// Physicists' Hermite polynomials, H_{n+1}(u) = 2u H_n(u) - 2n H_{n-1}(u).

// Fills out[0..n_max] with H_0(u) .. H_{n_max}(u) by the stable upward
// recurrence.
void hermite_values(int n_max, double u, double* out);

// Coefficients of the monomial x^k over the scaled basis {H_j(s x)}:
// x^k = sum_j c_j H_j(s x). Exact change of basis via the ladder
// x H_j(s x) = H_{j+1}(s x)/(2s) + (j/s) H_{j-1}(s x).
std::vector<double> monomial_over_hermite(int k, double s);

// Coefficients of H_n(s x) over the monomials {x^k} (inverse direction).
std::vector<double> hermite_over_monomials(int n, double s);

}  // namespace vlift

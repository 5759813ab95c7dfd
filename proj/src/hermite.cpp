#include "hermite.hpp"

namespace vlift {

void hermite_values(int n_max, double u, double* out) {
  out[0] = 1.0;
  if (n_max == 0) return;
  out[1] = 2.0 * u;
  for (int n = 1; n < n_max; ++n) {
    out[n + 1] = 2.0 * u * out[n] - 2.0 * n * out[n - 1];
  }
}

std::vector<double> monomial_over_hermite(int k, double s) {
  std::vector<double> c{1.0};  // x^0 = H_0
  for (int step = 0; step < k; ++step) {
    std::vector<double> next(c.size() + 1, 0.0);
    for (int j = 0; j < static_cast<int>(c.size()); ++j) {
      if (c[j] == 0.0) continue;
      next[j + 1] += c[j] / (2.0 * s);
      if (j > 0) next[j - 1] += c[j] * j / s;
    }
    c = std::move(next);
  }
  return c;
}

std::vector<double> hermite_over_monomials(int n, double s) {
  // P_{j+1}(x) = 2 s x P_j(x) - 2 j P_{j-1}(x), P_0 = 1.
  std::vector<double> prev{1.0};
  if (n == 0) return prev;
  std::vector<double> cur{0.0, 2.0 * s};
  for (int j = 1; j < n; ++j) {
    std::vector<double> next(j + 2, 0.0);
    for (int k = 0; k <= j; ++k) next[k + 1] += 2.0 * s * cur[k];
    for (int k = 0; k < j; ++k) next[k] -= 2.0 * j * prev[k];
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

}  // namespace vlift

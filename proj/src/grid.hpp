#pragma once

#include <string>
#include <vector>

#include "moment_dynamics.hpp"
#include "nonlinear_lift.hpp"

namespace vlift {

// Regular periodic sampling domain: n_j cell-centered points per axis on
// [-box_j, box_j). Each n_j must be >= 16 and factor into 2, 3 and 5.
struct GridSpec {
  std::array<int, 3> n;
  Vec3 box;

  GridSpec(const std::array<int, 3>& n_, const Vec3& box_);

  double step(int axis) const { return 2.0 * box[axis] / n[axis]; }
  double coord(int axis, int i) const {
    return -box[axis] + (i + 0.5) * step(axis);
  }
  size_t total() const {
    return static_cast<size_t>(n[0]) * n[1] * n[2];
  }
  double cell_volume() const { return step(0) * step(1) * step(2); }
  bool same_shape(const GridSpec& o) const;
};

// Complex field sampled on a GridSpec; row-major, x fastest.
struct GridState {
  GridSpec spec;
  std::vector<Complex> values;
  double time = 0.0;

  explicit GridState(const GridSpec& s)
      : spec(s), values(s.total(), Complex(0.0)) {}

  size_t index(int i, int j, int k) const {
    return (static_cast<size_t>(k) * spec.n[1] + j) * spec.n[0] + i;
  }
  Complex at(int i, int j, int k) const { return values[index(i, j, k)]; }
};

// Pointwise evaluation at cell centers. Throws BoxTooSmallError when the
// max boundary-face amplitude exceeds 1e-8 of the global max.
GridState sample(const HermiteGaussianState& s, const GridSpec& spec);
GridState sample(const LiftedState& ls, const GridSpec& spec);

double grid_norm_sq(const GridState& g);

// sqrt of the cell-volume-weighted sum of |g1 - g2|^2; specs must match.
double l2_distance(const GridState& g1, const GridState& g2);

// Norm and density moments by quadrature; P, T, W by spectral derivatives.
GlobalMoments grid_moments(const GridState& g);

// Binary dump: 3 x u32 dims, 3 x f64 box, f64 time (little-endian), then
// row-major (re, im) f64 pairs, x fastest.
void save_grid(const GridState& g, const std::string& path);
GridState load_grid(const std::string& path);

}  // namespace vlift

#pragma once

#include <vector>

#include "geometry.hpp"

namespace vlift {

struct GridSpec;

// In-place 3-D complex FFT pair (FFTW backend) for one grid shape, plus the
// grid's natural wavenumbers. Plans are created with FFTW_ESTIMATE so results
// are reproducible run to run. forward() is unnormalized; inverse() applies
// the 1/(n0 n1 n2) factor, so inverse(forward(x)) == x.
class SpectralTransform {
 public:
  explicit SpectralTransform(const GridSpec& spec);
  ~SpectralTransform();
  SpectralTransform(const SpectralTransform&) = delete;
  SpectralTransform& operator=(const SpectralTransform&) = delete;

  void forward(std::vector<Complex>& values) const;
  void inverse(std::vector<Complex>& values) const;

  // k_j(m) = 2 pi m_hat / (2 box_j), symmetric integer range.
  const std::vector<double>& wavenumbers(int axis) const { return k_[axis]; }

 private:
  void* plan_fwd_;
  void* plan_inv_;
  size_t total_;
  std::vector<double> k_[3];
};

}  // namespace vlift

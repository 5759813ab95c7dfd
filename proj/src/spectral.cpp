#include "spectral.hpp"

#include <fftw3.h>

#include <numbers>

#include "grid.hpp"

namespace vlift {

SpectralTransform::SpectralTransform(const GridSpec& spec) {
  total_ = spec.total();
  std::vector<Complex> scratch(total_);
  auto* buf = reinterpret_cast<fftw_complex*>(scratch.data());
  // FFTW's row-major (n0, n1, n2) has n2 contiguous; our x index is fastest.
  plan_fwd_ = fftw_plan_dft_3d(spec.n[2], spec.n[1], spec.n[0], buf, buf,
                               FFTW_FORWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
  plan_inv_ = fftw_plan_dft_3d(spec.n[2], spec.n[1], spec.n[0], buf, buf,
                               FFTW_BACKWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
  for (int a = 0; a < 3; ++a) {
    int n = spec.n[a];
    k_[a].resize(n);
    double dk = 2.0 * std::numbers::pi / (2.0 * spec.box[a]);
    for (int m = 0; m < n; ++m) {
      int m_signed = (m <= n / 2) ? m : m - n;
      k_[a][m] = dk * m_signed;
    }
  }
}

SpectralTransform::~SpectralTransform() {
  fftw_destroy_plan(static_cast<fftw_plan>(plan_fwd_));
  fftw_destroy_plan(static_cast<fftw_plan>(plan_inv_));
}

void SpectralTransform::forward(std::vector<Complex>& values) const {
  auto* buf = reinterpret_cast<fftw_complex*>(values.data());
  fftw_execute_dft(static_cast<fftw_plan>(plan_fwd_), buf, buf);
}

void SpectralTransform::inverse(std::vector<Complex>& values) const {
  auto* buf = reinterpret_cast<fftw_complex*>(values.data());
  fftw_execute_dft(static_cast<fftw_plan>(plan_inv_), buf, buf);
  double f = 1.0 / static_cast<double>(total_);
  for (Complex& v : values) v *= f;
}

}  // namespace vlift

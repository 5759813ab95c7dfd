#include "grid.hpp"

#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>

#include "errors.hpp"
#include "hermite.hpp"
#include "spectral.hpp"
#include "textio.hpp"

namespace vlift {

namespace {

bool factors_235(int n) {
  for (int p : {2, 3, 5}) {
    while (n % p == 0) n /= p;
  }
  return n == 1;
}

// Largest |value| over the six boundary faces.
double boundary_max(const GridState& g) {
  const auto& n = g.spec.n;
  double worst = 0.0;
  auto visit = [&](int i, int j, int k) {
    worst = std::max(worst, std::abs(g.at(i, j, k)));
  };
  for (int j = 0; j < n[1]; ++j) {
    for (int k = 0; k < n[2]; ++k) {
      visit(0, j, k);
      visit(n[0] - 1, j, k);
    }
  }
  for (int i = 0; i < n[0]; ++i) {
    for (int k = 0; k < n[2]; ++k) {
      visit(i, 0, k);
      visit(i, n[1] - 1, k);
    }
  }
  for (int i = 0; i < n[0]; ++i) {
    for (int j = 0; j < n[1]; ++j) {
      visit(i, j, 0);
      visit(i, j, n[2] - 1);
    }
  }
  return worst;
}

void check_boundary(const GridState& g) {
  double peak = 0.0;
  for (const Complex& v : g.values) peak = std::max(peak, std::abs(v));
  if (peak == 0.0) return;
  double edge = boundary_max(g);
  if (edge > 1e-8 * peak) {
    throw BoxTooSmallError("sampling box too small: boundary amplitude " +
                           format_double(edge / peak) +
                           " of peak exceeds 1e-8");
  }
}

int max_degree_along(const CoeffMap& coeffs, int axis) {
  int d = 0;
  for (const auto& [n, c] : coeffs) d = std::max(d, n[axis]);
  return d;
}

// Per-axis factor tables T_a[m][i] for the separable evaluation
//   value(i,j,k) = sum_m c_m Tx[mx][i] Ty[my][j] Tz[mz][k].
// `shift` displaces the state's argument, `boost` multiplies by e^{i a x}.
std::vector<std::vector<Complex>> axis_table(const GridSpec& spec, int axis,
                                             double width, int deg,
                                             double shift, double boost) {
  int n = spec.n[axis];
  std::vector<std::vector<Complex>> table(deg + 1,
                                          std::vector<Complex>(n));
  std::vector<double> h(deg + 1);
  double s = std::sqrt(width);
  for (int i = 0; i < n; ++i) {
    double x = spec.coord(axis, i);
    double q = x - shift;
    hermite_values(deg, s * q, h.data());
    Complex base = std::exp(Complex(-0.5 * width * q * q, boost * x));
    for (int m = 0; m <= deg; ++m) table[m][i] = base * h[m];
  }
  return table;
}

GridState sample_impl(const HermiteGaussianState& s, const GridSpec& spec,
                      const Vec3& shift, const Vec3& boost, Complex prefactor,
                      double time) {
  GridState g(spec);
  g.time = time;
  int deg[3];
  std::vector<std::vector<Complex>> t[3];
  for (int a = 0; a < 3; ++a) {
    deg[a] = max_degree_along(s.coeffs, a);
    t[a] = axis_table(spec, a, s.widths[a], deg[a], shift[a], boost[a]);
  }
  const auto& n = spec.n;
  for (const auto& [m, c] : s.coeffs) {
    Complex cp = prefactor * c;
    const auto& tx = t[0][m[0]];
    const auto& ty = t[1][m[1]];
    const auto& tz = t[2][m[2]];
    for (int k = 0; k < n[2]; ++k) {
      for (int j = 0; j < n[1]; ++j) {
        Complex cyz = cp * tz[k] * ty[j];
        Complex* row = g.values.data() + g.index(0, j, k);
        for (int i = 0; i < n[0]; ++i) row[i] += cyz * tx[i];
      }
    }
  }
  check_boundary(g);
  return g;
}

}  // namespace

GridSpec::GridSpec(const std::array<int, 3>& n_, const Vec3& box_)
    : n(n_), box(box_) {
  for (int a = 0; a < 3; ++a) {
    if (n[a] < 16) throw InvalidArgument("grid needs at least 16 points per axis");
    if (!factors_235(n[a])) {
      throw InvalidArgument("grid sizes must factor into 2, 3 and 5");
    }
    if (!(box[a] > 0.0)) throw InvalidArgument("box half-width must be positive");
  }
}

bool GridSpec::same_shape(const GridSpec& o) const {
  return n == o.n && box == o.box;
}

GridState sample(const HermiteGaussianState& s, const GridSpec& spec) {
  return sample_impl(s, spec, {0, 0, 0}, {0, 0, 0}, 1.0, s.time);
}

GridState sample(const LiftedState& ls, const GridSpec& spec) {
  Complex prefactor = std::exp(Complex(0.0, ls.f));
  return sample_impl(ls.phi, spec, ls.b, ls.a, prefactor, ls.time);
}

double grid_norm_sq(const GridState& g) {
  double acc = 0.0;
  for (const Complex& v : g.values) acc += std::norm(v);
  return acc * g.spec.cell_volume();
}

double l2_distance(const GridState& g1, const GridState& g2) {
  if (!g1.spec.same_shape(g2.spec)) {
    throw InvalidArgument("l2_distance requires identical grid specs");
  }
  double acc = 0.0;
  for (size_t i = 0; i < g1.values.size(); ++i) {
    acc += std::norm(g1.values[i] - g2.values[i]);
  }
  return std::sqrt(acc * g1.spec.cell_volume());
}

GlobalMoments grid_moments(const GridState& g) {
  const GridSpec& spec = g.spec;
  double dv = spec.cell_volume();
  GlobalMoments m;
  m.time = g.time;
  const auto& n = spec.n;
  double x2sum[3] = {0, 0, 0};
  for (int k = 0; k < n[2]; ++k) {
    double z = spec.coord(2, k);
    for (int j = 0; j < n[1]; ++j) {
      double y = spec.coord(1, j);
      const Complex* row = g.values.data() + g.index(0, j, k);
      for (int i = 0; i < n[0]; ++i) {
        double den = std::norm(row[i]);
        double x = spec.coord(0, i);
        m.n += den;
        m.r[0] += x * den;
        m.r[1] += y * den;
        m.r[2] += z * den;
        x2sum[0] += x * x * den;
        x2sum[1] += y * y * den;
        x2sum[2] += z * z * den;
      }
    }
  }
  m.n *= dv;
  if (!(m.n > 0.0)) throw InvalidArgument("moments of a zero-norm grid");
  for (int a = 0; a < 3; ++a) {
    m.r[a] *= dv;
    x2sum[a] *= dv;
  }

  SpectralTransform fft(spec);
  std::vector<Complex> hat = g.values;
  fft.forward(hat);
  for (int a = 0; a < 3; ++a) {
    std::vector<Complex> dpsi = hat;
    const auto& kx = fft.wavenumbers(0);
    const auto& ky = fft.wavenumbers(1);
    const auto& kz = fft.wavenumbers(2);
    for (int k = 0; k < n[2]; ++k) {
      for (int j = 0; j < n[1]; ++j) {
        Complex* row = dpsi.data() + g.index(0, j, k);
        for (int i = 0; i < n[0]; ++i) {
          double kv = (a == 0) ? kx[i] : (a == 1) ? ky[j] : kz[k];
          row[i] *= Complex(0.0, kv);
        }
      }
    }
    fft.inverse(dpsi);
    Complex psum = 0.0;
    double tsum = 0.0;
    Complex xdsum = 0.0;
    for (int k = 0; k < n[2]; ++k) {
      for (int j = 0; j < n[1]; ++j) {
        size_t base = g.index(0, j, k);
        for (int i = 0; i < n[0]; ++i) {
          Complex psi = g.values[base + i];
          Complex d = dpsi[base + i];
          double xa = (a == 0) ? spec.coord(0, i)
                               : (a == 1) ? spec.coord(1, j) : spec.coord(2, k);
          psum += std::conj(psi) * d;
          tsum += std::norm(d);
          xdsum += xa * std::conj(psi) * d;
        }
      }
    }
    m.p[a] = psum.imag() * dv;
    m.u[a] = 0.5 * x2sum[a] - m.r[a] * m.r[a] / (2.0 * m.n);
    m.t_kin[a] = 0.5 * tsum * dv - m.p[a] * m.p[a] / (2.0 * m.n);
    m.w[a] = 0.5 * xdsum.imag() * dv - m.r[a] * m.p[a] / (2.0 * m.n);
  }
  return m;
}

void save_grid(const GridState& g, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open for writing: " + path);
  for (int a = 0; a < 3; ++a) {
    uint32_t v = static_cast<uint32_t>(g.spec.n[a]);
    out.write(reinterpret_cast<const char*>(&v), sizeof(v));
  }
  for (int a = 0; a < 3; ++a) {
    double v = g.spec.box[a];
    out.write(reinterpret_cast<const char*>(&v), sizeof(v));
  }
  out.write(reinterpret_cast<const char*>(&g.time), sizeof(g.time));
  out.write(reinterpret_cast<const char*>(g.values.data()),
            static_cast<std::streamsize>(g.values.size() * sizeof(Complex)));
  if (!out) throw IoError("write failed: " + path);
}

GridState load_grid(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open: " + path);
  std::array<int, 3> n;
  for (int a = 0; a < 3; ++a) {
    uint32_t v = 0;
    in.read(reinterpret_cast<char*>(&v), sizeof(v));
    n[a] = static_cast<int>(v);
  }
  Vec3 box;
  for (int a = 0; a < 3; ++a) {
    in.read(reinterpret_cast<char*>(&box[a]), sizeof(double));
  }
  double time = 0.0;
  in.read(reinterpret_cast<char*>(&time), sizeof(double));
  if (!in) throw IoError("truncated grid header in " + path);
  GridState g(GridSpec{n, box});
  g.time = time;
  in.read(reinterpret_cast<char*>(g.values.data()),
          static_cast<std::streamsize>(g.values.size() * sizeof(Complex)));
  if (!in) throw IoError("truncated grid data in " + path);
  return g;
}

}  // namespace vlift

#include "steppers.hpp"

#include <cmath>
#include <numbers>

#include "errors.hpp"

namespace vlift {

namespace {

void make_kinetic_table(const SpectralTransform& fft, const GridSpec& spec,
                        double coeff, double dt, std::vector<Complex>& out) {
  out.resize(spec.total());
  const auto& kx = fft.wavenumbers(0);
  const auto& ky = fft.wavenumbers(1);
  const auto& kz = fft.wavenumbers(2);
  size_t idx = 0;
  for (int k = 0; k < spec.n[2]; ++k) {
    double kz2 = kz[k] * kz[k];
    for (int j = 0; j < spec.n[1]; ++j) {
      double kyz2 = ky[j] * ky[j] + kz2;
      for (int i = 0; i < spec.n[0]; ++i, ++idx) {
        double k2 = kx[i] * kx[i] + kyz2;
        out[idx] = std::exp(Complex(0.0, -coeff * k2 * dt));
      }
    }
  }
}

// Density moments needed by the harmonic potential: N, R, and sum of
// central second moments U = U_xx + U_yy + U_zz.
struct DensityMoments {
  double n;
  Vec3 r;
  double u_total;
};

DensityMoments density_moments(const GridState& g) {
  const GridSpec& spec = g.spec;
  const auto& n = spec.n;
  DensityMoments m{0.0, {0, 0, 0}, 0.0};
  double x2[3] = {0, 0, 0};
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
        x2[0] += x * x * den;
        x2[1] += y * y * den;
        x2[2] += z * z * den;
      }
    }
  }
  double dv = spec.cell_volume();
  m.n *= dv;
  if (!(m.n > 0.0)) throw NumericError("field norm vanished during stepping");
  for (int a = 0; a < 3; ++a) {
    m.r[a] *= dv;
    m.u_total += 0.5 * x2[a] * dv - m.r[a] * m.r[a] / (2.0 * m.n);
  }
  return m;
}

}  // namespace

HarmonicOracle::HarmonicOracle(const GridSpec& spec, const TrapConfig& cfg)
    : spec_(spec), cfg_(cfg), fft_(spec) {}

void HarmonicOracle::potential_half_step(GridState& g, double dt) const {
  DensityMoments m = density_moments(g);
  double w2int = cfg_.omega_sq_int;
  // Full potential, with the interaction expanded through its moments:
  //   sum_a [ (tilde_w_a^2 - N Omega^2) x_a^2 / 2 + Omega^2 R_a x_a ]
  //   - Omega^2 (U + R.R / 2N)
  double constant = -w2int * (m.u_total + dot(m.r, m.r) / (2.0 * m.n));
  Complex cphase = std::exp(Complex(0.0, -constant * dt / 2.0));
  std::vector<Complex> tab[3];
  for (int a = 0; a < 3; ++a) {
    tab[a].resize(spec_.n[a]);
    double quad = 0.5 * (cfg_.tilde_omega[a] * cfg_.tilde_omega[a] -
                         m.n * w2int);
    for (int i = 0; i < spec_.n[a]; ++i) {
      double x = spec_.coord(a, i);
      double v = quad * x * x + w2int * m.r[a] * x;
      tab[a][i] = std::exp(Complex(0.0, -v * dt / 2.0));
    }
  }
  for (int k = 0; k < spec_.n[2]; ++k) {
    for (int j = 0; j < spec_.n[1]; ++j) {
      Complex cyz = cphase * tab[2][k] * tab[1][j];
      Complex* row = g.values.data() + g.index(0, j, k);
      for (int i = 0; i < spec_.n[0]; ++i) row[i] *= cyz * tab[0][i];
    }
  }
}

void HarmonicOracle::step(GridState& g, double dt) const {
  if (dt == 0.0) throw InvalidArgument("dt must be nonzero");
  if (!g.spec.same_shape(spec_)) throw InvalidArgument("grid/stepper shape mismatch");
  if (dt != kinetic_dt_) {
    make_kinetic_table(fft_, spec_, 0.5, dt, kinetic_);
    kinetic_dt_ = dt;
  }
  potential_half_step(g, dt);
  fft_.forward(g.values);
  for (size_t i = 0; i < g.values.size(); ++i) g.values[i] *= kinetic_[i];
  fft_.inverse(g.values);
  potential_half_step(g, dt);
  g.time += dt;
}

ContactOracle::ContactOracle(const GridSpec& spec, double trap_omega,
                             double a_scatt, double mass, double hbar)
    : spec_(spec),
      trap_omega_(trap_omega),
      a_scatt_(a_scatt),
      mass_(mass),
      hbar_(hbar),
      fft_(spec) {
  if (!(mass > 0.0) || !(hbar > 0.0)) {
    throw InvalidArgument("mass and hbar must be > 0");
  }
}

void ContactOracle::step(GridState& g, double dt) const {
  if (dt == 0.0) throw InvalidArgument("dt must be nonzero");
  if (!g.spec.same_shape(spec_)) throw InvalidArgument("grid/stepper shape mismatch");
  if (dt != kinetic_dt_) {
    make_kinetic_table(fft_, spec_, 0.5 * hbar_ / mass_, dt, kinetic_);
    kinetic_dt_ = dt;
  }
  // Phase rates in units of 1/time: (V + g |psi|^2) / hbar.
  double vq = 0.5 * mass_ * trap_omega_ * trap_omega_ / hbar_;
  double gnl = 4.0 * std::numbers::pi * hbar_ * a_scatt_ / mass_;
  auto half = [&]() {
    for (int k = 0; k < spec_.n[2]; ++k) {
      double z = spec_.coord(2, k);
      for (int j = 0; j < spec_.n[1]; ++j) {
        double y = spec_.coord(1, j);
        double yz2 = y * y + z * z;
        Complex* row = g.values.data() + g.index(0, j, k);
        for (int i = 0; i < spec_.n[0]; ++i) {
          double x = spec_.coord(0, i);
          double rate = vq * (x * x + yz2) + gnl * std::norm(row[i]);
          row[i] *= std::exp(Complex(0.0, -rate * dt / 2.0));
        }
      }
    }
  };
  half();
  fft_.forward(g.values);
  for (size_t i = 0; i < g.values.size(); ++i) g.values[i] *= kinetic_[i];
  fft_.inverse(g.values);
  half();
  g.time += dt;
}

GridState step_harmonic_nlse(const GridState& g, const TrapConfig& cfg,
                             double dt) {
  HarmonicOracle oracle(g.spec, cfg);
  GridState out = g;
  oracle.step(out, dt);
  return out;
}

GridState step_gp(const GridState& g, double trap_omega, const GpParams& gp,
                  double dt) {
  ContactOracle oracle(g.spec, trap_omega, gp.a_scatt, gp.mass, gp.hbar);
  GridState out = g;
  oracle.step(out, dt);
  return out;
}

GridState evolve(GridState g,
                 const std::function<void(GridState&, double)>& stepper,
                 double dt, int n_steps,
                 std::span<const ObserverEntry> observers) {
  if (n_steps < 0) throw InvalidArgument("n_steps must be >= 0");
  auto notify = [&](int step) {
    for (const ObserverEntry& o : observers) {
      if (o.stride <= 0) throw InvalidArgument("observer stride must be > 0");
      if (step % o.stride == 0 || step == n_steps) o.fn(g, step);
    }
  };
  notify(0);
  for (int s = 1; s <= n_steps; ++s) {
    stepper(g, dt);
    notify(s);
  }
  return g;
}

}  // namespace vlift

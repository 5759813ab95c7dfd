#include "nonlinear_lift.hpp"

#include <cmath>

#include "errors.hpp"
#include "linear_evolution.hpp"
#include "textio.hpp"

namespace vlift {

Vec3 modified_frequencies(const TrapConfig& cfg) {
  return cfg.modified_frequencies();
}

Vec3 shift_b(const GlobalMoments& m0, const TrapConfig& cfg, double t) {
  Vec3 wmod = cfg.modified_frequencies();
  Vec3 b;
  for (int a = 0; a < 3; ++a) {
    double wt = cfg.tilde_omega[a], w = wmod[a];
    b[a] = (m0.r[a] * (std::cos(wt * t) - std::cos(w * t)) +
            m0.p[a] * (std::sin(wt * t) / wt - std::sin(w * t) / w)) /
           m0.n;
  }
  return b;
}

Vec3 phase_a(const GlobalMoments& m0, const TrapConfig& cfg, double t) {
  Vec3 wmod = cfg.modified_frequencies();
  Vec3 a;
  for (int i = 0; i < 3; ++i) {
    double wt = cfg.tilde_omega[i], w = wmod[i];
    a[i] = (-m0.r[i] * (wt * std::sin(wt * t) - w * std::sin(w * t)) +
            m0.p[i] * (std::cos(wt * t) - std::cos(w * t))) /
           m0.n;
  }
  return a;
}

double phase_f_rate(const GlobalMoments& m0, const TrapConfig& cfg, double t) {
  if (cfg.omega_sq_int == 0.0) return 0.0;
  Vec3 wmod = cfg.modified_frequencies();
  Vec3 b = shift_b(m0, cfg, t);
  Vec3 a = phase_a(m0, cfg, t);
  GlobalMoments m = evolve_moments(m0, cfg, t);
  double u_tot = m.u[0] + m.u[1] + m.u[2];
  double rate = 0.0;
  for (int i = 0; i < 3; ++i) rate += 0.5 * wmod[i] * wmod[i] * b[i] * b[i];
  rate -= 0.5 * dot(a, a);
  rate += cfg.omega_sq_int * (u_tot + dot(m.r, m.r) / (2.0 * m0.n));
  return rate;
}

namespace {

struct SimpsonCtx {
  const GlobalMoments& m0;
  const TrapConfig& cfg;
  int evals = 0;
};

double rate(SimpsonCtx& ctx, double t) {
  ++ctx.evals;
  return phase_f_rate(ctx.m0, ctx.cfg, t);
}

double adaptive_simpson(SimpsonCtx& ctx, double a, double b, double fa,
                        double fm, double fb, double whole, double tol,
                        int depth) {
  if (depth > 48 || ctx.evals > 2000000) {
    throw NumericError("phase quadrature failed to converge on [" +
                       format_double(a) + ", " + format_double(b) + "]");
  }
  double m = 0.5 * (a + b);
  double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  double flm = rate(ctx, lm), frm = rate(ctx, rm);
  double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  double delta = left + right - whole;
  if (std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  return adaptive_simpson(ctx, a, m, fa, flm, fm, left, tol / 2.0, depth + 1) +
         adaptive_simpson(ctx, m, b, fm, frm, fb, right, tol / 2.0, depth + 1);
}

}  // namespace

double phase_f(const GlobalMoments& m0, const TrapConfig& cfg, double t,
               double tol) {
  if (!(tol > 0.0)) throw InvalidArgument("quadrature tolerance must be > 0");
  if (t == 0.0 || cfg.omega_sq_int == 0.0) return 0.0;
  double lo = std::min(0.0, t), hi = std::max(0.0, t);
  SimpsonCtx ctx{m0, cfg};
  double fa = rate(ctx, lo), fb = rate(ctx, hi);
  double m = 0.5 * (lo + hi);
  double fm = rate(ctx, m);
  double whole = (hi - lo) / 6.0 * (fa + 4.0 * fm + fb);
  double integral =
      adaptive_simpson(ctx, lo, hi, fa, fm, fb, whole, tol, 0);
  return t > 0.0 ? integral : -integral;
}

LiftedState lift(const HermiteGaussianState& phi0, const TrapConfig& cfg,
                 double t, double f_tol) {
  if (phi0.time != 0.0) {
    throw InvalidArgument("lift requires the t=0 linear state");
  }
  Vec3 wmod = cfg.modified_frequencies();
  for (int a = 0; a < 3; ++a) {
    if (std::abs(phi0.widths[a] - wmod[a]) >
        1e-12 * std::max(phi0.widths[a], wmod[a])) {
      throw InvalidArgument(
          "state widths must equal the modified trap frequencies");
    }
  }
  double n = norm_sq(phi0);
  if (std::abs(n - cfg.norm) > 1e-8 * cfg.norm) {
    throw InvalidArgument("state norm does not match the configured norm");
  }
  GlobalMoments m0 = compute_moments(phi0);
  LiftedState ls{evolve_linear(phi0, wmod, t),
                 phase_a(m0, cfg, t),
                 shift_b(m0, cfg, t),
                 phase_f(m0, cfg, t, f_tol),
                 m0,
                 cfg,
                 t};
  return ls;
}

Complex evaluate(const LiftedState& ls, const Vec3& r) {
  Complex phase = std::exp(Complex(0.0, ls.f + dot(ls.a, r)));
  return phase * evaluate(ls.phi, sub(r, ls.b));
}

std::array<Complex, 3> gradient(const LiftedState& ls, const Vec3& r) {
  Complex phase = std::exp(Complex(0.0, ls.f + dot(ls.a, r)));
  Vec3 q = sub(r, ls.b);
  Complex val = evaluate(ls.phi, q);
  std::array<Complex, 3> g = gradient(ls.phi, q);
  for (int i = 0; i < 3; ++i) {
    g[i] = phase * (Complex(0.0, ls.a[i]) * val + g[i]);
  }
  return g;
}

double norm_sq(const LiftedState& ls) { return norm_sq(ls.phi); }

GlobalMoments compute_moments(const LiftedState& ls) {
  GlobalMoments m = compute_moments(ls.phi);
  for (int i = 0; i < 3; ++i) {
    m.r[i] += m.n * ls.b[i];
    m.p[i] += m.n * ls.a[i];
  }
  m.time = ls.time;
  return m;
}

double lifted_residual(const LiftedState& ls, std::span<const Vec3> probes) {
  const TrapConfig& cfg = ls.cfg;
  Vec3 wmod = cfg.modified_frequencies();
  double t = ls.time;
  GlobalMoments m = evolve_moments(ls.m0, cfg, t);
  double u_tot = m.u[0] + m.u[1] + m.u[2];
  double f_rate = phase_f_rate(ls.m0, cfg, t);
  Vec3 a_rate;  // da/dt = -omega^2 b - Omega^2 R(t), per axis
  for (int i = 0; i < 3; ++i) {
    a_rate[i] = -wmod[i] * wmod[i] * ls.b[i] - cfg.omega_sq_int * m.r[i];
  }

  // i d/dt phi at fixed argument: eigenphase rule on the evolved coefficients.
  HermiteGaussianState iphit = ls.phi;
  for (auto& [n, c] : iphit.coeffs) {
    c *= (n[0] + 0.5) * wmod[0] + (n[1] + 0.5) * wmod[1] +
         (n[2] + 0.5) * wmod[2];
  }

  double worst = 0.0;
  for (const Vec3& r : probes) {
    Vec3 q = sub(r, ls.b);
    Complex val = evaluate(ls.phi, q);
    std::array<Complex, 3> grad = gradient(ls.phi, q);
    Complex lap = laplacian(ls.phi, q);
    Complex adotgrad = 0.0;
    for (int i = 0; i < 3; ++i) adotgrad += ls.a[i] * grad[i];

    // Both sides carry the same unit-modulus phase factor; compare without it.
    Complex lhs = -(f_rate + dot(a_rate, r)) * val -
                  Complex(0.0, 1.0) * adotgrad + evaluate(iphit, q);
    double v_trap = 0.0;
    for (int i = 0; i < 3; ++i) {
      v_trap += 0.5 * wmod[i] * wmod[i] * r[i] * r[i];
    }
    Complex rhs = 0.5 * dot(ls.a, ls.a) * val -
                  Complex(0.0, 1.0) * adotgrad - 0.5 * lap + v_trap * val -
                  cfg.omega_sq_int *
                      (u_tot - dot(m.r, r) + dot(m.r, m.r) / (2.0 * m.n)) *
                      val;
    worst = std::max(worst, std::abs(lhs - rhs));
  }
  return worst;
}

void write_lift_csv(const GlobalMoments& m0, const TrapConfig& cfg, double t0,
                    double t1, int samples, const std::string& path) {
  if (samples < 2) throw InvalidArgument("need at least 2 samples");
  std::vector<std::string> header{"time", "ax", "ay", "az",
                                  "bx",   "by", "bz", "f"};
  std::vector<std::vector<double>> rows;
  for (int i = 0; i < samples; ++i) {
    double t = t0 + (t1 - t0) * i / (samples - 1);
    Vec3 a = phase_a(m0, cfg, t);
    Vec3 b = shift_b(m0, cfg, t);
    double f = phase_f(m0, cfg, t);
    rows.push_back({t, a[0], a[1], a[2], b[0], b[1], b[2], f});
  }
  write_csv(path, header, rows);
}

}  // namespace vlift

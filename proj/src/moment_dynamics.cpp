#include "moment_dynamics.hpp"

#include <algorithm>
#include <cmath>

#include "errors.hpp"
#include "textio.hpp"

namespace vlift {

GlobalMoments compute_moments(const HermiteGaussianState& s) {
  GlobalMoments m;
  m.time = s.time;
  m.n = norm_sq(s);
  if (!(m.n > 0.0)) throw InvalidArgument("moments of a zero-norm state");
  for (int a = 0; a < 3; ++a) {
    double w = s.widths[a];
    HermiteGaussianState xs{s.widths, apply_position(s.coeffs, a, w), s.time};
    HermiteGaussianState ds{s.widths, apply_derivative(s.coeffs, a, w), s.time};
    m.r[a] = inner_product(s, xs).real();
    m.p[a] = inner_product(s, ds).imag();
    double x2 = inner_product(xs, xs).real();
    double d2 = inner_product(ds, ds).real();
    HermiteGaussianState xds{s.widths, apply_position(ds.coeffs, a, w), s.time};
    double xw = inner_product(s, xds).imag();
    m.u[a] = 0.5 * x2 - m.r[a] * m.r[a] / (2.0 * m.n);
    m.t_kin[a] = 0.5 * d2 - m.p[a] * m.p[a] / (2.0 * m.n);
    m.w[a] = 0.5 * xw - m.r[a] * m.p[a] / (2.0 * m.n);
  }
  return m;
}

GlobalMoments evolve_moments(const GlobalMoments& m0, const TrapConfig& cfg,
                             double t) {
  Vec3 wmod = cfg.modified_frequencies();
  GlobalMoments m;
  m.n = m0.n;
  m.time = m0.time + t;
  for (int a = 0; a < 3; ++a) {
    double wt = cfg.tilde_omega[a];
    double w = wmod[a];
    double cwt = std::cos(wt * t), swt = std::sin(wt * t);
    double cw = std::cos(w * t), sw = std::sin(w * t), s2w = std::sin(2.0 * w * t),
           c2w = std::cos(2.0 * w * t);
    m.r[a] = m0.r[a] * cwt + m0.p[a] * swt / wt;
    m.p[a] = -m0.r[a] * wt * swt + m0.p[a] * cwt;
    m.u[a] = m0.u[a] * cw * cw + m0.t_kin[a] * sw * sw / (w * w) +
             m0.w[a] * s2w / w;
    m.t_kin[a] = m0.u[a] * w * w * sw * sw + m0.t_kin[a] * cw * cw -
                 m0.w[a] * w * s2w;
    m.w[a] = -m0.u[a] * w * s2w / 2.0 + m0.t_kin[a] * s2w / (2.0 * w) +
             m0.w[a] * c2w;
  }
  return m;
}

double MomentOdeResiduals::max() const {
  return std::max({n, r, p, u, t_kin, w});
}

MomentOdeResiduals moment_ode_residual(std::span<const GlobalMoments> traj,
                                       const TrapConfig& cfg) {
  if (traj.size() < 5) {
    throw InvalidArgument("moment_ode_residual needs at least 5 samples");
  }
  double dt = traj[1].time - traj[0].time;
  if (!(dt > 0.0)) throw InvalidArgument("trajectory must advance in time");
  for (size_t i = 1; i < traj.size(); ++i) {
    if (std::abs(traj[i].time - traj[i - 1].time - dt) > 1e-9 * std::abs(dt)) {
      throw InvalidArgument("trajectory must be uniformly sampled");
    }
  }
  Vec3 wmod = cfg.modified_frequencies();
  MomentOdeResiduals res;
  for (size_t i = 1; i + 1 < traj.size(); ++i) {
    const GlobalMoments& lo = traj[i - 1];
    const GlobalMoments& hi = traj[i + 1];
    const GlobalMoments& md = traj[i];
    res.n = std::max(res.n, std::abs((hi.n - lo.n) / (2.0 * dt)));
    for (int a = 0; a < 3; ++a) {
      double wt2 = cfg.tilde_omega[a] * cfg.tilde_omega[a];
      double w2 = wmod[a] * wmod[a];
      res.r = std::max(res.r,
                       std::abs((hi.r[a] - lo.r[a]) / (2.0 * dt) - md.p[a]));
      res.p = std::max(
          res.p, std::abs((hi.p[a] - lo.p[a]) / (2.0 * dt) + wt2 * md.r[a]));
      res.u = std::max(res.u, std::abs((hi.u[a] - lo.u[a]) / (2.0 * dt) -
                                       2.0 * md.w[a]));
      res.t_kin = std::max(res.t_kin,
                           std::abs((hi.t_kin[a] - lo.t_kin[a]) / (2.0 * dt) +
                                    2.0 * w2 * md.w[a]));
      res.w = std::max(res.w, std::abs((hi.w[a] - lo.w[a]) / (2.0 * dt) -
                                       (md.t_kin[a] - w2 * md.u[a])));
    }
  }
  return res;
}

void write_moments_csv(std::span<const GlobalMoments> traj,
                       const TrapConfig& cfg, const std::string& path) {
  Vec3 wmod = cfg.modified_frequencies();
  std::vector<std::string> header{
      "time", "N",   "Rx",  "Ry",  "Rz",  "Px",  "Py",  "Pz",  "Uxx", "Uyy",
      "Uzz",  "Txx", "Tyy", "Tzz", "Wxx", "Wyy", "Wzz", "Ex",  "Ey",  "Ez"};
  std::vector<std::vector<double>> rows;
  rows.reserve(traj.size());
  for (const GlobalMoments& m : traj) {
    std::vector<double> row{m.time, m.n};
    for (int a = 0; a < 3; ++a) row.push_back(m.r[a]);
    for (int a = 0; a < 3; ++a) row.push_back(m.p[a]);
    for (int a = 0; a < 3; ++a) row.push_back(m.u[a]);
    for (int a = 0; a < 3; ++a) row.push_back(m.t_kin[a]);
    for (int a = 0; a < 3; ++a) row.push_back(m.w[a]);
    for (int a = 0; a < 3; ++a) {
      row.push_back(m.t_kin[a] + wmod[a] * wmod[a] * m.u[a]);
    }
    rows.push_back(std::move(row));
  }
  write_csv(path, header, rows);
}

}  // namespace vlift

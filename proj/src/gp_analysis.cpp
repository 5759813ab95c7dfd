#include "gp_analysis.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "errors.hpp"
#include "textio.hpp"

namespace vlift {

GpParams::GpParams(double n_atoms_, double a_scatt_, double box_l_,
                   double d_sep_, double mass_, double hbar_)
    : n_atoms(n_atoms_),
      a_scatt(a_scatt_),
      box_l(box_l_),
      d_sep(d_sep_),
      mass(mass_),
      hbar(hbar_) {
  if (n_atoms < 0.0) throw InvalidArgument("atom number must be >= 0");
  if (a_scatt < 0.0) throw InvalidArgument("scattering length must be >= 0");
  if (!(box_l > 0.0)) throw InvalidArgument("condensate dimension must be > 0");
  if (d_sep < 0.0) throw InvalidArgument("vortex separation must be >= 0");
  if (!(mass > 0.0) || !(hbar > 0.0)) {
    throw InvalidArgument("mass and hbar must be > 0");
  }
}

Complex ratio_field(const HermiteGaussianState& s, const Vec3& pt,
                    double a_scatt) {
  Complex val = evaluate(s, pt);
  Complex lap = laplacian(s, pt);
  // Local field scale: the state's peak-amplitude proxy from its norm and
  // widths keeps the indeterminacy test independent of where pt sits.
  double scale =
      std::sqrt(norm_sq(s) * std::sqrt(s.widths[0] * s.widths[1] * s.widths[2]));
  if (std::abs(lap) < 1e-12 * scale) {
    throw NumericError("indeterminate ratio: |laplacian| below tolerance");
  }
  return 8.0 * std::numbers::pi * a_scatt * std::norm(val) * val / (-lap);
}

Complex ratio_field(const GridState& g, const Vec3& pt, double a_scatt) {
  const GridSpec& spec = g.spec;
  int idx[3];
  for (int a = 0; a < 3; ++a) {
    idx[a] = static_cast<int>(
        std::lround((pt[a] + spec.box[a]) / spec.step(a) - 0.5));
    if (idx[a] < 1 || idx[a] > spec.n[a] - 2) {
      throw InvalidArgument("point too close to the grid boundary");
    }
  }
  Complex val = g.at(idx[0], idx[1], idx[2]);
  Complex lap = 0.0;
  for (int a = 0; a < 3; ++a) {
    int ip[3] = {idx[0], idx[1], idx[2]};
    int im[3] = {idx[0], idx[1], idx[2]};
    ip[a] += 1;
    im[a] -= 1;
    double h = spec.step(a);
    lap += (g.at(ip[0], ip[1], ip[2]) + g.at(im[0], im[1], im[2]) -
            2.0 * val) /
           (h * h);
  }
  double scale = 0.0;
  for (const Complex& v : g.values) scale = std::max(scale, std::abs(v));
  double h2 = spec.step(0) * spec.step(0);
  if (std::abs(lap) < 1e-12 * scale / h2) {
    throw NumericError("indeterminate ratio: |laplacian| below tolerance");
  }
  return 8.0 * std::numbers::pi * a_scatt * std::norm(val) * val / (-lap);
}

double center_ratio(const GpParams& gp) {
  double L = gp.box_l, d = gp.d_sep;
  double L2 = L * L, L4 = L2 * L2, d2 = d * d, d4 = d2 * d2;
  return gp.n_atoms * gp.a_scatt * d4 * d2 /
         (std::sqrt(std::numbers::pi) * L * (L2 + 3.0 * d2 / 8.0) *
          (24.0 * L4 + d4));
}

double xi_estimate(const GpParams& gp) {
  double r = gp.d_sep / gp.box_l;
  double r2 = r * r;
  return gp.n_atoms * (gp.a_scatt / gp.box_l) * r2 * r2 * r2;
}

double vortex_timescale(const GpParams& gp) {
  return gp.mass * gp.d_sep * gp.d_sep / gp.hbar;
}

RegimeReport regime_report(const GpParams& gp, double trap_period,
                           double ratio_threshold, double timescale_factor) {
  if (!(trap_period > 0.0)) throw InvalidArgument("trap period must be > 0");
  RegimeReport rep;
  rep.xi = xi_estimate(gp);
  rep.center_ratio_value = center_ratio(gp);
  rep.t0_seconds = vortex_timescale(gp);
  rep.trap_period_seconds = trap_period;
  rep.ratio_threshold = ratio_threshold;
  rep.timescale_factor = timescale_factor;
  rep.nonlinearity_negligible = rep.center_ratio_value < ratio_threshold;
  rep.trap_negligible = rep.t0_seconds < trap_period / timescale_factor;
  rep.separation_warning = gp.separation_warning();
  return rep;
}

void write_regime_report(const RegimeReport& rep, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open for writing: " + path);
  out << "regime-report\n";
  out << "xi " << format_double(rep.xi) << '\n';
  out << "center_ratio " << format_double(rep.center_ratio_value) << '\n';
  out << "t0_seconds " << format_double(rep.t0_seconds) << '\n';
  out << "trap_period_seconds " << format_double(rep.trap_period_seconds)
      << '\n';
  out << "ratio_threshold " << format_double(rep.ratio_threshold) << '\n';
  out << "timescale_factor " << format_double(rep.timescale_factor) << '\n';
  out << "nonlinearity_negligible " << (rep.nonlinearity_negligible ? 1 : 0)
      << '\n';
  out << "trap_negligible " << (rep.trap_negligible ? 1 : 0) << '\n';
  out << "separation_warning " << (rep.separation_warning ? 1 : 0) << '\n';
  out << "xi_quoted " << format_double(rep.xi_quoted) << '\n';
  out << "t0_quoted_seconds " << format_double(rep.t0_quoted_seconds) << '\n';
  if (!out) throw IoError("write failed: " + path);
}

RegimeReport read_regime_report(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open: " + path);
  std::string tag;
  std::getline(in, tag);
  if (tag != "regime-report") throw IoError("not a regime report: " + path);
  RegimeReport rep;
  std::string key;
  double v;
  while (in >> key >> v) {
    if (key == "xi") rep.xi = v;
    else if (key == "center_ratio") rep.center_ratio_value = v;
    else if (key == "t0_seconds") rep.t0_seconds = v;
    else if (key == "trap_period_seconds") rep.trap_period_seconds = v;
    else if (key == "ratio_threshold") rep.ratio_threshold = v;
    else if (key == "timescale_factor") rep.timescale_factor = v;
    else if (key == "nonlinearity_negligible") rep.nonlinearity_negligible = v != 0;
    else if (key == "trap_negligible") rep.trap_negligible = v != 0;
    else if (key == "separation_warning") rep.separation_warning = v != 0;
    else if (key == "xi_quoted") rep.xi_quoted = v;
    else if (key == "t0_quoted_seconds") rep.t0_quoted_seconds = v;
    else throw IoError("unknown key in regime report: " + key);
  }
  return rep;
}

}  // namespace vlift

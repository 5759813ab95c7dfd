#include "analytic_state.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "errors.hpp"
#include "hermite.hpp"
#include "textio.hpp"

namespace vlift {

namespace {

const char* kAxisNames[3] = {"x", "y", "z"};

void check_widths(const Vec3& widths) {
  for (int a = 0; a < 3; ++a) {
    if (!(widths[a] > 0.0)) {
      throw InvalidArgument(std::string("state width along ") + kAxisNames[a] +
                            " must be positive");
    }
  }
}

void check_degree(const Index3& n) {
  for (int a = 0; a < 3; ++a) {
    if (n[a] < 0) throw InvalidArgument("negative Hermite index");
    if (n[a] > kMaxDegree) {
      throw InvalidArgument("polynomial degree exceeds supported maximum " +
                            std::to_string(kMaxDegree));
    }
  }
}

double factorial(int n) {
  double f = 1.0;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

int max_degree_along(const CoeffMap& coeffs, int axis) {
  int d = 0;
  for (const auto& [n, c] : coeffs) d = std::max(d, n[axis]);
  return d;
}

}  // namespace

TrapConfig::TrapConfig(const Vec3& tilde_omega_, double omega_sq_int_,
                       double norm_)
    : tilde_omega(tilde_omega_), omega_sq_int(omega_sq_int_), norm(norm_) {
  if (!(norm > 0.0)) throw InvalidArgument("norm must be positive");
  for (int a = 0; a < 3; ++a) {
    if (!(tilde_omega[a] > 0.0)) {
      throw InvalidArgument(std::string("trap frequency along ") +
                            kAxisNames[a] + " must be positive");
    }
    double w2 = tilde_omega[a] * tilde_omega[a] - norm * omega_sq_int;
    if (!(w2 > 0.0)) {
      throw FrequencyCollapseError(
          std::string("modified squared frequency collapses along ") +
          kAxisNames[a] + ": tilde_omega^2 - N*Omega^2 = " +
          format_double(w2));
    }
  }
}

Vec3 TrapConfig::modified_frequencies() const {
  Vec3 w;
  for (int a = 0; a < 3; ++a) {
    w[a] = std::sqrt(tilde_omega[a] * tilde_omega[a] - norm * omega_sq_int);
  }
  return w;
}

HermiteGaussianState make_ground_state(const Vec3& widths) {
  check_widths(widths);
  double c = 1.0;
  for (int a = 0; a < 3; ++a) c *= std::pow(widths[a] / std::numbers::pi, 0.25);
  HermiteGaussianState s;
  s.widths = widths;
  s.coeffs[{0, 0, 0}] = c;
  return s;
}

HermiteGaussianState make_single_vortex(double a_disp, const Vec3& widths) {
  CoeffMap poly;
  poly[{1, 0, 0}] = 1.0;
  poly[{0, 1, 0}] = Complex(0.0, 1.0);
  if (a_disp != 0.0) poly[{0, 0, 0}] = -a_disp;
  return state_from_polynomial(poly, widths, 1.0);
}

double two_line_normalization(double d, double box_l, double n_atoms) {
  HermiteGaussianState s = make_two_perpendicular_vortices(d, box_l, n_atoms);
  // A is the amplitude left on the pure (x*y -> H1*H1) mode after scaling:
  // that mode's polynomial coefficient is exactly A.
  CoeffMap mono = hermite_to_monomials(s.coeffs, s.widths);
  return mono.at({1, 1, 0}).real();
}

HermiteGaussianState make_two_perpendicular_vortices(double d, double box_l,
                                                     double n_atoms) {
  if (d < 0.0) throw InvalidArgument("vortex separation d must be >= 0");
  if (!(box_l > 0.0)) throw InvalidArgument("condensate dimension L must be positive");
  if (!(n_atoms > 0.0)) throw InvalidArgument("atom number N must be positive");
  const Complex i(0.0, 1.0);
  // (x + i(z - d/2))(y + i(z + d/2))
  //   = xy + i z (x + y) - z^2 + (i d / 2)(x - y) + d^2/4
  CoeffMap poly;
  poly[{1, 1, 0}] = 1.0;
  poly[{1, 0, 1}] = i;
  poly[{0, 1, 1}] = i;
  poly[{0, 0, 2}] = -1.0;
  if (d != 0.0) {
    poly[{1, 0, 0}] = i * (d / 2.0);
    poly[{0, 1, 0}] = -i * (d / 2.0);
    poly[{0, 0, 0}] = d * d / 4.0;
  }
  double w = 1.0 / (box_l * box_l);
  return state_from_polynomial(poly, {w, w, w}, n_atoms);
}

HermiteGaussianState state_from_polynomial(const CoeffMap& monomials,
                                           const Vec3& widths,
                                           double target_norm) {
  check_widths(widths);
  HermiteGaussianState s;
  s.widths = widths;
  s.coeffs = monomials_to_hermite(monomials, widths);
  if (target_norm > 0.0) {
    double raw = norm_sq(s);
    if (!(raw > 0.0)) throw InvalidArgument("cannot normalize a zero state");
    double f = std::sqrt(target_norm / raw);
    for (auto& [n, c] : s.coeffs) c *= f;
  }
  return s;
}

namespace {

// Per-axis table of H_n(sqrt(w) x) for n = 0..n_max.
struct AxisTable {
  double vals[kMaxDegree + 3];
};

void fill_tables(const HermiteGaussianState& s, const Vec3& r,
                 AxisTable t[3], int deg[3]) {
  for (int a = 0; a < 3; ++a) {
    deg[a] = max_degree_along(s.coeffs, a);
    hermite_values(deg[a], std::sqrt(s.widths[a]) * r[a], t[a].vals);
  }
}

double gaussian_factor(const Vec3& widths, const Vec3& r) {
  return std::exp(-0.5 * (widths[0] * r[0] * r[0] + widths[1] * r[1] * r[1] +
                          widths[2] * r[2] * r[2]));
}

}  // namespace

Complex evaluate(const HermiteGaussianState& s, const Vec3& r) {
  if (s.coeffs.empty()) return 0.0;
  AxisTable t[3];
  int deg[3];
  fill_tables(s, r, t, deg);
  Complex acc = 0.0;
  for (const auto& [n, c] : s.coeffs) {
    acc += c * (t[0].vals[n[0]] * t[1].vals[n[1]] * t[2].vals[n[2]]);
  }
  return acc * gaussian_factor(s.widths, r);
}

std::array<Complex, 3> gradient(const HermiteGaussianState& s, const Vec3& r) {
  std::array<Complex, 3> g{};
  for (int a = 0; a < 3; ++a) {
    HermiteGaussianState ds{s.widths, apply_derivative(s.coeffs, a, s.widths[a]),
                            s.time};
    g[a] = evaluate(ds, r);
  }
  return g;
}

Complex laplacian(const HermiteGaussianState& s, const Vec3& r) {
  Complex acc = 0.0;
  for (int a = 0; a < 3; ++a) {
    CoeffMap d2 = apply_derivative(apply_derivative(s.coeffs, a, s.widths[a]),
                                   a, s.widths[a]);
    acc += evaluate({s.widths, std::move(d2), s.time}, r);
  }
  return acc;
}

double basis_norm_sq(const Index3& n, const Vec3& widths) {
  double h = 1.0;
  for (int a = 0; a < 3; ++a) {
    h *= std::pow(2.0, n[a]) * factorial(n[a]) *
         std::sqrt(std::numbers::pi / widths[a]);
  }
  return h;
}

double norm_sq(const HermiteGaussianState& s) {
  double acc = 0.0;
  for (const auto& [n, c] : s.coeffs) acc += std::norm(c) * basis_norm_sq(n, s.widths);
  return acc;
}

Complex inner_product(const HermiteGaussianState& f,
                      const HermiteGaussianState& g) {
  for (int a = 0; a < 3; ++a) {
    if (f.widths[a] != g.widths[a]) {
      throw InvalidArgument("inner product requires identical widths");
    }
  }
  Complex acc = 0.0;
  for (const auto& [n, cg] : g.coeffs) {
    auto it = f.coeffs.find(n);
    if (it == f.coeffs.end()) continue;
    acc += std::conj(it->second) * cg * basis_norm_sq(n, f.widths);
  }
  return acc;
}

namespace {

// Applies a 1-D basis change along one axis: index k maps to the vector
// table[k] of (new index, weight) pairs.
CoeffMap convert_axis(const CoeffMap& in, int axis,
                      const std::vector<std::vector<double>>& table) {
  CoeffMap out;
  for (const auto& [n, c] : in) {
    const auto& row = table[n[axis]];
    for (int j = 0; j < static_cast<int>(row.size()); ++j) {
      if (row[j] == 0.0) continue;
      Index3 m = n;
      m[axis] = j;
      out[m] += c * row[j];
    }
  }
  return out;
}

}  // namespace

CoeffMap monomials_to_hermite(const CoeffMap& monomials, const Vec3& widths) {
  check_widths(widths);
  CoeffMap cur = monomials;
  for (const auto& [n, c] : cur) check_degree(n);
  for (int a = 0; a < 3; ++a) {
    int dmax = max_degree_along(cur, a);
    std::vector<std::vector<double>> table(dmax + 1);
    for (int k = 0; k <= dmax; ++k) {
      table[k] = monomial_over_hermite(k, std::sqrt(widths[a]));
    }
    cur = convert_axis(cur, a, table);
  }
  return cur;
}

CoeffMap hermite_to_monomials(const CoeffMap& coeffs, const Vec3& widths) {
  check_widths(widths);
  CoeffMap cur = coeffs;
  for (int a = 0; a < 3; ++a) {
    int dmax = max_degree_along(cur, a);
    std::vector<std::vector<double>> table(dmax + 1);
    for (int k = 0; k <= dmax; ++k) {
      table[k] = hermite_over_monomials(k, std::sqrt(widths[a]));
    }
    cur = convert_axis(cur, a, table);
  }
  return cur;
}

CoeffMap apply_position(const CoeffMap& coeffs, int axis, double width) {
  double s = std::sqrt(width);
  CoeffMap out;
  for (const auto& [n, c] : coeffs) {
    Index3 up = n;
    up[axis] += 1;
    out[up] += c / (2.0 * s);
    if (n[axis] > 0) {
      Index3 down = n;
      down[axis] -= 1;
      out[down] += c * (static_cast<double>(n[axis]) / s);
    }
  }
  return out;
}

CoeffMap apply_derivative(const CoeffMap& coeffs, int axis, double width) {
  double s = std::sqrt(width);
  CoeffMap out;
  for (const auto& [n, c] : coeffs) {
    Index3 up = n;
    up[axis] += 1;
    out[up] -= c * (s / 2.0);
    if (n[axis] > 0) {
      Index3 down = n;
      down[axis] -= 1;
      out[down] += c * (static_cast<double>(n[axis]) * s);
    }
  }
  return out;
}

Complex evaluate_monomials(const CoeffMap& monomials, const Vec3& r) {
  Complex acc = 0.0;
  for (const auto& [n, c] : monomials) {
    double p = 1.0;
    for (int a = 0; a < 3; ++a) {
      for (int k = 0; k < n[a]; ++k) p *= r[a];
    }
    acc += c * p;
  }
  return acc;
}

void save_state(const HermiteGaussianState& s, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open for writing: " + path);
  out << "hermite-gaussian-state\n";
  out << "widths " << format_double(s.widths[0]) << ' '
      << format_double(s.widths[1]) << ' ' << format_double(s.widths[2])
      << '\n';
  out << "time " << format_double(s.time) << '\n';
  out << "coeffs " << s.coeffs.size() << '\n';
  for (const auto& [n, c] : s.coeffs) {
    out << n[0] << ' ' << n[1] << ' ' << n[2] << ' '
        << format_double(c.real()) << ' ' << format_double(c.imag()) << '\n';
  }
  if (!out) throw IoError("write failed: " + path);
}

HermiteGaussianState load_state(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open: " + path);
  std::string tag;
  std::getline(in, tag);
  if (tag != "hermite-gaussian-state") {
    throw IoError("not a state file: " + path);
  }
  HermiteGaussianState s;
  std::string key;
  size_t count = 0;
  if (!(in >> key >> s.widths[0] >> s.widths[1] >> s.widths[2]) ||
      key != "widths") {
    throw IoError("malformed widths line in " + path);
  }
  if (!(in >> key >> s.time) || key != "time") {
    throw IoError("malformed time line in " + path);
  }
  if (!(in >> key >> count) || key != "coeffs") {
    throw IoError("malformed coeffs line in " + path);
  }
  for (size_t i = 0; i < count; ++i) {
    Index3 n;
    double re, im;
    if (!(in >> n[0] >> n[1] >> n[2] >> re >> im)) {
      throw IoError("truncated coefficient list in " + path);
    }
    check_degree(n);
    s.coeffs[n] = Complex(re, im);
  }
  check_widths(s.widths);
  return s;
}

}  // namespace vlift

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <numbers>
#include <random>

#include "errors.hpp"
#include "linear_evolution.hpp"
#include "moment_dynamics.hpp"
#include "oracle_helpers.hpp"

using namespace vlift;
using vltest::quad3;

namespace {

// Brute-force quadrature moments (density integrals; derivatives by central
// differences), independent of the ladder-operator path.
GlobalMoments quad_moments(const HermiteGaussianState& s, double box, int n) {
  GlobalMoments m;
  m.time = s.time;
  double h = 1e-5;
  auto dpsi = [&](const Vec3& r, int axis) {
    Vec3 rp = r, rm = r;
    rp[axis] += h;
    rm[axis] -= h;
    return (evaluate(s, rp) - evaluate(s, rm)) / (2.0 * h);
  };
  m.n = quad3([&](const Vec3& r) { return std::norm(evaluate(s, r)); }, box, n);
  for (int a = 0; a < 3; ++a) {
    m.r[a] = quad3(
        [&](const Vec3& r) { return r[a] * std::norm(evaluate(s, r)); }, box, n);
    m.p[a] = quad3(
        [&](const Vec3& r) {
          return std::imag(std::conj(evaluate(s, r)) * dpsi(r, a));
        },
        box, n);
    double x2 = quad3(
        [&](const Vec3& r) { return r[a] * r[a] * std::norm(evaluate(s, r)); },
        box, n);
    double t2 = quad3([&](const Vec3& r) { return std::norm(dpsi(r, a)); }, box,
                      n);
    double xw = quad3(
        [&](const Vec3& r) {
          return r[a] * std::imag(std::conj(evaluate(s, r)) * dpsi(r, a));
        },
        box, n);
    m.u[a] = 0.5 * x2 - m.r[a] * m.r[a] / (2.0 * m.n);
    m.t_kin[a] = 0.5 * t2 - m.p[a] * m.p[a] / (2.0 * m.n);
    m.w[a] = 0.5 * xw - m.r[a] * m.p[a] / (2.0 * m.n);
  }
  return m;
}

void check_close(const GlobalMoments& a, const GlobalMoments& b, double tol) {
  CHECK(std::abs(a.n - b.n) <= tol * (1.0 + std::abs(b.n)));
  for (int i = 0; i < 3; ++i) {
    CHECK(std::abs(a.r[i] - b.r[i]) <= tol * (1.0 + std::abs(b.r[i])));
    CHECK(std::abs(a.p[i] - b.p[i]) <= tol * (1.0 + std::abs(b.p[i])));
    CHECK(std::abs(a.u[i] - b.u[i]) <= tol * (1.0 + std::abs(b.u[i])));
    CHECK(std::abs(a.t_kin[i] - b.t_kin[i]) <=
          tol * (1.0 + std::abs(b.t_kin[i])));
    CHECK(std::abs(a.w[i] - b.w[i]) <= tol * (1.0 + std::abs(b.w[i])));
  }
}

}  // namespace

TEST_CASE("unit ground state: R=P=W=0, Uxx=Txx=1/4") {
  auto s = make_ground_state({1.0, 1.0, 1.0});
  auto m = compute_moments(s);
  CHECK(m.n == doctest::Approx(1.0).epsilon(1e-14));
  for (int a = 0; a < 3; ++a) {
    CHECK(std::abs(m.r[a]) < 1e-14);
    CHECK(std::abs(m.p[a]) < 1e-14);
    CHECK(std::abs(m.w[a]) < 1e-14);
    // <x^2> = 1/(2 w): U = <x^2>/2 = 1/4; T likewise.
    CHECK(m.u[a] == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(m.t_kin[a] == doctest::Approx(0.25).epsilon(1e-14));
  }
}

TEST_CASE("single-vortex moments match the quadrature oracle") {
  double a_disp = 0.7;
  Vec3 w{1.0, 1.0, 1.0};
  auto s = make_single_vortex(a_disp, w);
  auto m = compute_moments(s);

  // Closed forms from the density integrals, S = 1/(2wx) + 1/(2wy) + a^2:
  // Rx = -a / (wx S), Py = -a / S; all other R, P components vanish.
  double S = 0.5 / w[0] + 0.5 / w[1] + a_disp * a_disp;
  CHECK(m.r[0] == doctest::Approx(-a_disp / (w[0] * S)).epsilon(1e-12));
  CHECK(m.p[1] == doctest::Approx(-a_disp / S).epsilon(1e-12));
  CHECK(std::abs(m.r[1]) < 1e-14);
  CHECK(std::abs(m.r[2]) < 1e-14);
  CHECK(std::abs(m.p[0]) < 1e-14);
  CHECK(std::abs(m.p[2]) < 1e-14);

  auto q = quad_moments(s, 9.0, 72);
  check_close(m, q, 2e-6);

  // Anisotropic cross-check too.
  auto s2 = make_single_vortex(0.5, {1.3, 0.8, 1.1});
  check_close(compute_moments(s2), quad_moments(s2, 10.0, 72), 2e-6);
}

TEST_CASE("uncertainty-type bound holds for assorted states") {
  std::mt19937 rng(31);
  for (int rep = 0; rep < 5; ++rep) {
    auto s = vltest::random_state(rng, {1.0, 1.3, 0.8}, 3);
    auto m = compute_moments(s);
    for (int a = 0; a < 3; ++a) {
      CHECK(m.u[a] >= 0.0);
      CHECK(m.t_kin[a] >= 0.0);
      CHECK(m.u[a] * m.t_kin[a] - m.w[a] * m.w[a] >= -1e-12);
    }
  }
}

TEST_CASE("translated state: R shifts, U/T/W invariant") {
  Vec3 widths{1.0, 1.2, 0.9};
  double a_disp = 0.6;
  auto s = make_single_vortex(a_disp, widths);
  auto m = compute_moments(s);

  // Quadrature moments of the rigidly translated field.
  Vec3 shift{0.4, -0.7, 0.25};
  auto eval_shifted = [&](const Vec3& r) {
    return evaluate(s, sub(r, shift));
  };
  double h = 1e-5;
  GlobalMoments q;
  q.n = quad3([&](const Vec3& r) { return std::norm(eval_shifted(r)); }, 10.0,
              72);
  for (int a = 0; a < 3; ++a) {
    q.r[a] = quad3(
        [&](const Vec3& r) { return r[a] * std::norm(eval_shifted(r)); }, 10.0,
        72);
    auto dpsi = [&](const Vec3& r) {
      Vec3 rp = r, rm = r;
      rp[a] += h;
      rm[a] -= h;
      return (eval_shifted(rp) - eval_shifted(rm)) / (2.0 * h);
    };
    double x2 = quad3(
        [&](const Vec3& r) { return r[a] * r[a] * std::norm(eval_shifted(r)); },
        10.0, 72);
    q.u[a] = 0.5 * x2 - q.r[a] * q.r[a] / (2.0 * q.n);
    double t2 =
        quad3([&](const Vec3& r) { return std::norm(dpsi(r)); }, 10.0, 72);
    double p = quad3(
        [&](const Vec3& r) {
          return std::imag(std::conj(eval_shifted(r)) * dpsi(r));
        },
        10.0, 72);
    q.t_kin[a] = 0.5 * t2 - p * p / (2.0 * q.n);
  }
  for (int a = 0; a < 3; ++a) {
    CHECK(q.r[a] ==
          doctest::Approx(m.r[a] + shift[a] * m.n).epsilon(1e-5));
    CHECK(q.u[a] == doctest::Approx(m.u[a]).epsilon(1e-5));
    CHECK(q.t_kin[a] == doctest::Approx(m.t_kin[a]).epsilon(1e-5));
  }
}

TEST_CASE("evolve_moments: identity, stationarity, quarter period") {
  TrapConfig cfg({1.2, 0.9, 1.5}, 0.13, 1.0);
  Vec3 wmod = cfg.modified_frequencies();
  auto s = make_ground_state(wmod);
  auto m0 = compute_moments(s);

  auto same = evolve_moments(m0, cfg, 0.0);
  check_close(same, m0, 1e-15);

  // Ground state of the modified trap: T = w^2 U, W = 0 -> U, T constant.
  for (double t : {0.3, 1.1, 2.7}) {
    auto mt = evolve_moments(m0, cfg, t);
    for (int a = 0; a < 3; ++a) {
      CHECK(mt.u[a] == doctest::Approx(m0.u[a]).epsilon(1e-12));
      CHECK(mt.t_kin[a] == doctest::Approx(m0.t_kin[a]).epsilon(1e-12));
      CHECK(std::abs(mt.w[a]) < 1e-12);
    }
  }

  // Quarter period of the x-quadrupole: U and T swap (scaled by wx^2).
  GlobalMoments m1 = m0;
  m1.u[0] = 0.4;
  m1.t_kin[0] = 0.1;
  double t_quarter = 0.5 * std::numbers::pi / wmod[0];
  auto mq = evolve_moments(m1, cfg, t_quarter);
  CHECK(mq.u[0] ==
        doctest::Approx(m1.t_kin[0] / (wmod[0] * wmod[0])).epsilon(1e-12));
  CHECK(mq.t_kin[0] ==
        doctest::Approx(wmod[0] * wmod[0] * m1.u[0]).epsilon(1e-12));
}

TEST_CASE("R,P periodic at trap frequencies; U,T,W at doubled modified") {
  TrapConfig cfg({1.3, 1.0, 0.8}, -0.21, 1.0);
  Vec3 wmod = cfg.modified_frequencies();
  std::mt19937 rng(5);
  auto s = vltest::random_state(rng, wmod, 3);
  auto m0 = compute_moments(s);
  for (int a = 0; a < 3; ++a) {
    double t_rp = 2.0 * std::numbers::pi / cfg.tilde_omega[a];
    auto m1 = evolve_moments(m0, cfg, t_rp);
    CHECK(std::abs(m1.r[a] - m0.r[a]) < 1e-10);
    CHECK(std::abs(m1.p[a] - m0.p[a]) < 1e-10);
    double t_utw = std::numbers::pi / wmod[a];
    auto m2 = evolve_moments(m0, cfg, t_utw);
    CHECK(std::abs(m2.u[a] - m0.u[a]) < 1e-10);
    CHECK(std::abs(m2.t_kin[a] - m0.t_kin[a]) < 1e-10);
    CHECK(std::abs(m2.w[a] - m0.w[a]) < 1e-10);
  }
}

TEST_CASE("T + w^2 U is conserved along the closed forms") {
  TrapConfig cfg({1.1, 1.4, 0.9}, 0.2, 1.3);
  Vec3 wmod = cfg.modified_frequencies();
  std::mt19937 rng(9);
  auto s = vltest::random_state(rng, wmod, 4, 1.3);
  auto m0 = compute_moments(s);
  for (double t : {0.37, 1.9, 4.4}) {
    auto mt = evolve_moments(m0, cfg, t);
    for (int a = 0; a < 3; ++a) {
      double e0 = m0.t_kin[a] + wmod[a] * wmod[a] * m0.u[a];
      double et = mt.t_kin[a] + wmod[a] * wmod[a] * mt.u[a];
      CHECK(et == doctest::Approx(e0).epsilon(1e-12));
    }
  }
}

TEST_CASE("compute o evolve_linear == evolve_moments o compute (no coupling)") {
  TrapConfig cfg({1.2, 0.8, 1.05}, 0.0, 1.0);
  Vec3 w = cfg.tilde_omega;
  std::mt19937 rng(12);
  auto s = vltest::random_state(rng, w, 3);
  auto m0 = compute_moments(s);
  for (double t : {0.5, 1.7}) {
    auto via_state = compute_moments(evolve_linear(s, w, t));
    auto via_closed = evolve_moments(m0, cfg, t);
    check_close(via_state, via_closed, 1e-10);
  }
}

TEST_CASE("ODE residual: closed-form trajectory, stationary control, order") {
  TrapConfig cfg({1.25, 0.95, 1.4}, 0.17, 1.0);
  Vec3 wmod = cfg.modified_frequencies();
  std::mt19937 rng(23);
  auto s = vltest::random_state(rng, wmod, 3);
  auto m0 = compute_moments(s);

  auto make_traj = [&](double dt, int count) {
    std::vector<GlobalMoments> traj;
    for (int i = 0; i < count; ++i) traj.push_back(evolve_moments(m0, cfg, i * dt));
    return traj;
  };

  auto res1 = moment_ode_residual(make_traj(1e-3, 41), cfg);
  CHECK(res1.max() < 1e-5);

  // Halving dt quarters the central-difference error.
  auto res2 = moment_ode_residual(make_traj(5e-4, 81), cfg);
  double ratio = res1.max() / res2.max();
  CHECK(ratio > 3.5);
  CHECK(ratio < 4.5);

  // Stationary ground-state moments solve the system exactly.
  auto ground = compute_moments(make_ground_state(wmod));
  std::vector<GlobalMoments> flat;
  for (int i = 0; i < 9; ++i) {
    auto g = ground;
    g.time = i * 0.01;
    flat.push_back(g);
  }
  CHECK(moment_ode_residual(flat, cfg).max() < 1e-12);
}

TEST_CASE("residual input validation") {
  TrapConfig cfg({1.0, 1.0, 1.0}, 0.0, 1.0);
  auto m = compute_moments(make_ground_state({1, 1, 1}));
  std::vector<GlobalMoments> too_few(3, m);
  CHECK_THROWS_AS(moment_ode_residual(too_few, cfg), InvalidArgument);
  std::vector<GlobalMoments> uneven(6, m);
  for (int i = 0; i < 6; ++i) uneven[i].time = i * i * 0.01;
  CHECK_THROWS_AS(moment_ode_residual(uneven, cfg), InvalidArgument);
}

TEST_CASE("zero state rejected") {
  HermiteGaussianState z{{1, 1, 1}, {}, 0.0};
  CHECK_THROWS_AS(compute_moments(z), InvalidArgument);
}

TEST_CASE("moments CSV: header, shape, deterministic bytes") {
  TrapConfig cfg({1.2, 1.0, 0.9}, 0.1, 1.0);
  auto m0 = compute_moments(make_single_vortex(0.4, cfg.modified_frequencies()));
  std::vector<GlobalMoments> traj;
  for (int i = 0; i < 5; ++i) traj.push_back(evolve_moments(m0, cfg, 0.2 * i));
  auto dir = std::filesystem::temp_directory_path();
  auto p1 = dir / "vlift_m1.csv";
  auto p2 = dir / "vlift_m2.csv";
  write_moments_csv(traj, cfg, p1.string());
  write_moments_csv(traj, cfg, p2.string());
  std::ifstream f1(p1), f2(p2);
  std::string s1((std::istreambuf_iterator<char>(f1)), {});
  std::string s2((std::istreambuf_iterator<char>(f2)), {});
  CHECK(s1 == s2);
  CHECK(s1.substr(0, s1.find('\n')) ==
        "time,N,Rx,Ry,Rz,Px,Py,Pz,Uxx,Uyy,Uzz,Txx,Tyy,Tzz,Wxx,Wyy,Wzz,Ex,Ey,Ez");
  // time + 19 quantity columns per row
  std::string first_row = s1.substr(s1.find('\n') + 1);
  first_row = first_row.substr(0, first_row.find('\n'));
  CHECK(std::count(first_row.begin(), first_row.end(), ',') == 19);
  std::filesystem::remove(p1);
  std::filesystem::remove(p2);
}

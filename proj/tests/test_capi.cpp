// Exercises the shared-library surface exactly as an external C consumer
// would: handles, status codes, and the thread-local error message.
#include <doctest.h>

#include <cmath>
#include <cstring>
#include <filesystem>
#include <string>

#include "vortexlift.h"

namespace {

struct Handles {
  vl_trap* trap = nullptr;
  vl_state* phi0 = nullptr;
  ~Handles() {
    vl_state_destroy(phi0);
    vl_trap_destroy(trap);
  }
};

}  // namespace

TEST_CASE("trap creation, collapse diagnostics, modified frequencies") {
  double om[3] = {1.3, 1.0, 1.45};
  vl_trap* trap = nullptr;
  REQUIRE(vl_trap_create(om, 0.21, 1.0, &trap) == VL_OK);
  double w[3];
  REQUIRE(vl_trap_modified_frequencies(trap, w) == VL_OK);
  for (int a = 0; a < 3; ++a) {
    CHECK(w[a] == doctest::Approx(std::sqrt(om[a] * om[a] - 0.21)));
  }
  vl_trap_destroy(trap);

  vl_trap* bad = nullptr;
  CHECK(vl_trap_create(om, 1.5, 1.0, &bad) == VL_ERR_FREQUENCY_COLLAPSE);
  CHECK(std::string(vl_last_error()).find("along y") != std::string::npos);

  double neg[3] = {1.0, -1.0, 1.0};
  CHECK(vl_trap_create(neg, 0.0, 1.0, &bad) == VL_ERR_INVALID_ARGUMENT);
  CHECK(vl_trap_create(nullptr, 0.0, 1.0, &bad) == VL_ERR_INVALID_ARGUMENT);
}

TEST_CASE("state lifecycle: build, evaluate, save/load, evolve") {
  double widths[3] = {1.0, 1.0, 1.0};
  vl_state* ground = nullptr;
  REQUIRE(vl_state_ground(widths, &ground) == VL_OK);
  double n = 0;
  REQUIRE(vl_state_norm_sq(ground, &n) == VL_OK);
  CHECK(n == doctest::Approx(1.0).epsilon(1e-14));
  double origin[3] = {0, 0, 0};
  double v[2];
  REQUIRE(vl_state_evaluate(ground, origin, v) == VL_OK);
  CHECK(v[0] == doctest::Approx(std::pow(M_PI, -0.75)).epsilon(1e-14));
  CHECK(v[1] == doctest::Approx(0.0));

  auto path = std::filesystem::temp_directory_path() / "vlift_capi_state.txt";
  REQUIRE(vl_state_save(ground, path.string().c_str()) == VL_OK);
  vl_state* loaded = nullptr;
  REQUIRE(vl_state_load(path.string().c_str(), &loaded) == VL_OK);
  double n2 = 0;
  REQUIRE(vl_state_norm_sq(loaded, &n2) == VL_OK);
  CHECK(n2 == n);
  std::filesystem::remove(path);

  vl_state* evolved = nullptr;
  REQUIRE(vl_state_evolve_linear(ground, widths, 0.7, &evolved) == VL_OK);
  double t = 0;
  REQUIRE(vl_state_time(evolved, &t) == VL_OK);
  CHECK(t == doctest::Approx(0.7));
  // Wrong trap frequencies rejected.
  double other[3] = {1.2, 1.0, 1.0};
  vl_state* nope = nullptr;
  CHECK(vl_state_evolve_linear(ground, other, 0.7, &nope) ==
        VL_ERR_INVALID_ARGUMENT);

  double probes[9] = {0.3, -0.2, 0.5, -1.0, 0.4, 0.1, 0.0, 0.9, -0.7};
  double res = 0;
  REQUIRE(vl_state_linear_residual(evolved, widths, probes, 3, &res) == VL_OK);
  CHECK(res < 1e-10);

  vl_state_destroy(evolved);
  vl_state_destroy(loaded);
  vl_state_destroy(ground);

  CHECK(vl_state_load("/nonexistent/file.txt", &nope) == VL_ERR_IO);
}

TEST_CASE("lift through the C surface matches the state at t=0") {
  Handles h;
  double om[3] = {1.3, 1.0, 1.45};
  REQUIRE(vl_trap_create(om, 0.21, 1.0, &h.trap) == VL_OK);
  double w[3];
  REQUIRE(vl_trap_modified_frequencies(h.trap, w) == VL_OK);
  REQUIRE(vl_state_single_vortex(0.6, w, &h.phi0) == VL_OK);

  vl_lifted* at0 = nullptr;
  REQUIRE(vl_lift(h.phi0, h.trap, 0.0, &at0) == VL_OK);
  double r[3] = {0.4, -0.3, 0.8};
  double a[2], b[2];
  REQUIRE(vl_state_evaluate(h.phi0, r, a) == VL_OK);
  REQUIRE(vl_lifted_evaluate(at0, r, b) == VL_OK);
  CHECK(a[0] == b[0]);
  CHECK(a[1] == b[1]);
  vl_lifted_destroy(at0);

  vl_lifted* later = nullptr;
  REQUIRE(vl_lift(h.phi0, h.trap, 1.3, &later) == VL_OK);
  double av[3], bv[3], f;
  REQUIRE(vl_lifted_abf(later, av, bv, &f) == VL_OK);
  CHECK((std::abs(bv[0]) + std::abs(bv[1])) > 1e-3);
  double probes[6] = {0.2, 0.1, -0.5, -0.8, 0.9, 0.3};
  double res = 0;
  REQUIRE(vl_lifted_residual(later, probes, 2, &res) == VL_OK);
  CHECK(res < 1e-8);

  vl_moments m;
  REQUIRE(vl_moments_of_lifted(later, &m) == VL_OK);
  CHECK(m.n == doctest::Approx(1.0).epsilon(1e-12));
  vl_lifted_destroy(later);

  // Norm-mismatched input rejected through the C boundary.
  vl_trap* heavier = nullptr;
  REQUIRE(vl_trap_create(om, 0.21, 2.0, &heavier) == VL_OK);
  vl_lifted* nope = nullptr;
  CHECK(vl_lift(h.phi0, heavier, 0.5, &nope) == VL_ERR_INVALID_ARGUMENT);
  vl_trap_destroy(heavier);
}

TEST_CASE("moments across the C boundary") {
  Handles h;
  double om[3] = {1.2, 1.0, 0.9};
  REQUIRE(vl_trap_create(om, 0.1, 1.0, &h.trap) == VL_OK);
  double w[3];
  REQUIRE(vl_trap_modified_frequencies(h.trap, w) == VL_OK);
  REQUIRE(vl_state_single_vortex(0.5, w, &h.phi0) == VL_OK);

  vl_moments m0;
  REQUIRE(vl_moments_of_state(h.phi0, &m0) == VL_OK);
  CHECK(m0.n == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(m0.r[0] < 0.0);
  CHECK(m0.p[1] < 0.0);

  vl_moments m1;
  REQUIRE(vl_moments_evolve(&m0, h.trap, 0.8, &m1) == VL_OK);
  CHECK(m1.n == doctest::Approx(m0.n));
  CHECK(m1.time == doctest::Approx(0.8));

  vl_moments traj[3] = {m0, m1, m1};
  auto path = std::filesystem::temp_directory_path() / "vlift_capi_m.csv";
  REQUIRE(vl_moments_write_csv(traj, 3, h.trap, path.string().c_str()) == VL_OK);
  CHECK(std::filesystem::file_size(path) > 100);
  std::filesystem::remove(path);
}

TEST_CASE("vortex kinematics and tracing through the C surface") {
  double iso[3] = {1.0, 1.0, 1.0};
  double x, y, det;
  int unbounded;
  REQUIRE(vl_single_vortex_zero(0.8, iso, 1.1, &x, &y, &det, &unbounded) ==
          VL_OK);
  CHECK_FALSE(unbounded);
  CHECK(x * x + y * y == doctest::Approx(0.64).epsilon(1e-12));

  double aniso[3] = {2.0, 1.0, 1.0};
  REQUIRE(vl_single_vortex_zero(0.8, aniso, M_PI / 2.0, &x, &y, &det,
                                &unbounded) == VL_OK);
  CHECK(unbounded);

  vl_state* vortex = nullptr;
  REQUIRE(vl_state_single_vortex(1.0, iso, &vortex) == VL_OK);
  double window[4] = {-3, 3, -3, 3};
  double zeros[8];
  size_t count = 0;
  REQUIRE(vl_state_find_zeros(vortex, 2, 0.0, window, 24, zeros, 2, &count) ==
          VL_OK);
  REQUIRE(count == 1);
  CHECK(zeros[0] == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(zeros[3] == doctest::Approx(1.0));  // charge

  int n[3] = {24, 24, 24};
  double box[3] = {7.5, 7.5, 7.5};
  vl_grid* g = nullptr;
  REQUIRE(vl_grid_sample_state(vortex, n, box, &g) == VL_OK);
  vl_polylines* lines = nullptr;
  REQUIRE(vl_grid_trace_lines(g, 1e-12, &lines) == VL_OK);
  size_t nlines = 0;
  REQUIRE(vl_polylines_count(lines, &nlines) == VL_OK);
  CHECK(nlines == 1);
  size_t npts = 0;
  int charge = 0, closed = 1;
  REQUIRE(vl_polylines_line_info(lines, 0, &npts, &charge, &closed) == VL_OK);
  CHECK(npts >= 23);
  CHECK(charge == 1);
  CHECK(closed == 0);
  char sig[64];
  REQUIRE(vl_polylines_signature(lines, sig, sizeof(sig)) == VL_OK);
  CHECK(std::string(sig) == "z-:z+");
  CHECK(vl_polylines_line_info(lines, 7, &npts, &charge, &closed) ==
        VL_ERR_INVALID_ARGUMENT);
  vl_polylines_destroy(lines);
  vl_grid_destroy(g);
  vl_state_destroy(vortex);
}

TEST_CASE("grid sampling, stepping and files through the C surface") {
  double om[3] = {1.2, 1.0, 1.4};
  vl_trap* trap = nullptr;
  REQUIRE(vl_trap_create(om, 0.15, 1.0, &trap) == VL_OK);
  double w[3];
  REQUIRE(vl_trap_modified_frequencies(trap, w) == VL_OK);
  vl_state* phi0 = nullptr;
  REQUIRE(vl_state_single_vortex(0.4, w, &phi0) == VL_OK);

  int n[3] = {32, 32, 32};
  double box[3] = {9.0, 9.0, 9.0};
  vl_grid* g = nullptr;
  REQUIRE(vl_grid_sample_state(phi0, n, box, &g) == VL_OK);
  double norm0 = 0;
  REQUIRE(vl_grid_norm_sq(g, &norm0) == VL_OK);
  CHECK(norm0 == doctest::Approx(1.0).epsilon(1e-8));

  REQUIRE(vl_grid_step_harmonic(g, trap, 1e-3, 100) == VL_OK);
  double t = 0;
  REQUIRE(vl_grid_time(g, &t) == VL_OK);
  CHECK(t == doctest::Approx(0.1).epsilon(1e-12));

  vl_lifted* exact = nullptr;
  REQUIRE(vl_lift(phi0, trap, 0.1, &exact) == VL_OK);
  vl_grid* ge = nullptr;
  REQUIRE(vl_grid_sample_lifted(exact, n, box, &ge) == VL_OK);
  double dist = 0;
  REQUIRE(vl_grid_l2_distance(g, ge, &dist) == VL_OK);
  CHECK(dist < 1e-5);

  auto path = std::filesystem::temp_directory_path() / "vlift_capi_grid.bin";
  REQUIRE(vl_grid_save(g, path.string().c_str()) == VL_OK);
  vl_grid* loaded = nullptr;
  REQUIRE(vl_grid_load(path.string().c_str(), &loaded) == VL_OK);
  double dist2 = 0;
  REQUIRE(vl_grid_l2_distance(g, loaded, &dist2) == VL_OK);
  CHECK(dist2 == 0.0);
  std::filesystem::remove(path);

  // Contact stepper smoke: zero coupling conserves the norm.
  vl_gp_params gp{1.0, 0.0, 1.0, 0.1, 1.0, 1.0};
  REQUIRE(vl_grid_step_contact(g, w[0], &gp, 1e-3, 10) == VL_OK);
  double norm1 = 0;
  REQUIRE(vl_grid_norm_sq(g, &norm1) == VL_OK);
  CHECK(norm1 == doctest::Approx(norm0).epsilon(1e-9));

  vl_grid_destroy(loaded);
  vl_grid_destroy(ge);
  vl_grid_destroy(g);
  vl_lifted_destroy(exact);
  vl_state_destroy(phi0);
  vl_trap_destroy(trap);
}

TEST_CASE("contact estimates and the regime report") {
  vl_gp_params sodium{1e6, 5e-9, 5e-5, 1e-6, 3.81754e-26, 1.054571817e-34};
  double xi = 0, t0 = 0, cr = 0;
  REQUIRE(vl_gp_xi(&sodium, &xi) == VL_OK);
  REQUIRE(vl_gp_t0(&sodium, &t0) == VL_OK);
  REQUIRE(vl_gp_center_ratio(&sodium, &cr) == VL_OK);
  CHECK(xi > 0);
  CHECK(t0 == doctest::Approx(3.62058e-4).epsilon(1e-4));
  CHECK(cr < 1e-2);

  vl_regime_report rep;
  REQUIRE(vl_gp_regime_report(&sodium, 1e-2, 1e-2, 10.0, &rep) == VL_OK);
  CHECK(rep.nonlinearity_negligible == 1);
  CHECK(rep.trap_negligible == 1);
  CHECK(rep.xi_quoted == doctest::Approx(1e-3));
  CHECK(rep.t0_quoted_seconds == doctest::Approx(3e-4));
  auto path = std::filesystem::temp_directory_path() / "vlift_capi_regime.txt";
  REQUIRE(vl_gp_regime_write(&rep, path.string().c_str()) == VL_OK);
  CHECK(std::filesystem::file_size(path) > 50);
  std::filesystem::remove(path);

  // Ratio field at the center of a natural-unit two-line state.
  vl_state* s = nullptr;
  REQUIRE(vl_state_two_perpendicular_vortices(0.4, 1.0, 2.0, &s) == VL_OK);
  double pt[3] = {0, 0, 0};
  double ratio[2];
  REQUIRE(vl_gp_ratio_at(s, pt, 0.01, ratio) == VL_OK);
  vl_gp_params natural{2.0, 0.01, 1.0, 0.4, 1.0, 1.0};
  double closed = 0;
  REQUIRE(vl_gp_center_ratio(&natural, &closed) == VL_OK);
  CHECK(ratio[0] == doctest::Approx(closed).epsilon(1e-8));
  vl_state_destroy(s);
}

TEST_CASE("box-too-small maps to its own status") {
  double widths[3] = {1.0, 1.0, 1.0};
  vl_state* ground = nullptr;
  REQUIRE(vl_state_ground(widths, &ground) == VL_OK);
  int n[3] = {16, 16, 16};
  double box[3] = {2.0, 2.0, 2.0};
  vl_grid* g = nullptr;
  CHECK(vl_grid_sample_state(ground, n, box, &g) == VL_ERR_BOX_TOO_SMALL);
  CHECK(std::strlen(vl_last_error()) > 0);
  vl_state_destroy(ground);
}

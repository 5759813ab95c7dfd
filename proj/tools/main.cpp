// vlift: batch front-end over the vortexlift C API. Builds configured
// scenarios, runs analytic and split-step evolutions, and writes CSV/JSON
// artifacts for plotting.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "config.hpp"
#include "vortexlift.h"

namespace fs = std::filesystem;
using vliftcli::Config;
using vliftcli::ConfigError;

namespace {

struct NumericFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void check(vl_status st) {
  if (st == VL_OK) return;
  if (st == VL_ERR_NUMERIC) throw NumericFailure(vl_last_error());
  throw ConfigError(vl_last_error());
}

using TrapPtr = std::unique_ptr<vl_trap, decltype(&vl_trap_destroy)>;
using StatePtr = std::unique_ptr<vl_state, decltype(&vl_state_destroy)>;
using LiftedPtr = std::unique_ptr<vl_lifted, decltype(&vl_lifted_destroy)>;
using GridPtr = std::unique_ptr<vl_grid, decltype(&vl_grid_destroy)>;
using LinesPtr = std::unique_ptr<vl_polylines, decltype(&vl_polylines_destroy)>;

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

TrapPtr build_trap(const Config& cfg) {
  auto om = cfg.get_doubles("trap", "omega_tilde", 3);
  double omega_tilde[3] = {om[0], om[1], om[2]};
  vl_trap* trap = nullptr;
  check(vl_trap_create(omega_tilde, cfg.get_double_or("trap", "omega_sq_int", 0.0),
                       cfg.get_double_or("trap", "norm", 1.0), &trap));
  return TrapPtr(trap, vl_trap_destroy);
}

StatePtr build_state(const Config& cfg, const vl_trap* trap) {
  std::string kind = cfg.get_string("state", "kind");
  double widths[3] = {0, 0, 0};
  bool needs_widths = (kind == "ground" || kind == "vortex");
  if (cfg.has("state", "widths")) {
    auto w = cfg.get_doubles("state", "widths", 3);
    widths[0] = w[0];
    widths[1] = w[1];
    widths[2] = w[2];
  } else if (trap) {
    check(vl_trap_modified_frequencies(trap, widths));
  } else if (needs_widths) {
    throw ConfigError("[state] widths required when no [trap] is given");
  }
  vl_state* s = nullptr;
  if (kind == "ground") {
    check(vl_state_ground(widths, &s));
  } else if (kind == "vortex") {
    check(vl_state_single_vortex(cfg.get_double("state", "a_disp"), widths, &s));
  } else if (kind == "two_lines") {
    check(vl_state_two_perpendicular_vortices(
        cfg.get_double("state", "d"), cfg.get_double("state", "l"),
        cfg.get_double_or("state", "n_atoms", 1.0), &s));
  } else if (kind == "file") {
    check(vl_state_load(cfg.get_string("state", "file").c_str(), &s));
  } else {
    throw ConfigError("unknown [state] kind: " + kind);
  }
  return StatePtr(s, vl_state_destroy);
}

struct GridConfig {
  int n[3];
  double box[3];
};

GridConfig build_grid_config(const Config& cfg, const vl_trap* trap) {
  GridConfig gc;
  auto n = cfg.get_doubles("grid", "n", 3);
  for (int a = 0; a < 3; ++a) gc.n[a] = static_cast<int>(n[a]);
  if (cfg.has("grid", "box")) {
    auto b = cfg.get_doubles("grid", "box", 3);
    for (int a = 0; a < 3; ++a) gc.box[a] = b[a];
  } else {
    if (!trap) throw ConfigError("[grid] box required when no [trap] is given");
    double k = cfg.get_double("grid", "box_widths");
    double w[3];
    check(vl_trap_modified_frequencies(trap, w));
    for (int a = 0; a < 3; ++a) gc.box[a] = k / std::sqrt(w[a]);
  }
  return gc;
}

vl_gp_params build_gp(const Config& cfg) {
  vl_gp_params gp;
  gp.n_atoms = cfg.get_double("gp", "n_atoms");
  gp.a_scatt = cfg.get_double("gp", "a_scatt");
  gp.box_l = cfg.get_double("gp", "l");
  gp.d_sep = cfg.get_double("gp", "d");
  gp.mass = cfg.get_double_or("gp", "mass", 1.0);
  gp.hbar = cfg.get_double_or("gp", "hbar", 1.0);
  return gp;
}

std::vector<double> sample_times(const Config& cfg) {
  double t_final = cfg.get_double("run", "t_final");
  int samples = cfg.get_int_or("run", "samples", 33);
  if (samples < 2) throw ConfigError("[run] samples must be >= 2");
  std::vector<double> ts(samples);
  for (int i = 0; i < samples; ++i) ts[i] = t_final * i / (samples - 1);
  return ts;
}

void write_rows(const std::string& path, const std::string& header,
                const std::vector<std::vector<double>>& rows) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot open for writing: " + path);
  out << header << '\n';
  for (const auto& row : rows) {
    for (size_t i = 0; i < row.size(); ++i) {
      if (i) out << ',';
      out << fmt(row[i]);
    }
    out << '\n';
  }
}

// ---- subcommands ----

void cmd_moments(const Config& cfg, const fs::path& out) {
  TrapPtr trap = build_trap(cfg);
  StatePtr state = build_state(cfg, trap.get());
  vl_moments m0;
  check(vl_moments_of_state(state.get(), &m0));
  std::vector<double> ts = sample_times(cfg);
  std::vector<vl_moments> traj;
  for (double t : ts) {
    vl_moments m;
    check(vl_moments_evolve(&m0, trap.get(), t, &m));
    m.time = t;
    traj.push_back(m);
  }
  check(vl_moments_write_csv(traj.data(), traj.size(), trap.get(),
                             (out / "moments.csv").string().c_str()));
}

void cmd_evolve_linear(const Config& cfg, const fs::path& out) {
  TrapPtr trap = build_trap(cfg);
  StatePtr state = build_state(cfg, trap.get());
  double freqs[3];
  check(vl_trap_modified_frequencies(trap.get(), freqs));
  std::vector<double> ts = sample_times(cfg);
  std::vector<vl_moments> traj;
  int idx = 0;
  for (double t : ts) {
    vl_state* evolved = nullptr;
    check(vl_state_evolve_linear(state.get(), freqs, t, &evolved));
    StatePtr ep(evolved, vl_state_destroy);
    char name[32];
    std::snprintf(name, sizeof(name), "state_%04d.txt", idx++);
    check(vl_state_save(ep.get(), (out / name).string().c_str()));
    vl_moments m;
    check(vl_moments_of_state(ep.get(), &m));
    traj.push_back(m);
  }
  check(vl_moments_write_csv(traj.data(), traj.size(), trap.get(),
                             (out / "moments.csv").string().c_str()));
}

void cmd_evolve_nonlinear(const Config& cfg, const fs::path& out) {
  TrapPtr trap = build_trap(cfg);
  StatePtr state = build_state(cfg, trap.get());
  std::vector<double> ts = sample_times(cfg);
  check(vl_lift_write_csv(state.get(), trap.get(), ts.front(), ts.back(),
                          static_cast<int>(ts.size()),
                          (out / "lift.csv").string().c_str()));
  std::vector<vl_moments> traj;
  for (double t : ts) {
    vl_lifted* ls = nullptr;
    check(vl_lift(state.get(), trap.get(), t, &ls));
    LiftedPtr lp(ls, vl_lifted_destroy);
    vl_moments m;
    check(vl_moments_of_lifted(lp.get(), &m));
    traj.push_back(m);
  }
  check(vl_moments_write_csv(traj.data(), traj.size(), trap.get(),
                             (out / "moments.csv").string().c_str()));
}

void cmd_track_vortices(const Config& cfg, const fs::path& out) {
  TrapPtr trap = build_trap(cfg);
  StatePtr state = build_state(cfg, trap.get());
  std::vector<double> ts = sample_times(cfg);
  int plane_axis = cfg.get_int_or("run", "plane_axis", 2);
  double plane_offset = cfg.get_double_or("run", "plane_offset", 0.0);
  int plane_n = cfg.get_int_or("run", "plane_n", 64);
  double window[4] = {-3.0, 3.0, -3.0, 3.0};
  if (cfg.has("run", "window")) {
    auto w = cfg.get_doubles("run", "window", 4);
    for (int i = 0; i < 4; ++i) window[i] = w[i];
  }
  bool is_vortex = cfg.get_string("state", "kind") == "vortex";
  double freqs[3];
  check(vl_trap_modified_frequencies(trap.get(), freqs));
  double a_disp = is_vortex ? cfg.get_double("state", "a_disp") : 0.0;

  std::vector<std::vector<double>> rows;
  for (double t : ts) {
    vl_lifted* ls = nullptr;
    check(vl_lift(state.get(), trap.get(), t, &ls));
    LiftedPtr lp(ls, vl_lifted_destroy);
    std::vector<double> zeros(4 * 64);
    size_t count = 0;
    check(vl_lifted_find_zeros(lp.get(), plane_axis, plane_offset, window,
                               plane_n, zeros.data(), 64, &count));
    if (is_vortex) {
      double x = 0, y = 0, det = 0;
      int unbounded = 0;
      check(vl_single_vortex_zero(a_disp, freqs, t, &x, &y, &det, &unbounded));
      double a[3], b[3], f;
      check(vl_lifted_abf(lp.get(), a, b, &f));
      // Skip near-singular times: the analytic zero runs off to infinity.
      if (unbounded || std::abs(det) < 1e-3) continue;
      double tx = count > 0 ? zeros[0] : std::nan("");
      double ty = count > 0 ? zeros[1] : std::nan("");
      rows.push_back({t, x + b[0], y + b[1], det, tx, ty,
                      static_cast<double>(count)});
    } else {
      for (size_t i = 0; i < count; ++i) {
        rows.push_back({t, zeros[4 * i], zeros[4 * i + 1], zeros[4 * i + 2],
                        zeros[4 * i + 3]});
      }
    }
  }
  if (is_vortex) {
    write_rows((out / "trajectory.csv").string(),
               "time,x_analytic,y_analytic,det,x_tracked,y_tracked,n_zeros",
               rows);
  } else {
    write_rows((out / "zeros.csv").string(), "time,x,y,z,charge", rows);
  }
}

void cmd_oracle_harmonic(const Config& cfg, const fs::path& out) {
  TrapPtr trap = build_trap(cfg);
  StatePtr state = build_state(cfg, trap.get());
  GridConfig gc = build_grid_config(cfg, trap.get());
  double t_final = cfg.get_double("run", "t_final");
  double dt = cfg.get_double("run", "dt");
  int samples = cfg.get_int_or("run", "samples", 33);
  bool dump = cfg.get_bool_or("run", "dump_grids", false);
  int n_steps = static_cast<int>(std::lround(t_final / dt));
  if (n_steps < 1) throw ConfigError("[run] t_final/dt must be >= 1 step");

  vl_grid* g = nullptr;
  check(vl_grid_sample_state(state.get(), gc.n, gc.box, &g));
  GridPtr grid(g, vl_grid_destroy);

  std::vector<vl_moments> traj;
  std::vector<std::vector<double>> norms;
  int done = 0, idx = 0;
  auto observe = [&]() {
    double time = 0, nn = 0;
    check(vl_grid_time(grid.get(), &time));
    check(vl_grid_norm_sq(grid.get(), &nn));
    vl_moments m;
    check(vl_moments_of_grid(grid.get(), &m));
    traj.push_back(m);
    norms.push_back({time, nn});
    if (dump) {
      char name[32];
      std::snprintf(name, sizeof(name), "grid_%04d.bin", idx);
      check(vl_grid_save(grid.get(), (out / name).string().c_str()));
    }
    ++idx;
  };
  int stride = std::max(1, n_steps / std::max(1, samples - 1));
  observe();
  while (done < n_steps) {
    int k = std::min(stride, n_steps - done);
    check(vl_grid_step_harmonic(grid.get(), trap.get(), dt, k));
    done += k;
    observe();
  }
  check(vl_moments_write_csv(traj.data(), traj.size(), trap.get(),
                             (out / "moments.csv").string().c_str()));
  write_rows((out / "norm.csv").string(), "time,norm_sq", norms);
  check(vl_grid_save(grid.get(), (out / "final.bin").string().c_str()));
}

void cmd_oracle_gp(const Config& cfg, const fs::path& out) {
  vl_gp_params gp = build_gp(cfg);
  StatePtr state = build_state(cfg, nullptr);
  GridConfig gc = build_grid_config(cfg, nullptr);
  double trap_omega = cfg.get_double_or("gp", "trap_omega",
                                        1.0 / (gp.box_l * gp.box_l));
  double t_final = cfg.get_double("run", "t_final");
  double dt = cfg.get_double("run", "dt");
  int samples = cfg.get_int_or("run", "samples", 33);
  double trace_floor = cfg.get_double_or("run", "trace_floor", 1e-12);
  int n_steps = static_cast<int>(std::lround(t_final / dt));
  if (n_steps < 1) throw ConfigError("[run] t_final/dt must be >= 1 step");

  vl_grid* g = nullptr;
  check(vl_grid_sample_state(state.get(), gc.n, gc.box, &g));
  GridPtr grid(g, vl_grid_destroy);

  // Endpoint classification against the sampling-box faces.
  auto boundary_axis = [&](const double* p) -> char {
    for (int a = 0; a < 3; ++a) {
      double dx = 2.0 * gc.box[a] / gc.n[a];
      double edge = gc.box[a] - 0.5 * dx;
      if (std::abs(std::abs(p[a]) - edge) < 1e-6 * dx) {
        return static_cast<char>('x' + a);
      }
    }
    return 'i';
  };

  std::ofstream sig_log(out / "signatures.csv");
  sig_log << "time,signature\n";
  std::string initial_sig;
  double reconnection_time = -1.0;
  int idx = 0;
  auto observe = [&]() {
    double time = 0;
    check(vl_grid_time(grid.get(), &time));
    vl_polylines* pl = nullptr;
    check(vl_grid_trace_lines(grid.get(), trace_floor, &pl));
    LinesPtr lines(pl, vl_polylines_destroy);
    char name[40];
    std::snprintf(name, sizeof(name), "lines_%04d.csv", idx);
    check(vl_polylines_write_csv(lines.get(), (out / name).string().c_str()));
    std::snprintf(name, sizeof(name), "lines_%04d.json", idx);
    check(vl_polylines_write_json(lines.get(), (out / name).string().c_str()));
    char sig[256];
    check(vl_polylines_signature(lines.get(), sig, sizeof(sig)));
    sig_log << fmt(time) << ',' << sig << '\n';
    if (idx == 0) initial_sig = sig;
    // Reconnected configuration: a clean open line joining an x boundary to
    // a y boundary, with no ambiguous (unresolved) cells left.
    int ambiguous = 0;
    check(vl_polylines_ambiguous_cells(lines.get(), &ambiguous));
    if (reconnection_time < 0 && idx > 0 && ambiguous == 0) {
      size_t count = 0;
      check(vl_polylines_count(lines.get(), &count));
      for (size_t l = 0; l < count; ++l) {
        size_t npts = 0;
        int charge = 0, closed = 0;
        check(vl_polylines_line_info(lines.get(), l, &npts, &charge, &closed));
        if (closed || npts < 2) continue;
        std::vector<double> pts(3 * npts);
        check(vl_polylines_line_points(lines.get(), l, pts.data(), npts));
        char a = boundary_axis(&pts[0]);
        char b = boundary_axis(&pts[3 * (npts - 1)]);
        if ((a == 'x' && b == 'y') || (a == 'y' && b == 'x')) {
          reconnection_time = time;
          break;
        }
      }
    }
    ++idx;
  };
  int stride = std::max(1, n_steps / std::max(1, samples - 1));
  int done = 0;
  observe();
  while (done < n_steps) {
    int k = std::min(stride, n_steps - done);
    check(vl_grid_step_contact(grid.get(), trap_omega, &gp, dt, k));
    done += k;
    observe();
  }
  std::ofstream rec(out / "reconnection.txt");
  double t0 = gp.mass * gp.d_sep * gp.d_sep / gp.hbar;
  rec << "t0 " << fmt(t0) << '\n';
  rec << "initial_signature " << initial_sig << '\n';
  if (reconnection_time >= 0) {
    rec << "reconnection_time " << fmt(reconnection_time) << '\n';
    rec << "reconnection_time_over_t0 " << fmt(reconnection_time / t0) << '\n';
  } else {
    rec << "reconnection_time none\n";
  }
}

void cmd_gp_regime(const Config& cfg, const fs::path& out) {
  vl_gp_params gp = build_gp(cfg);
  vl_regime_report rep;
  check(vl_gp_regime_report(&gp, cfg.get_double("gp", "trap_period"),
                            cfg.get_double_or("gp", "ratio_threshold", 1e-2),
                            cfg.get_double_or("gp", "timescale_factor", 10.0),
                            &rep));
  check(vl_gp_regime_write(&rep, (out / "regime.txt").string().c_str()));
}

void cmd_verify(const Config& cfg, const fs::path& out, bool quiet) {
  TrapPtr trap = build_trap(cfg);
  StatePtr state = build_state(cfg, trap.get());
  GridConfig gc = build_grid_config(cfg, trap.get());
  double t_final = cfg.get_double("run", "t_final");
  double dt = cfg.get_double("run", "dt");
  int samples = cfg.get_int_or("run", "samples", 5);
  int n_steps = static_cast<int>(std::lround(t_final / dt));
  if (n_steps < samples) throw ConfigError("too few steps for the sample count");

  vl_grid* g = nullptr;
  check(vl_grid_sample_state(state.get(), gc.n, gc.box, &g));
  GridPtr grid(g, vl_grid_destroy);
  double norm0 = 0;
  check(vl_grid_norm_sq(grid.get(), &norm0));

  std::vector<std::vector<double>> rows;
  if (!quiet) std::printf("%12s %16s\n", "time", "rel_l2_error");
  int done = 0;
  int stride = std::max(1, n_steps / std::max(1, samples - 1));
  auto compare = [&]() {
    double time = 0;
    check(vl_grid_time(grid.get(), &time));
    vl_lifted* ls = nullptr;
    check(vl_lift(state.get(), trap.get(), time, &ls));
    LiftedPtr lp(ls, vl_lifted_destroy);
    vl_grid* exact = nullptr;
    check(vl_grid_sample_lifted(lp.get(), gc.n, gc.box, &exact));
    GridPtr ep(exact, vl_grid_destroy);
    double dist = 0;
    check(vl_grid_l2_distance(grid.get(), ep.get(), &dist));
    double rel = dist / std::sqrt(norm0);
    rows.push_back({time, rel});
    if (!quiet) std::printf("%12.6f %16.3e\n", time, rel);
  };
  compare();
  while (done < n_steps) {
    int k = std::min(stride, n_steps - done);
    check(vl_grid_step_harmonic(grid.get(), trap.get(), dt, k));
    done += k;
    compare();
  }
  write_rows((out / "verify.csv").string(), "time,rel_l2_error", rows);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"vortexlift scenario runner"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string config_path, out_dir;
  bool quiet = false;
  app.add_option("--config", config_path, "scenario config file")->required();
  app.add_option("--out", out_dir, "output directory")->required();
  app.add_flag("--quiet", quiet, "suppress progress output");

  const char* names[] = {"evolve-linear",  "evolve-nonlinear", "oracle-harmonic",
                         "oracle-gp",      "track-vortices",   "moments",
                         "gp-regime",      "verify"};
  for (const char* n : names) app.add_subcommand(n);
  CLI11_PARSE(app, argc, argv);
  std::string sub = app.get_subcommands().front()->get_name();

  try {
    Config cfg = Config::parse_file(config_path);
    cfg.check_known_keys();
    fs::path out(out_dir);
    fs::create_directories(out);
    if (sub == "moments") cmd_moments(cfg, out);
    else if (sub == "evolve-linear") cmd_evolve_linear(cfg, out);
    else if (sub == "evolve-nonlinear") cmd_evolve_nonlinear(cfg, out);
    else if (sub == "track-vortices") cmd_track_vortices(cfg, out);
    else if (sub == "oracle-harmonic") cmd_oracle_harmonic(cfg, out);
    else if (sub == "oracle-gp") cmd_oracle_gp(cfg, out);
    else if (sub == "gp-regime") cmd_gp_regime(cfg, out);
    else if (sub == "verify") cmd_verify(cfg, out, quiet);
  } catch (const NumericFailure& e) {
    std::cerr << "numeric failure: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

#include "vortex_tracker.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <numbers>

#include <json.hpp>

#include "errors.hpp"
#include "textio.hpp"

namespace vlift {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap_phase(double d) {
  while (d > std::numbers::pi) d -= kTwoPi;
  while (d <= -std::numbers::pi) d += kTwoPi;
  return d;
}

int loop_winding(const Complex* corner4) {
  double acc = 0.0;
  for (int e = 0; e < 4; ++e) {
    acc += wrap_phase(std::arg(corner4[(e + 1) % 4]) - std::arg(corner4[e]));
  }
  return static_cast<int>(std::lround(acc / kTwoPi));
}

}  // namespace

VortexTrajectoryPoint single_vortex_trajectory(double a_disp,
                                               const Vec3& omega, double t) {
  // Re/Im of  x e^{-i wx t} - a + i y e^{-i wy t} = 0:
  //   [ cos wx t   sin wy t ] [x]   [a]
  //   [-sin wx t   cos wy t ] [y] = [0]
  VortexTrajectoryPoint p;
  p.det = std::cos((omega[0] - omega[1]) * t);
  if (std::abs(p.det) < 1e-12) {
    p.unbounded = true;
    return p;
  }
  p.x = a_disp * std::cos(omega[1] * t) / p.det;
  p.y = a_disp * std::sin(omega[0] * t) / p.det;
  return p;
}

FieldSampler sampler_of(const HermiteGaussianState& s) {
  FieldSampler f;
  f.value = [s](const Vec3& r) { return evaluate(s, r); };
  f.gradient = [s](const Vec3& r) { return gradient(s, r); };
  return f;
}

FieldSampler sampler_of(const LiftedState& ls) {
  FieldSampler f;
  f.value = [ls](const Vec3& r) { return evaluate(ls, r); };
  f.gradient = [ls](const Vec3& r) { return gradient(ls, r); };
  return f;
}

ZeroSearchResult find_zeros_in_plane(const FieldSampler& field,
                                     const PlaneSpec& plane,
                                     const std::array<double, 4>& window,
                                     int n) {
  if (n < 8) throw InvalidArgument("plane scan needs at least 8 cells per axis");
  if (plane.axis < 0 || plane.axis > 2) throw InvalidArgument("bad plane axis");
  int ua = (plane.axis + 1) % 3;
  int va = (plane.axis + 2) % 3;
  double ulo = window[0], uhi = window[1], vlo = window[2], vhi = window[3];
  if (!(uhi > ulo) || !(vhi > vlo)) throw InvalidArgument("empty window");
  double du = (uhi - ulo) / n;
  double dv = (vhi - vlo) / n;

  auto point = [&](double u, double v) {
    Vec3 r{};
    r[plane.axis] = plane.offset;
    r[ua] = u;
    r[va] = v;
    return r;
  };

  // Corner samples.
  std::vector<Complex> vals(static_cast<size_t>(n + 1) * (n + 1));
  double scale = 0.0;
  for (int j = 0; j <= n; ++j) {
    for (int i = 0; i <= n; ++i) {
      Complex c = field.value(point(ulo + i * du, vlo + j * dv));
      vals[static_cast<size_t>(j) * (n + 1) + i] = c;
      scale = std::max(scale, std::abs(c));
    }
  }
  ZeroSearchResult result;
  if (scale == 0.0) return result;
  double tol = 1e-10 * scale;

  auto jacobian = [&](const Vec3& r, Complex out[2]) {
    if (field.gradient) {
      auto g = field.gradient(r);
      out[0] = g[ua];
      out[1] = g[va];
      return;
    }
    double hu = du / 8.0, hv = dv / 8.0;
    Vec3 rp = r, rm = r;
    rp[ua] += hu;
    rm[ua] -= hu;
    out[0] = (field.value(rp) - field.value(rm)) / (2.0 * hu);
    rp = rm = r;
    rp[va] += hv;
    rm[va] -= hv;
    out[1] = (field.value(rp) - field.value(rm)) / (2.0 * hv);
  };

  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      Complex corners[4] = {vals[static_cast<size_t>(j) * (n + 1) + i],
                            vals[static_cast<size_t>(j) * (n + 1) + i + 1],
                            vals[static_cast<size_t>(j + 1) * (n + 1) + i + 1],
                            vals[static_cast<size_t>(j + 1) * (n + 1) + i]};
      int w = loop_winding(corners);
      if (w == 0) continue;

      double u = ulo + (i + 0.5) * du;
      double v = vlo + (j + 0.5) * dv;
      bool converged = false;
      for (int it = 0; it < 50; ++it) {
        Vec3 r = point(u, v);
        Complex fv = field.value(r);
        if (std::abs(fv) < tol) {
          converged = true;
          break;
        }
        Complex jac[2];
        jacobian(r, jac);
        double a11 = jac[0].real(), a12 = jac[1].real();
        double a21 = jac[0].imag(), a22 = jac[1].imag();
        double det = a11 * a22 - a12 * a21;
        if (det == 0.0) break;
        double su = (fv.real() * a22 - fv.imag() * a12) / det;
        double sv = (a11 * fv.imag() - a21 * fv.real()) / det;
        u -= su;
        v -= sv;
        if (u < ulo - du || u > uhi + du || v < vlo - dv || v > vhi + dv) break;
      }
      if (!converged) {
        ++result.dropped;
        continue;
      }
      VortexPoint z;
      z.position = point(u, v);
      z.charge = w;
      result.zeros.push_back(z);
    }
  }

  // Adjacent plaquettes can converge to the same zero; merge duplicates.
  std::sort(result.zeros.begin(), result.zeros.end(),
            [&](const VortexPoint& a, const VortexPoint& b) {
              if (a.position[ua] != b.position[ua])
                return a.position[ua] < b.position[ua];
              return a.position[va] < b.position[va];
            });
  double merge_len = 0.25 * std::min(du, dv);
  std::vector<VortexPoint> unique;
  for (const VortexPoint& z : result.zeros) {
    bool dup = false;
    for (const VortexPoint& u2 : unique) {
      double d0 = z.position[ua] - u2.position[ua];
      double d1 = z.position[va] - u2.position[va];
      if (std::sqrt(d0 * d0 + d1 * d1) < merge_len) {
        dup = true;
        break;
      }
    }
    if (!dup) unique.push_back(z);
  }
  result.zeros = std::move(unique);
  return result;
}

int winding_number(const FieldSampler& field, std::span<const Vec3> loop) {
  if (loop.size() < 3) throw InvalidArgument("loop needs at least 3 points");
  std::vector<double> phases(loop.size());
  double peak = 0.0, trough = 0.0;
  for (size_t i = 0; i < loop.size(); ++i) {
    Complex v = field.value(loop[i]);
    double mag = std::abs(v);
    peak = std::max(peak, mag);
    trough = (i == 0) ? mag : std::min(trough, mag);
    phases[i] = std::arg(v);
  }
  if (peak == 0.0 || trough < 1e-12 * peak) {
    throw NumericError("field modulus vanishes on the loop");
  }
  double acc = 0.0;
  for (size_t i = 0; i < loop.size(); ++i) {
    acc += wrap_phase(phases[(i + 1) % loop.size()] - phases[i]);
  }
  return static_cast<int>(std::lround(acc / kTwoPi));
}

namespace {

// Face of the sampling lattice: normal `axis`, fixed point index `fixed`
// along it, lower-corner point indices (lo_b, lo_c) on axes (axis+1, axis+2).
struct FaceKey {
  int axis, fixed, lo_b, lo_c;
  auto operator<=>(const FaceKey&) const = default;
};

struct Pierce {
  Vec3 position;
  int winding;
};

// Zero of the bilinear interpolant on the face, by Newton from the center.
bool bilinear_zero(const Complex c[4], double& s, double& t) {
  // c = values at (0,0), (1,0), (0,1), (1,1) in (s, t).
  s = 0.5;
  t = 0.5;
  for (int it = 0; it < 32; ++it) {
    Complex f = c[0] * (1 - s) * (1 - t) + c[1] * s * (1 - t) +
                c[2] * (1 - s) * t + c[3] * s * t;
    Complex fs = (c[1] - c[0]) * (1 - t) + (c[3] - c[2]) * t;
    Complex ft = (c[2] - c[0]) * (1 - s) + (c[3] - c[1]) * s;
    double a11 = fs.real(), a12 = ft.real();
    double a21 = fs.imag(), a22 = ft.imag();
    double det = a11 * a22 - a12 * a21;
    if (det == 0.0) break;
    double ds = (f.real() * a22 - f.imag() * a12) / det;
    double dt = (a11 * f.imag() - a21 * f.real()) / det;
    s -= ds;
    t -= dt;
    if (std::abs(ds) + std::abs(dt) < 1e-14) break;
  }
  s = std::clamp(s, 0.0, 1.0);
  t = std::clamp(t, 0.0, 1.0);
  return true;
}

struct CellKey {
  int i, j, k;
  auto operator<=>(const CellKey&) const = default;
};

}  // namespace

TraceResult trace_vortex_lines(const GridState& grid, double noise_floor) {
  const GridSpec& spec = grid.spec;
  const auto& n = spec.n;
  for (int a = 0; a < 3; ++a) {
    if (n[a] < 16) throw InvalidArgument("tracing needs a grid of at least 16^3");
  }
  double peak = 0.0;
  for (const Complex& v : grid.values) peak = std::max(peak, std::abs(v));
  double amp_floor = noise_floor * peak;

  // 1. Find all pierced faces.
  std::map<FaceKey, Pierce> pierced;
  for (int axis = 0; axis < 3; ++axis) {
    int ba = (axis + 1) % 3;
    int ca = (axis + 2) % 3;
    std::array<int, 3> idx{};
    for (int f = 0; f < n[axis]; ++f) {
      for (int jb = 0; jb + 1 < n[ba]; ++jb) {
        for (int jc = 0; jc + 1 < n[ca]; ++jc) {
          auto at = [&](int db, int dc) {
            idx[axis] = f;
            idx[ba] = jb + db;
            idx[ca] = jc + dc;
            return grid.at(idx[0], idx[1], idx[2]);
          };
          // Right-handed loop about +axis.
          Complex corners[4] = {at(0, 0), at(1, 0), at(1, 1), at(0, 1)};
          double amp = std::max({std::abs(corners[0]), std::abs(corners[1]),
                                 std::abs(corners[2]), std::abs(corners[3])});
          if (amp < amp_floor) continue;
          int w = loop_winding(corners);
          if (w == 0) continue;
          // Bilinear corners in (s along b, t along c) ordering.
          Complex c4[4] = {corners[0], corners[1], corners[3], corners[2]};
          double s, t;
          bilinear_zero(c4, s, t);
          Vec3 pos{};
          pos[axis] = spec.coord(axis, f);
          pos[ba] = spec.coord(ba, jb) + s * spec.step(ba);
          pos[ca] = spec.coord(ca, jc) + t * spec.step(ca);
          pierced[FaceKey{axis, f, jb, jc}] = Pierce{pos, w};
        }
      }
    }
  }

  // 2. Per cell, collect pierced faces; cells with exactly two give segments.
  auto cell_faces = [&](const CellKey& c) {
    std::vector<FaceKey> out;
    auto probe = [&](const FaceKey& fk) {
      if (pierced.count(fk)) out.push_back(fk);
    };
    probe(FaceKey{0, c.i, c.j, c.k});
    probe(FaceKey{0, c.i + 1, c.j, c.k});
    probe(FaceKey{1, c.j, c.k, c.i});
    probe(FaceKey{1, c.j + 1, c.k, c.i});
    probe(FaceKey{2, c.k, c.i, c.j});
    probe(FaceKey{2, c.k + 1, c.i, c.j});
    return out;
  };

  TraceResult result;
  std::map<FaceKey, std::vector<std::pair<CellKey, FaceKey>>> links;
  for (int k = 0; k + 1 < n[2]; ++k) {
    for (int j = 0; j + 1 < n[1]; ++j) {
      for (int i = 0; i + 1 < n[0]; ++i) {
        CellKey c{i, j, k};
        auto faces = cell_faces(c);
        if (faces.empty()) continue;
        if (faces.size() == 2) {
          links[faces[0]].push_back({c, faces[1]});
          links[faces[1]].push_back({c, faces[0]});
        } else {
          ++result.ambiguous_cells;
        }
      }
    }
  }

  // 3. Walk chains. Direction sign through a face: +1 when the walk crosses
  // toward the +axis side; the point's charge is winding * direction.
  std::map<FaceKey, bool> used;
  auto cell_on_plus_side = [&](const FaceKey& f, const CellKey& c) {
    int along = (f.axis == 0) ? c.i : (f.axis == 1) ? c.j : c.k;
    return along == f.fixed;
  };

  auto walk = [&](const FaceKey& start, bool closed_candidate) {
    VortexPolyline line;
    FaceKey cur = start;
    CellKey prev_cell{-1, -1, -1};
    bool have_prev = false;
    while (true) {
      used[cur] = true;
      line.points.push_back(pierced[cur].position);
      const auto& ls = links[cur];
      const std::pair<CellKey, FaceKey>* next = nullptr;
      for (const auto& l : ls) {
        if (have_prev && l.first == prev_cell) continue;
        if (used.count(l.second) && used[l.second]) {
          // Closing the loop back onto the start is allowed.
          if (closed_candidate && l.second == start && line.points.size() > 2) {
            line.closed = true;
          }
          continue;
        }
        next = &l;
        break;
      }
      if (line.points.size() == 1 && !ls.empty()) {
        // Charge from the first crossing: direction of entry into the first
        // cell.
        const CellKey& c0 = ls.front().first;
        int dir = cell_on_plus_side(cur, c0) ? 1 : -1;
        line.charge = pierced[cur].winding * dir;
      }
      if (!next) break;
      prev_cell = next->first;
      have_prev = true;
      cur = next->second;
      if (line.closed) break;
    }
    return line;
  };

  // Open chains start at faces with exactly one link.
  for (const auto& [fk, ls] : links) {
    if (ls.size() == 1 && !used[fk]) {
      result.lines.push_back(walk(fk, false));
    }
  }
  // Remaining unvisited linked faces belong to cycles.
  for (const auto& [fk, ls] : links) {
    if (!ls.empty() && !used[fk]) {
      VortexPolyline line = walk(fk, true);
      line.closed = true;
      result.lines.push_back(line);
    }
  }

  // Deterministic order: by first point, lexicographic.
  std::sort(result.lines.begin(), result.lines.end(),
            [](const VortexPolyline& a, const VortexPolyline& b) {
              return a.points.front() < b.points.front();
            });
  return result;
}

std::string boundary_signature(const TraceResult& traced,
                               const GridSpec& spec) {
  const char* axis_names = "xyz";
  auto classify = [&](const Vec3& p) -> std::string {
    for (int a = 0; a < 3; ++a) {
      double tol = spec.step(a) * 1e-6;
      if (std::abs(p[a] - spec.coord(a, 0)) < tol) {
        return std::string(1, axis_names[a]) + "-";
      }
      if (std::abs(p[a] - spec.coord(a, spec.n[a] - 1)) < tol) {
        return std::string(1, axis_names[a]) + "+";
      }
    }
    return "i";  // ends in the interior (cut at an ambiguous cell)
  };
  auto rank = [](const std::string& label) {
    if (label == "i") return 6;
    return 2 * (label[0] - 'x') + (label[1] == '-' ? 0 : 1);
  };
  std::vector<std::string> parts;
  for (const VortexPolyline& line : traced.lines) {
    if (line.closed) {
      parts.push_back("loop");
      continue;
    }
    std::string a = classify(line.points.front());
    std::string b = classify(line.points.back());
    if (rank(b) < rank(a)) std::swap(a, b);
    parts.push_back(a + ":" + b);
  }
  std::sort(parts.begin(), parts.end());
  std::string sig;
  for (size_t i = 0; i < parts.size(); ++i) {
    if (i) sig += "|";
    sig += parts[i];
  }
  return sig;
}

void write_polylines_csv(const TraceResult& traced, const std::string& path) {
  std::vector<std::string> header{"line", "vertex", "x", "y", "z", "charge"};
  std::vector<std::vector<double>> rows;
  for (size_t id = 0; id < traced.lines.size(); ++id) {
    const VortexPolyline& line = traced.lines[id];
    for (size_t v = 0; v < line.points.size(); ++v) {
      rows.push_back({static_cast<double>(id), static_cast<double>(v),
                      line.points[v][0], line.points[v][1], line.points[v][2],
                      static_cast<double>(line.charge)});
    }
  }
  write_csv(path, header, rows);
}

void write_polylines_json(const TraceResult& traced, const std::string& path) {
  nlohmann::json j;
  j["ambiguous_cells"] = traced.ambiguous_cells;
  j["lines"] = nlohmann::json::array();
  for (size_t id = 0; id < traced.lines.size(); ++id) {
    const VortexPolyline& line = traced.lines[id];
    nlohmann::json jl;
    jl["id"] = id;
    jl["charge"] = line.charge;
    jl["closed"] = line.closed;
    jl["points"] = nlohmann::json::array();
    for (const Vec3& p : line.points) {
      jl["points"].push_back({p[0], p[1], p[2]});
    }
    j["lines"].push_back(std::move(jl));
  }
  std::ofstream out(path);
  if (!out) throw IoError("cannot open for writing: " + path);
  out << j.dump(1) << '\n';
}

}  // namespace vlift

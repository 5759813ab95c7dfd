#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "grid.hpp"

namespace vlift {

// Zero of the complex field with its phase winding.
struct VortexPoint {
  Vec3 position{};
  int charge = 0;
};

// In-plane zero of the displaced single-vortex solution at time t, from the
// 2x2 linear system of Re/Im = 0. `det` is cos((omega_x - omega_y) t);
// `unbounded` is set instead of returning huge coordinates when |det| < 1e-12.
struct VortexTrajectoryPoint {
  double x = 0.0;
  double y = 0.0;
  double det = 1.0;
  bool unbounded = false;
};

VortexTrajectoryPoint single_vortex_trajectory(double a_disp,
                                               const Vec3& omega, double t);

// Point sampler with optional analytic gradient (finite differences
// otherwise).
struct FieldSampler {
  std::function<Complex(const Vec3&)> value;
  std::function<std::array<Complex, 3>(const Vec3&)> gradient;  // may be null
};

FieldSampler sampler_of(const HermiteGaussianState& s);
FieldSampler sampler_of(const LiftedState& ls);

// Axis-aligned plane: fixed coordinate `offset` along `axis`; in-plane
// coordinates run over axes (axis+1)%3 and (axis+2)%3.
struct PlaneSpec {
  int axis = 2;
  double offset = 0.0;
};

struct ZeroSearchResult {
  std::vector<VortexPoint> zeros;  // sorted by in-plane coordinates
  int dropped = 0;                 // Newton seeds that failed to converge
};

// Phase-winding scan of the window on an n x n plaquette grid; each winding
// plaquette seeds a 2-variable Newton refinement on (Re, Im).
ZeroSearchResult find_zeros_in_plane(const FieldSampler& field,
                                     const PlaneSpec& plane,
                                     const std::array<double, 4>& window,
                                     int n);

// (1/2pi) sum of wrapped phase increments around the closed loop.
int winding_number(const FieldSampler& field, std::span<const Vec3> loop);

struct VortexPolyline {
  std::vector<Vec3> points;  // consecutive points within one cell diagonal
  int charge = 0;
  bool closed = false;
};

struct TraceResult {
  std::vector<VortexPolyline> lines;
  int ambiguous_cells = 0;  // cells pierced by more than two faces
};

// Extracts vortex lines from a sampled field: face-winding detection, zero
// location by bilinear interpolation within each pierced face, cell-to-cell
// joining into polylines. Lines are cut at ambiguous (near-reconnection)
// cells and at the grid boundary. Faces whose corner amplitudes all fall
// below noise_floor x the grid peak are skipped: phase winding of
// roundoff-level data is meaningless.
TraceResult trace_vortex_lines(const GridState& grid,
                               double noise_floor = 1e-12);

// Compact pairing of each open line's endpoints with the domain boundary
// faces it terminates on, e.g. "x-:x+|y-:y+"; closed lines appear as "loop".
// Reconnections show up as a change of this signature.
std::string boundary_signature(const TraceResult& traced, const GridSpec& spec);

void write_polylines_csv(const TraceResult& traced, const std::string& path);
void write_polylines_json(const TraceResult& traced, const std::string& path);

}  // namespace vlift

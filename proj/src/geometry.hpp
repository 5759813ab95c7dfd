#pragma once

#include <array>
#include <complex>
#include <cmath>

namespace vlift {

using Complex = std::complex<double>;
using Vec3 = std::array<double, 3>;
using Index3 = std::array<int, 3>;  // Hermite multi-index (nx, ny, nz)

inline double dot(const Vec3& a, const Vec3& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

inline double norm2(const Vec3& a) { return dot(a, a); }

inline Vec3 add(const Vec3& a, const Vec3& b) {
  return {a[0] + b[0], a[1] + b[1], a[2] + b[2]};
}

inline Vec3 sub(const Vec3& a, const Vec3& b) {
  return {a[0] - b[0], a[1] - b[1], a[2] - b[2]};
}

inline Vec3 scale(const Vec3& a, double s) {
  return {a[0] * s, a[1] * s, a[2] * s};
}

inline int total_degree(const Index3& n) { return n[0] + n[1] + n[2]; }

}  // namespace vlift

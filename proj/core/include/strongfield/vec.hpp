#pragma once

#include <cmath>
#include <complex>

namespace strongfield {

using cplx = std::complex<double>;

/// Real Cartesian 3-vector in atomic units. The laser polarization is along z.
struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  constexpr Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  constexpr Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  constexpr Vec3 operator-() const { return {-x, -y, -z}; }
  constexpr Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
  constexpr double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
  constexpr double norm2() const { return dot(*this); }
  double norm() const { return std::sqrt(norm2()); }

  /// Momentum of magnitude `p` at polar angle `theta` from the z axis, in the xz plane.
  static Vec3 polar(double p, double theta) {
    return {p * std::sin(theta), 0.0, p * std::cos(theta)};
  }
};

/// Complex 3-vector, used for momenta continued to complex times.
struct CVec3 {
  cplx x{};
  cplx y{};
  cplx z{};

  CVec3() = default;
  constexpr CVec3(cplx x_, cplx y_, cplx z_) : x(x_), y(y_), z(z_) {}
  constexpr CVec3(const Vec3& v) : x(v.x), y(v.y), z(v.z) {}  // NOLINT(google-explicit-constructor)

  CVec3 operator+(const CVec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  CVec3 operator-(const CVec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  CVec3 operator-() const { return {-x, -y, -z}; }
  CVec3 operator*(cplx s) const { return {x * s, y * s, z * s}; }

  /// Bilinear (not Hermitian) product; q.dot(q) is the analytic continuation of q².
  cplx dot(const CVec3& o) const { return x * o.x + y * o.y + z * o.z; }
  cplx dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
};

}  // namespace strongfield

#pragma once

#include <array>
#include <cmath>
#include <numbers>

namespace virtlab {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;
// Free-space wavenumber when lengths are measured in wavelengths.
inline constexpr double kWavenumber = kTwoPi;

constexpr double deg2rad(double deg) { return deg * kPi / 180.0; }
constexpr double rad2deg(double rad) { return rad * 180.0 / kPi; }

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  constexpr Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  constexpr Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  constexpr Vec3 operator-() const { return {-x, -y, -z}; }
  constexpr Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
  constexpr Vec3 operator/(double s) const { return {x / s, y / s, z / s}; }
  constexpr Vec3& operator+=(const Vec3& o) {
    x += o.x;
    y += o.y;
    z += o.z;
    return *this;
  }
  constexpr bool operator==(const Vec3&) const = default;
};

constexpr Vec3 operator*(double s, const Vec3& v) { return v * s; }

constexpr double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

constexpr Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

inline double norm(const Vec3& v) { return std::sqrt(dot(v, v)); }

inline double distance(const Vec3& a, const Vec3& b) { return norm(a - b); }

/// Unit vector along v. Returns the zero vector unchanged.
inline Vec3 normalized(const Vec3& v) {
  const double n = norm(v);
  return n > 0.0 ? v / n : v;
}

inline bool is_finite(const Vec3& v) {
  return std::isfinite(v.x) && std::isfinite(v.y) && std::isfinite(v.z);
}

/// Some unit vector perpendicular to d (d need not be normalized).
/// Deterministic, and satisfies perpendicular(-d) == -perpendicular(d).
inline Vec3 perpendicular(const Vec3& d) {
  const double ax = std::abs(d.x), ay = std::abs(d.y), az = std::abs(d.z);
  Vec3 helper{0, 0, 1};
  if (ax <= ay && ax <= az) {
    helper = {1, 0, 0};
  } else if (ay <= az) {
    helper = {0, 1, 0};
  }
  return normalized(cross(d, helper));
}

/// Row-major 3x3 matrix.
struct Mat3 {
  std::array<double, 9> m{1, 0, 0, 0, 1, 0, 0, 0, 1};

  static Mat3 identity() { return {}; }

  double operator()(int r, int c) const { return m[static_cast<std::size_t>(r * 3 + c)]; }
  double& operator()(int r, int c) { return m[static_cast<std::size_t>(r * 3 + c)]; }

  Vec3 operator*(const Vec3& v) const {
    return {m[0] * v.x + m[1] * v.y + m[2] * v.z, m[3] * v.x + m[4] * v.y + m[5] * v.z,
            m[6] * v.x + m[7] * v.y + m[8] * v.z};
  }

  Mat3 operator*(const Mat3& o) const {
    Mat3 r;
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        double s = 0.0;
        for (int k = 0; k < 3; ++k) s += (*this)(i, k) * o(k, j);
        r(i, j) = s;
      }
    }
    return r;
  }

  Mat3 transposed() const {
    Mat3 r;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) r(i, j) = (*this)(j, i);
    return r;
  }
};

/// Rotation by `angle` radians about `axis` (right-hand rule).
struct AxisAngle {
  Vec3 axis{0, 0, 1};
  double angle = 0.0;

  bool operator==(const AxisAngle&) const = default;
};

inline Mat3 rotation_matrix(const AxisAngle& r) {
  const Vec3 a = normalized(r.axis);
  const double c = std::cos(r.angle), s = std::sin(r.angle), t = 1.0 - c;
  Mat3 m;
  m(0, 0) = t * a.x * a.x + c;
  m(0, 1) = t * a.x * a.y - s * a.z;
  m(0, 2) = t * a.x * a.z + s * a.y;
  m(1, 0) = t * a.x * a.y + s * a.z;
  m(1, 1) = t * a.y * a.y + c;
  m(1, 2) = t * a.y * a.z - s * a.x;
  m(2, 0) = t * a.x * a.z - s * a.y;
  m(2, 1) = t * a.y * a.z + s * a.x;
  m(2, 2) = t * a.z * a.z + c;
  return m;
}

inline Vec3 rotate(const AxisAngle& r, const Vec3& v) { return rotation_matrix(r) * v; }

/// Axis-angle form of a proper rotation matrix; angle in [0, pi].
AxisAngle axis_angle_from_matrix(const Mat3& m);

struct Quaternion {
  double w = 1.0, x = 0.0, y = 0.0, z = 0.0;
};

Quaternion to_quaternion(const AxisAngle& r);
AxisAngle to_axis_angle(const Quaternion& q);
/// Shortest-arc spherical interpolation.
Quaternion slerp(Quaternion a, Quaternion b, double t);

}  // namespace virtlab

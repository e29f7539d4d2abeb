#include "virtlab/vec.hpp"

#include <algorithm>

#include "virtlab/error.hpp"

namespace virtlab {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::invalid_argument: return "invalid_argument";
    case ErrorCode::singular_load: return "singular_load";
    case ErrorCode::degenerate_surface: return "degenerate_surface";
    case ErrorCode::degenerate_pattern: return "degenerate_pattern";
    case ErrorCode::not_transverse: return "not_transverse";
    case ErrorCode::null_field: return "null_field";
    case ErrorCode::anti_resonant: return "anti_resonant";
    case ErrorCode::invalid_scene: return "invalid_scene";
    case ErrorCode::unknown_scenario: return "unknown_scenario";
    case ErrorCode::unknown_kind: return "unknown_kind";
    case ErrorCode::parse_error: return "parse_error";
    case ErrorCode::io_error: return "io_error";
  }
  return "unknown";
}

AxisAngle axis_angle_from_matrix(const Mat3& m) {
  const double trace = m(0, 0) + m(1, 1) + m(2, 2);
  const double cos_a = std::clamp((trace - 1.0) / 2.0, -1.0, 1.0);
  const double angle = std::acos(cos_a);
  if (angle < 1e-12) return {{0, 0, 1}, 0.0};

  Vec3 axis{m(2, 1) - m(1, 2), m(0, 2) - m(2, 0), m(1, 0) - m(0, 1)};
  if (norm(axis) > 1e-6) return {normalized(axis), angle};

  // Near pi the antisymmetric part vanishes; recover the axis from the
  // symmetric part instead (largest diagonal entry for stability).
  const double xx = (m(0, 0) + 1.0) / 2.0, yy = (m(1, 1) + 1.0) / 2.0, zz = (m(2, 2) + 1.0) / 2.0;
  if (xx >= yy && xx >= zz) {
    const double x = std::sqrt(std::max(xx, 0.0));
    axis = {x, (m(0, 1) + m(1, 0)) / (4.0 * x), (m(0, 2) + m(2, 0)) / (4.0 * x)};
  } else if (yy >= zz) {
    const double y = std::sqrt(std::max(yy, 0.0));
    axis = {(m(0, 1) + m(1, 0)) / (4.0 * y), y, (m(1, 2) + m(2, 1)) / (4.0 * y)};
  } else {
    const double z = std::sqrt(std::max(zz, 0.0));
    axis = {(m(0, 2) + m(2, 0)) / (4.0 * z), (m(1, 2) + m(2, 1)) / (4.0 * z), z};
  }
  return {normalized(axis), angle};
}

Quaternion to_quaternion(const AxisAngle& r) {
  const Vec3 a = normalized(r.axis);
  const double s = std::sin(r.angle / 2.0);
  return {std::cos(r.angle / 2.0), a.x * s, a.y * s, a.z * s};
}

AxisAngle to_axis_angle(const Quaternion& q) {
  const double w = std::clamp(q.w, -1.0, 1.0);
  const double angle = 2.0 * std::acos(w);
  const Vec3 v{q.x, q.y, q.z};
  const double n = norm(v);
  if (n < 1e-15) return {{0, 0, 1}, 0.0};
  return {v / n, angle};
}

Quaternion slerp(Quaternion a, Quaternion b, double t) {
  double d = a.w * b.w + a.x * b.x + a.y * b.y + a.z * b.z;
  if (d < 0.0) {
    b = {-b.w, -b.x, -b.y, -b.z};
    d = -d;
  }
  double wa = 1.0 - t, wb = t;
  if (d < 1.0 - 1e-12) {
    const double theta = std::acos(std::min(d, 1.0));
    const double s = std::sin(theta);
    wa = std::sin((1.0 - t) * theta) / s;
    wb = std::sin(t * theta) / s;
  }
  Quaternion q{wa * a.w + wb * b.w, wa * a.x + wb * b.x, wa * a.y + wb * b.y, wa * a.z + wb * b.z};
  const double n = std::sqrt(q.w * q.w + q.x * q.x + q.y * q.y + q.z * q.z);
  return {q.w / n, q.x / n, q.y / n, q.z / n};
}

}  // namespace virtlab

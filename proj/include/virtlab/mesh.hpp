#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "virtlab/vec.hpp"

namespace virtlab {

struct Color {
  double r = 0.0, g = 0.0, b = 0.0;

  bool operator==(const Color&) const = default;
  bool in_range() const {
    return r >= 0 && r <= 1 && g >= 0 && g <= 1 && b >= 0 && b <= 1;
  }
};

inline constexpr Color kRed{1, 0, 0};
inline constexpr Color kGreen{0, 1, 0};
inline constexpr Color kBlue{0, 0, 1};

/// Coordinate-role colouring: (x, y, z), (r, theta, phi) and (xoy, yoz, zox)
/// map onto (R, G, B) in that order; anything else carries its own colour.
struct RoleColor {
  enum class Role : std::uint8_t { R, G, B, custom };

  Role role = Role::custom;
  Color custom_color{0.5, 0.5, 0.5};

  static RoleColor red() { return {Role::R, kRed}; }
  static RoleColor green() { return {Role::G, kGreen}; }
  static RoleColor blue() { return {Role::B, kBlue}; }
  static RoleColor of(Color c) { return {Role::custom, c}; }

  Color color() const {
    switch (role) {
      case Role::R: return kRed;
      case Role::G: return kGreen;
      case Role::B: return kBlue;
      case Role::custom: break;
    }
    return custom_color;
  }

  bool operator==(const RoleColor&) const = default;
};

using Face = std::array<std::uint32_t, 3>;

struct SurfaceMesh {
  std::vector<Vec3> vertices;
  std::vector<Face> faces;
  RoleColor role_color;

  bool operator==(const SurfaceMesh&) const = default;

  /// Indices in range and no face repeating a vertex index.
  bool valid_topology() const;
  /// Smallest triangle area over all faces (0 for an empty mesh).
  double min_face_area() const;
};

struct Polyline {
  std::vector<Vec3> points;
  bool closed = false;
  RoleColor role_color;

  bool operator==(const Polyline&) const = default;
};

double triangle_area(const Vec3& a, const Vec3& b, const Vec3& c);

/// Translate every vertex.
SurfaceMesh translated(SurfaceMesh mesh, const Vec3& offset);
Polyline translated(Polyline line, const Vec3& offset);

/// Same surface with reversed winding (the other side faces outward).
SurfaceMesh flipped(SurfaceMesh mesh);

}  // namespace virtlab

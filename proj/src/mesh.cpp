#include "virtlab/mesh.hpp"

#include <algorithm>
#include <limits>

namespace virtlab {

double triangle_area(const Vec3& a, const Vec3& b, const Vec3& c) {
  return 0.5 * norm(cross(b - a, c - a));
}

bool SurfaceMesh::valid_topology() const {
  const auto n = vertices.size();
  return std::all_of(faces.begin(), faces.end(), [n](const Face& f) {
    return f[0] < n && f[1] < n && f[2] < n && f[0] != f[1] && f[1] != f[2] && f[0] != f[2];
  });
}

double SurfaceMesh::min_face_area() const {
  if (faces.empty()) return 0.0;
  double best = std::numeric_limits<double>::infinity();
  for (const auto& f : faces) {
    best = std::min(best, triangle_area(vertices[f[0]], vertices[f[1]], vertices[f[2]]));
  }
  return best;
}

SurfaceMesh translated(SurfaceMesh mesh, const Vec3& offset) {
  for (auto& v : mesh.vertices) v += offset;
  return mesh;
}

Polyline translated(Polyline line, const Vec3& offset) {
  for (auto& p : line.points) p += offset;
  return line;
}

SurfaceMesh flipped(SurfaceMesh mesh) {
  for (auto& f : mesh.faces) std::swap(f[1], f[2]);
  return mesh;
}

}  // namespace virtlab

#pragma once

#include <array>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "virtlab/mesh.hpp"
#include "virtlab/vec.hpp"

namespace virtlab {

/// Similarity transform p -> translation + scale * R p.
struct Transform {
  Vec3 translation;
  AxisAngle rotation{{0, 0, 1}, 0.0};
  double scale = 1.0;

  Vec3 apply(const Vec3& p) const { return translation + rotate(rotation, p) * scale; }
  bool is_identity() const { return translation == Vec3{} && rotation.angle == 0.0 && scale == 1.0; }
  bool operator==(const Transform&) const = default;
};

/// outer(inner(p)).
Transform compose(const Transform& outer, const Transform& inner);

struct ArrowShape {
  Vec3 from;
  Vec3 to;
  double shaft_radius = 0.02;
  SurfaceMesh mesh;

  bool operator==(const ArrowShape&) const = default;
};

struct TextLabel {
  std::string text;
  double size = 0.15;

  bool operator==(const TextLabel&) const = default;
};

enum class NodeKind { mesh, polyline, arrow, text };

const char* to_string(NodeKind k);

using Geometry = std::variant<SurfaceMesh, Polyline, ArrowShape, TextLabel>;

struct SceneNode {
  std::string id;
  Geometry geometry;
  Color color{0.5, 0.5, 0.5};
  double opacity = 1.0;
  Transform transform;
  // Set for geometry that stands for a coordinate, axis or main plane.
  std::optional<RoleColor::Role> role;

  NodeKind kind() const { return static_cast<NodeKind>(geometry.index()); }
  /// Vertices a morph track drives: mesh vertices or polyline points.
  const std::vector<Vec3>* morph_points() const;
  std::vector<Vec3>* morph_points();
};

enum class TrackKind { rotation, position, morph };

const char* to_string(TrackKind k);

using KeyValue = std::variant<AxisAngle, Vec3, std::vector<Vec3>>;

struct Keyframe {
  double fraction = 0.0;
  KeyValue value;
};

/// A looping animation of one node. Rotation and position tracks drive a
/// transform wrapped around the node; morph tracks drive its vertices.
struct AnimationTrack {
  std::string target_id;
  TrackKind kind = TrackKind::rotation;
  double period = 1.0;  // seconds
  std::vector<Keyframe> keyframes;

  /// Value at a fraction in [0, 1]: slerp for rotations, linear otherwise.
  KeyValue sample(double fraction) const;
};

struct Viewpoint {
  Vec3 position;
  Vec3 look_at;
  std::string description;
};

Viewpoint default_first_octant_viewpoint();

class Scene {
 public:
  std::vector<SceneNode> nodes;
  std::vector<AnimationTrack> tracks;
  std::vector<Viewpoint> viewpoints;
  Color background{1, 1, 1};

  /// Appends a node and assigns the next id ("N0001", "N0002", ...).
  const std::string& add(SceneNode node);
  const std::string& add_mesh(const SurfaceMesh& mesh, double opacity = 1.0);
  const std::string& add_polyline(const Polyline& line);
  const std::string& add_text(const std::string& text, const Vec3& position, const Color& color = {0, 0, 0},
                              double size = 0.15);

  /// Appends a track after checking its target, period and keyframes.
  void add_track(AnimationTrack track);

  const SceneNode* find(const std::string& id) const;
  SceneNode* find(const std::string& id);

  /// Throws invalid_scene naming the first violated invariant.
  void validate() const;

  /// Longest track period (0 without tracks).
  double reference_period() const;

 private:
  int next_id_ = 1;
};

/// Arrow from `from` to `to`: 12-sided shaft of the given radius and a cone
/// head of radius 2 * shaft_radius and length min(L / 4, 4 * shaft_radius).
/// 38 vertices: base centre, shaft rings at base and neck, head ring, apex.
ArrowShape arrow_shape(const Vec3& from, const Vec3& to, double shaft_radius = 0.02);

inline constexpr int kArrowSegments = 12;
inline constexpr std::size_t kArrowVertices = 3 * kArrowSegments + 2;
inline constexpr std::size_t kArrowFaces = 6 * kArrowSegments;

SceneNode arrow(const Vec3& from, const Vec3& to, const Color& color, double shaft_radius = 0.02);

/// Adds +x, +y, +z arrows coloured R, G, B and returns their ids.
std::array<std::string, 3> add_axes_triad(Scene& scene, double length = 1.0, double shaft_radius = 0.02);

/// Copy of the scene without tracks, every track applied at the fraction
/// (k / n) * (T_ref / T) mod 1 with T_ref the longest period.
Scene bake_frame(const Scene& scene, int k, int n_frames);

/// Copy of the scene without tracks, each track sampled at its own fraction.
Scene bake(const Scene& scene, const std::vector<double>& fractions);

}  // namespace virtlab

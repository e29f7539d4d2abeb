#include "virtlab/scene.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>

#include "virtlab/error.hpp"

namespace virtlab {

namespace {

[[noreturn]] void invalid(const std::string& msg) { throw Error(ErrorCode::invalid_scene, msg); }

std::size_t point_count(const SceneNode& node) {
  const auto* pts = node.morph_points();
  return pts ? pts->size() : 0;
}

KeyValue lerp(const KeyValue& a, const KeyValue& b, double t) {
  if (const auto* ra = std::get_if<AxisAngle>(&a)) {
    return to_axis_angle(slerp(to_quaternion(*ra), to_quaternion(std::get<AxisAngle>(b)), t));
  }
  if (const auto* pa = std::get_if<Vec3>(&a)) return *pa + (std::get<Vec3>(b) - *pa) * t;
  const auto& va = std::get<std::vector<Vec3>>(a);
  const auto& vb = std::get<std::vector<Vec3>>(b);
  std::vector<Vec3> out(va.size());
  for (std::size_t i = 0; i < va.size(); ++i) out[i] = va[i] + (vb[i] - va[i]) * t;
  return out;
}

bool value_matches(TrackKind kind, const KeyValue& v) {
  switch (kind) {
    case TrackKind::rotation: return std::holds_alternative<AxisAngle>(v);
    case TrackKind::position: return std::holds_alternative<Vec3>(v);
    case TrackKind::morph: return std::holds_alternative<std::vector<Vec3>>(v);
  }
  return false;
}

void check_track(const Scene& scene, const AnimationTrack& track) {
  const SceneNode* node = scene.find(track.target_id);
  if (!node) invalid("track target '" + track.target_id + "' does not exist");
  if (!(track.period > 0.0) || !std::isfinite(track.period)) invalid("track period must be positive");
  const auto& keys = track.keyframes;
  if (keys.size() < 2) invalid("track needs at least two keyframes");
  if (keys.front().fraction != 0.0 || keys.back().fraction != 1.0) {
    invalid("keyframe fractions must start at 0 and end at 1");
  }
  for (std::size_t i = 1; i < keys.size(); ++i) {
    if (!(keys[i].fraction > keys[i - 1].fraction)) invalid("keyframe fractions must be strictly increasing");
  }
  for (const auto& k : keys) {
    if (!value_matches(track.kind, k.value)) invalid("keyframe value does not match the track kind");
    if (track.kind == TrackKind::morph) {
      const auto& pts = std::get<std::vector<Vec3>>(k.value);
      if (!node->morph_points()) invalid("morph target '" + track.target_id + "' has no vertices");
      if (pts.size() != point_count(*node)) invalid("morph frame vertex count differs from the target geometry");
    }
  }
}

}  // namespace

Transform compose(const Transform& outer, const Transform& inner) {
  if (outer.is_identity()) return inner;
  if (inner.is_identity()) return outer;
  const Mat3 ro = rotation_matrix(outer.rotation);
  Transform t;
  t.translation = outer.translation + (ro * inner.translation) * outer.scale;
  t.rotation = axis_angle_from_matrix(ro * rotation_matrix(inner.rotation));
  t.scale = outer.scale * inner.scale;
  return t;
}

const char* to_string(NodeKind k) {
  switch (k) {
    case NodeKind::mesh: return "mesh";
    case NodeKind::polyline: return "polyline";
    case NodeKind::arrow: return "arrow";
    case NodeKind::text: return "text";
  }
  return "?";
}

const char* to_string(TrackKind k) {
  switch (k) {
    case TrackKind::rotation: return "rotation";
    case TrackKind::position: return "position";
    case TrackKind::morph: return "morph";
  }
  return "?";
}

const std::vector<Vec3>* SceneNode::morph_points() const {
  if (const auto* m = std::get_if<SurfaceMesh>(&geometry)) return &m->vertices;
  if (const auto* p = std::get_if<Polyline>(&geometry)) return &p->points;
  return nullptr;
}

std::vector<Vec3>* SceneNode::morph_points() {
  return const_cast<std::vector<Vec3>*>(std::as_const(*this).morph_points());
}

KeyValue AnimationTrack::sample(double fraction) const {
  fraction = std::clamp(fraction, 0.0, 1.0);
  auto hi = std::lower_bound(keyframes.begin(), keyframes.end(), fraction,
                             [](const Keyframe& k, double f) { return k.fraction < f; });
  if (hi == keyframes.end()) return keyframes.back().value;
  if (hi->fraction == fraction || hi == keyframes.begin()) return hi->value;
  const auto lo = hi - 1;
  return lerp(lo->value, hi->value, (fraction - lo->fraction) / (hi->fraction - lo->fraction));
}

Viewpoint default_first_octant_viewpoint() { return {{2.5, 2.0, 1.5}, {0, 0, 0}, "first octant"}; }

const std::string& Scene::add(SceneNode node) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "N%04d", next_id_++);
  node.id = buf;
  nodes.push_back(std::move(node));
  return nodes.back().id;
}

const std::string& Scene::add_mesh(const SurfaceMesh& mesh, double opacity) {
  SceneNode n;
  n.color = mesh.role_color.color();
  if (mesh.role_color.role != RoleColor::Role::custom) n.role = mesh.role_color.role;
  n.opacity = opacity;
  n.geometry = mesh;
  return add(std::move(n));
}

const std::string& Scene::add_polyline(const Polyline& line) {
  SceneNode n;
  n.color = line.role_color.color();
  if (line.role_color.role != RoleColor::Role::custom) n.role = line.role_color.role;
  n.geometry = line;
  return add(std::move(n));
}

const std::string& Scene::add_text(const std::string& text, const Vec3& position, const Color& color, double size) {
  SceneNode n;
  n.geometry = TextLabel{text, size};
  n.color = color;
  n.transform.translation = position;
  return add(std::move(n));
}

void Scene::add_track(AnimationTrack track) {
  check_track(*this, track);
  tracks.push_back(std::move(track));
}

const SceneNode* Scene::find(const std::string& id) const {
  for (const auto& n : nodes)
    if (n.id == id) return &n;
  return nullptr;
}

SceneNode* Scene::find(const std::string& id) {
  return const_cast<SceneNode*>(std::as_const(*this).find(id));
}

void Scene::validate() const {
  if (viewpoints.empty()) invalid("scene has no viewpoint");
  for (const auto& v : viewpoints) {
    if (v.position == v.look_at) invalid("viewpoint '" + v.description + "' looks at its own position");
  }
  if (!background.in_range()) invalid("background colour out of range");
  std::set<std::string> ids;
  for (const auto& n : nodes) {
    if (n.id.empty() || !ids.insert(n.id).second) invalid("duplicate or empty node id '" + n.id + "'");
    if (!(n.opacity >= 0.0 && n.opacity <= 1.0)) invalid("opacity out of range on " + n.id);
    if (!n.color.in_range()) invalid("colour out of range on " + n.id);
    if (n.role && n.color != RoleColor{*n.role, {}}.color()) invalid("role colour mismatch on " + n.id);
    if (const auto* m = std::get_if<SurfaceMesh>(&n.geometry); m && !m->valid_topology()) {
      invalid("bad mesh topology on " + n.id);
    }
    if (const auto* p = std::get_if<Polyline>(&n.geometry); p && p->points.size() < 2) {
      invalid("polyline with fewer than two points on " + n.id);
    }
  }
  for (const auto& t : tracks) check_track(*this, t);
}

double Scene::reference_period() const {
  double t = 0.0;
  for (const auto& tr : tracks) t = std::max(t, tr.period);
  return t;
}

ArrowShape arrow_shape(const Vec3& from, const Vec3& to, double shaft_radius) {
  const double len = distance(from, to);
  if (!(len > 0.0) || !is_finite(from) || !is_finite(to)) {
    throw Error(ErrorCode::invalid_argument, "arrow needs distinct finite end points");
  }
  if (!(shaft_radius > 0.0)) throw Error(ErrorCode::invalid_argument, "arrow shaft radius must be positive");
  const Vec3 d = (to - from) / len;
  const Vec3 u = perpendicular(d);
  const Vec3 w = cross(d, u);
  const double head = std::min(0.25 * len, 4.0 * shaft_radius);
  const Vec3 neck = to - d * head;

  ArrowShape a{from, to, shaft_radius, {}};
  auto& v = a.mesh.vertices;
  auto ring = [&](const Vec3& c, double r) {
    for (int s = 0; s < kArrowSegments; ++s) {
      const double ang = kTwoPi * s / kArrowSegments;
      v.push_back(c + (u * std::cos(ang) + w * std::sin(ang)) * r);
    }
  };
  v.push_back(from);
  ring(from, shaft_radius);
  ring(neck, shaft_radius);
  ring(neck, 2.0 * shaft_radius);
  v.push_back(to);

  const auto n = static_cast<std::uint32_t>(kArrowSegments);
  const std::uint32_t base = 1, shaft_top = base + n, head_ring = shaft_top + n, apex = head_ring + n;
  auto& f = a.mesh.faces;
  for (std::uint32_t s = 0; s < n; ++s) {
    const std::uint32_t t = (s + 1) % n;
    f.push_back({0, base + t, base + s});
    f.push_back({base + s, base + t, shaft_top + t});
    f.push_back({base + s, shaft_top + t, shaft_top + s});
    f.push_back({shaft_top + s, shaft_top + t, head_ring + t});
    f.push_back({shaft_top + s, head_ring + t, head_ring + s});
    f.push_back({head_ring + s, head_ring + t, apex});
  }
  return a;
}

SceneNode arrow(const Vec3& from, const Vec3& to, const Color& color, double shaft_radius) {
  SceneNode n;
  n.geometry = arrow_shape(from, to, shaft_radius);
  n.color = color;
  return n;
}

std::array<std::string, 3> add_axes_triad(Scene& scene, double length, double shaft_radius) {
  if (!(length > 0.0)) throw Error(ErrorCode::invalid_argument, "axes length must be positive");
  const RoleColor roles[3] = {RoleColor::red(), RoleColor::green(), RoleColor::blue()};
  const Vec3 tips[3] = {{length, 0, 0}, {0, length, 0}, {0, 0, length}};
  std::array<std::string, 3> ids;
  for (int i = 0; i < 3; ++i) {
    SceneNode n = arrow({0, 0, 0}, tips[i], roles[i].color(), shaft_radius);
    n.role = roles[i].role;
    ids[static_cast<std::size_t>(i)] = scene.add(std::move(n));
  }
  return ids;
}

Scene bake(const Scene& scene, const std::vector<double>& fractions) {
  if (fractions.size() != scene.tracks.size()) {
    throw Error(ErrorCode::invalid_argument, "one fraction per track is required");
  }
  Scene out = scene;
  out.tracks.clear();
  // Wrappers nest in track order, the first track outermost.
  for (std::size_t k = scene.tracks.size(); k-- > 0;) {
    const auto& track = scene.tracks[k];
    SceneNode* node = out.find(track.target_id);
    const KeyValue v = track.sample(fractions[k]);
    switch (track.kind) {
      case TrackKind::rotation: {
        Transform w;
        w.rotation = std::get<AxisAngle>(v);
        if (w.rotation.angle == 0.0) w.rotation = {};
        node->transform = compose(w, node->transform);
        break;
      }
      case TrackKind::position: {
        Transform w;
        w.translation = std::get<Vec3>(v);
        node->transform = compose(w, node->transform);
        break;
      }
      case TrackKind::morph: *node->morph_points() = std::get<std::vector<Vec3>>(v); break;
    }
  }
  return out;
}

Scene bake_frame(const Scene& scene, int k, int n_frames) {
  if (n_frames < 1 || k < 0 || k >= n_frames) throw Error(ErrorCode::invalid_argument, "frame index out of range");
  const double t_ref = scene.reference_period();
  std::vector<double> fractions;
  for (const auto& t : scene.tracks) {
    double f = std::fmod(static_cast<double>(k) / n_frames * (t_ref / t.period), 1.0);
    fractions.push_back(f);
  }
  return bake(scene, fractions);
}

}  // namespace virtlab

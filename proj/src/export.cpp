#include "virtlab/export.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "virtlab/error.hpp"

namespace virtlab {

namespace {

using ojson = nlohmann::ordered_json;

std::string num(double x) { return format_number(x); }

std::string vec(const Vec3& v) { return num(v.x) + " " + num(v.y) + " " + num(v.z); }

std::string color_text(const Color& c) { return num(c.r) + " " + num(c.g) + " " + num(c.b); }

std::string rotation_text(const AxisAngle& r) {
  const Vec3 a = normalized(r.axis);
  return vec(a == Vec3{} ? Vec3{0, 0, 1} : a) + " " + num(r.angle);
}

std::string quoted(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

// Camera orientation: VRML cameras look down -z with +y up.
AxisAngle camera_orientation(const Viewpoint& v) {
  const Vec3 d = normalized(v.look_at - v.position);
  Vec3 up{0, 0, 1};
  if (norm(cross(d, up)) < 1e-9) up = {0, 1, 0};
  const Vec3 right = normalized(cross(d, up));
  const Vec3 cam_up = cross(right, d);
  Mat3 m;
  const Vec3 cols[3] = {right, cam_up, d * -1.0};
  for (int c = 0; c < 3; ++c) {
    m(0, c) = cols[c].x;
    m(1, c) = cols[c].y;
    m(2, c) = cols[c].z;
  }
  return axis_angle_from_matrix(m);
}

class VrmlWriter {
 public:
  std::string str() const { return out_.str(); }

  void line(int depth, const std::string& s) { out_ << std::string(static_cast<std::size_t>(2 * depth), ' ') << s << '\n'; }

  void points(int depth, const std::vector<Vec3>& pts) {
    for (const auto& p : pts) line(depth, vec(p) + ",");
  }

  void header(const Scene& s) {
    line(0, kVrmlHeader);
    line(0, "Background { skyColor [ " + color_text(s.background) + " ] }");
    for (const auto& v : s.viewpoints) {
      line(0, "Viewpoint {");
      line(1, "position " + vec(v.position));
      line(1, "orientation " + rotation_text(camera_orientation(v)));
      line(1, "description " + quoted(v.description));
      line(0, "}");
    }
  }

  void node(int depth, const SceneNode& n) {
    line(depth, "DEF " + n.id + " Transform {");
    const Transform& t = n.transform;
    if (t.translation != Vec3{}) line(depth + 1, "translation " + vec(t.translation));
    if (t.rotation.angle != 0.0) line(depth + 1, "rotation " + rotation_text(t.rotation));
    if (t.scale != 1.0) line(depth + 1, "scale " + num(t.scale) + " " + num(t.scale) + " " + num(t.scale));
    line(depth + 1, "children [");
    if (n.kind() == NodeKind::text) {
      line(depth + 2, "Billboard {");
      line(depth + 3, "axisOfRotation 0 0 0");
      line(depth + 3, "children [");
      shape(depth + 4, n);
      line(depth + 3, "]");
      line(depth + 2, "}");
    } else {
      shape(depth + 2, n);
    }
    line(depth + 1, "]");
    line(depth, "}");
  }

  void shape(int depth, const SceneNode& n) {
    const bool lines = n.kind() == NodeKind::polyline;
    line(depth, "Shape {");
    line(depth + 1, "appearance Appearance {");
    line(depth + 2, "material Material {");
    line(depth + 3, "diffuseColor " + color_text(n.color));
    if (lines || n.kind() == NodeKind::text) line(depth + 3, "emissiveColor " + color_text(n.color));
    line(depth + 3, "transparency " + num(1.0 - n.opacity));
    line(depth + 2, "}");
    line(depth + 1, "}");
    std::visit([&](const auto& g) { geometry(depth + 1, n.id, g); }, n.geometry);
    line(depth, "}");
  }

  void geometry(int depth, const std::string& id, const SurfaceMesh& m) {
    line(depth, "geometry IndexedFaceSet {");
    line(depth + 1, "solid FALSE");
    line(depth + 1, "creaseAngle 0.5");
    line(depth + 1, "coord DEF " + id + "_coord Coordinate {");
    line(depth + 2, "point [");
    points(depth + 3, m.vertices);
    line(depth + 2, "]");
    line(depth + 1, "}");
    line(depth + 1, "coordIndex [");
    for (const auto& f : m.faces) {
      line(depth + 2, std::to_string(f[0]) + " " + std::to_string(f[1]) + " " + std::to_string(f[2]) + " -1,");
    }
    line(depth + 1, "]");
    line(depth, "}");
  }

  void geometry(int depth, const std::string& id, const ArrowShape& a) { geometry(depth, id, a.mesh); }

  void geometry(int depth, const std::string& id, const Polyline& p) {
    line(depth, "geometry IndexedLineSet {");
    line(depth + 1, "coord DEF " + id + "_coord Coordinate {");
    line(depth + 2, "point [");
    points(depth + 3, p.points);
    line(depth + 2, "]");
    line(depth + 1, "}");
    std::string idx;
    for (std::size_t i = 0; i < p.points.size(); ++i) idx += std::to_string(i) + " ";
    if (p.closed) idx += "0 ";
    line(depth + 1, "coordIndex [ " + idx + "-1 ]");
    line(depth, "}");
  }

  void geometry(int depth, const std::string&, const TextLabel& t) {
    line(depth, "geometry Text {");
    line(depth + 1, "string [ " + quoted(t.text) + " ]");
    line(depth + 1, "fontStyle FontStyle { size " + num(t.size) + " justify \"MIDDLE\" }");
    line(depth, "}");
  }

  void track(std::size_t k, const AnimationTrack& t) {
    const std::string base = t.target_id + "_A" + std::to_string(k);
    line(0, "DEF " + base + "_clock TimeSensor { cycleInterval " + num(t.period) + " loop TRUE }");
    const char* type = t.kind == TrackKind::rotation   ? "OrientationInterpolator"
                       : t.kind == TrackKind::position ? "PositionInterpolator"
                                                       : "CoordinateInterpolator";
    line(0, "DEF " + base + "_interp " + type + " {");
    std::string keys;
    for (const auto& kf : t.keyframes) keys += num(kf.fraction) + " ";
    line(1, "key [ " + keys + "]");
    line(1, "keyValue [");
    for (const auto& kf : t.keyframes) {
      if (const auto* r = std::get_if<AxisAngle>(&kf.value)) line(2, rotation_text(*r) + ",");
      else if (const auto* p = std::get_if<Vec3>(&kf.value)) line(2, vec(*p) + ",");
      else points(2, std::get<std::vector<Vec3>>(kf.value));
    }
    line(1, "]");
    line(0, "}");
    line(0, "ROUTE " + base + "_clock.fraction_changed TO " + base + "_interp.set_fraction");
    const std::string target = t.kind == TrackKind::morph ? t.target_id + "_coord.set_point"
                               : t.kind == TrackKind::rotation ? base + ".set_rotation"
                                                               : base + ".set_translation";
    line(0, "ROUTE " + base + "_interp.value_changed TO " + target);
  }

 private:
  std::ostringstream out_;
};

std::string write(const Scene& scene, bool animated) {
  scene.validate();
  VrmlWriter w;
  w.header(scene);
  for (const auto& n : scene.nodes) {
    // Every rotation or position track gets its own wrapper, first track outermost.
    std::vector<std::size_t> wrappers;
    if (animated) {
      for (std::size_t k = 0; k < scene.tracks.size(); ++k) {
        if (scene.tracks[k].target_id == n.id && scene.tracks[k].kind != TrackKind::morph) wrappers.push_back(k);
      }
    }
    int depth = 0;
    for (std::size_t k : wrappers) {
      w.line(depth, "DEF " + n.id + "_A" + std::to_string(k) + " Transform {");
      const KeyValue& first = scene.tracks[k].keyframes.front().value;
      if (const auto* r = std::get_if<AxisAngle>(&first); r && r->angle != 0.0) {
        w.line(depth + 1, "rotation " + rotation_text(*r));
      } else if (const auto* p = std::get_if<Vec3>(&first); p && *p != Vec3{}) {
        w.line(depth + 1, "translation " + vec(*p));
      }
      w.line(depth + 1, "children [");
      depth += 2;
    }
    w.node(depth, n);
    for (std::size_t i = 0; i < wrappers.size(); ++i) {
      depth -= 2;
      w.line(depth + 1, "]");
      w.line(depth, "}");
    }
  }
  if (animated) {
    for (std::size_t k = 0; k < scene.tracks.size(); ++k) w.track(k, scene.tracks[k]);
  }
  return w.str();
}

std::string hex_color(const Color& c) {
  char buf[8];
  auto channel = [](double v) { return static_cast<int>(std::lround(std::clamp(v, 0.0, 1.0) * 255.0)); };
  std::snprintf(buf, sizeof buf, "#%02X%02X%02X", channel(c.r), channel(c.g), channel(c.b));
  return buf;
}

ojson json_vec(const Vec3& v) { return ojson::array({round9(v.x), round9(v.y), round9(v.z)}); }

ojson json_color(const Color& c) { return ojson::array({round9(c.r), round9(c.g), round9(c.b)}); }

ojson json_points(const std::vector<Vec3>& pts) {
  ojson a = ojson::array();
  for (const auto& p : pts) a.push_back(json_vec(p));
  return a;
}

ojson json_faces(const std::vector<Face>& faces) {
  ojson a = ojson::array();
  for (const auto& f : faces) a.push_back(ojson::array({f[0], f[1], f[2]}));
  return a;
}

ojson json_rotation(const AxisAngle& r) {
  const Vec3 a = r.axis == Vec3{} ? Vec3{0, 0, 1} : normalized(r.axis);
  return ojson::array({round9(a.x), round9(a.y), round9(a.z), round9(rad2deg(r.angle))});
}

ojson json_geometry(const Geometry& g) {
  ojson j = ojson::object();
  if (const auto* m = std::get_if<SurfaceMesh>(&g)) {
    j["vertices"] = json_points(m->vertices);
    j["faces"] = json_faces(m->faces);
  } else if (const auto* p = std::get_if<Polyline>(&g)) {
    j["points"] = json_points(p->points);
    j["closed"] = p->closed;
  } else if (const auto* a = std::get_if<ArrowShape>(&g)) {
    j["from"] = json_vec(a->from);
    j["to"] = json_vec(a->to);
    j["shaft_radius"] = round9(a->shaft_radius);
    j["vertices"] = json_points(a->mesh.vertices);
    j["faces"] = json_faces(a->mesh.faces);
  } else {
    const auto& t = std::get<TextLabel>(g);
    j["text"] = t.text;
    j["size"] = round9(t.size);
  }
  return j;
}

}  // namespace

std::string format_number(double x) {
  if (!std::isfinite(x)) throw Error(ErrorCode::invalid_argument, "cannot format a non-finite number");
  if (std::abs(x) < 1e-9) return "0";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  std::string s = buf;
  if (s == "-0") return "0";
  return s;
}

double round9(double x) {
  if (!std::isfinite(x)) throw Error(ErrorCode::invalid_argument, "cannot serialize a non-finite number");
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", x);
  const double r = std::strtod(buf, nullptr);
  return r == 0.0 ? 0.0 : r;
}

std::string write_vrml(const Scene& scene) { return write(scene, true); }

std::vector<std::string> frame_documents(const Scene& scene, int n_frames) {
  if (n_frames < 1) throw Error(ErrorCode::invalid_argument, "frame count must be at least 1");
  if (scene.tracks.empty()) throw Error(ErrorCode::invalid_scene, "frame sequence needs at least one track");
  scene.validate();
  std::vector<std::string> docs;
  docs.reserve(static_cast<std::size_t>(n_frames));
  for (int k = 0; k < n_frames; ++k) docs.push_back(write(bake_frame(scene, k, n_frames), false));
  return docs;
}

std::vector<std::filesystem::path> write_frame_sequence(const Scene& scene, int n_frames,
                                                        const std::filesystem::path& out_dir) {
  const auto docs = frame_documents(scene, n_frames);
  std::vector<std::filesystem::path> paths;
  for (std::size_t k = 0; k < docs.size(); ++k) {
    char name[32];
    std::snprintf(name, sizeof name, "frame_%03zu.wrl", k);
    paths.push_back(out_dir / name);
    write_text_file(paths.back(), docs[k]);
  }
  return paths;
}

std::string write_svg_polar(const std::vector<patterns::PlaneCut>& cuts, int size_px, int rings) {
  if (cuts.empty()) throw Error(ErrorCode::invalid_argument, "polar plot needs at least one cut");
  if (size_px < 16 || rings < 1) throw Error(ErrorCode::invalid_argument, "bad polar plot size or ring count");
  const double c = size_px / 2.0;
  const double radius = 0.45 * size_px;
  std::ostringstream o;
  o << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << size_px << "\" height=\"" << size_px
    << "\" viewBox=\"0 0 " << size_px << " " << size_px << "\">\n";
  o << "<rect width=\"100%\" height=\"100%\" fill=\"#FFFFFF\"/>\n";
  o << "<g fill=\"none\" stroke=\"#BBBBBB\" stroke-width=\"0.5\">\n";
  for (int i = 1; i <= rings; ++i) {
    o << "<circle cx=\"" << num(c) << "\" cy=\"" << num(c) << "\" r=\"" << num(radius * i / rings) << "\"/>\n";
  }
  for (int deg = 0; deg < 180; deg += 30) {
    const double a = deg2rad(deg);
    const double dx = radius * std::cos(a), dy = radius * std::sin(a);
    o << "<line x1=\"" << num(c - dx) << "\" y1=\"" << num(c + dy) << "\" x2=\"" << num(c + dx) << "\" y2=\""
      << num(c - dy) << "\"/>\n";
  }
  o << "</g>\n";
  o << "<g fill=\"none\" stroke-width=\"1.5\">\n";
  for (const auto& cut : cuts) {
    if (cut.angles.size() != cut.values.size() || cut.values.empty()) {
      throw Error(ErrorCode::invalid_argument, "cut angles and values differ in length");
    }
    o << "<path stroke=\"" << hex_color(cut.role_color.color()) << "\" data-plane=\"" << patterns::to_string(cut.plane)
      << "\" d=\"";
    for (std::size_t k = 0; k < cut.values.size(); ++k) {
      const double rr = radius * cut.values[k];
      o << (k == 0 ? "M" : " L") << num(c + rr * std::cos(cut.angles[k])) << " " << num(c - rr * std::sin(cut.angles[k]));
    }
    o << " Z\"/>\n";
  }
  o << "</g>\n</svg>\n";
  return o.str();
}

std::string write_mesh_json(const SurfaceMesh& mesh, const std::optional<std::vector<double>>& values) {
  ojson j = ojson::object();
  j["vertices"] = json_points(mesh.vertices);
  j["faces"] = json_faces(mesh.faces);
  if (values) {
    ojson v = ojson::array();
    for (double x : *values) v.push_back(round9(x));
    j["values"] = std::move(v);
  }
  return j.dump();
}

std::string write_mesh_json(const patterns::PatternGrid& pg, patterns::Mapping mapping) {
  return write_mesh_json(patterns::pattern_surface(pg, mapping), patterns::pattern_vertex_values(pg));
}

std::string write_scene_json(const Scene& scene) {
  scene.validate();
  ojson j = ojson::object();
  j["background"] = json_color(scene.background);
  j["viewpoints"] = ojson::array();
  for (const auto& v : scene.viewpoints) {
    j["viewpoints"].push_back({{"position", json_vec(v.position)}, {"look_at", json_vec(v.look_at)},
                               {"description", v.description}});
  }
  j["nodes"] = ojson::array();
  for (const auto& n : scene.nodes) {
    ojson node = ojson::object();
    node["id"] = n.id;
    node["kind"] = to_string(n.kind());
    node["color"] = json_color(n.color);
    node["opacity"] = round9(n.opacity);
    node["transform"] = {{"translation", json_vec(n.transform.translation)},
                         {"rotation", json_rotation(n.transform.rotation)},
                         {"scale", round9(n.transform.scale)}};
    node["geometry"] = json_geometry(n.geometry);
    j["nodes"].push_back(std::move(node));
  }
  j["tracks"] = ojson::array();
  for (const auto& t : scene.tracks) {
    ojson tr = ojson::object();
    tr["target"] = t.target_id;
    tr["kind"] = to_string(t.kind);
    tr["period"] = round9(t.period);
    ojson keys = ojson::array(), values = ojson::array();
    for (const auto& kf : t.keyframes) {
      keys.push_back(round9(kf.fraction));
      if (const auto* r = std::get_if<AxisAngle>(&kf.value)) values.push_back(json_rotation(*r));
      else if (const auto* p = std::get_if<Vec3>(&kf.value)) values.push_back(json_vec(*p));
      else values.push_back(json_points(std::get<std::vector<Vec3>>(kf.value)));
    }
    tr["keys"] = std::move(keys);
    tr["values"] = std::move(values);
    j["tracks"].push_back(std::move(tr));
  }
  return j.dump();
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::error_code ec;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorCode::io_error, "cannot write " + path.string());
  f << text;
  if (!f) throw Error(ErrorCode::io_error, "write failed for " + path.string());
}

}  // namespace virtlab

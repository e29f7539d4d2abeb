#include <cmath>
#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "support.hpp"
#include "virtlab/coords.hpp"
#include "virtlab/error.hpp"
#include "virtlab/export.hpp"

using namespace virtlab;

namespace {

int count(const std::string& text, const std::string& needle) {
  int n = 0;
  for (std::size_t p = text.find(needle); p != std::string::npos; p = text.find(needle, p + 1)) ++n;
  return n;
}

Scene animated_scene() {
  Scene s;
  s.viewpoints.push_back(default_first_octant_viewpoint());
  s.viewpoints.push_back({{0, 0, 5}, {0, 0, 0}, "top"});
  add_axes_triad(s);
  const auto circle = coords::coordinate_curve(coords::PhiCircle{1.0, kPi / 3}, 24);
  const auto cid = s.add_polyline(circle);
  const auto sid = s.add_mesh(coords::coordinate_surface_mesh({}), 0.4);
  s.add_text("z", {0, 0, 1.1});
  AnimationTrack spin{sid, TrackKind::rotation, 8.0, {}};
  for (int k = 0; k <= 4; ++k) spin.keyframes.push_back({k / 4.0, AxisAngle{{0, 0, 1}, kTwoPi * k / 4}});
  s.add_track(spin);
  AnimationTrack morph{cid, TrackKind::morph, 2.0, {}};
  for (int k = 0; k <= 2; ++k) {
    morph.keyframes.push_back(
        {k / 2.0, coords::coordinate_curve(coords::PhiCircle{1.0 + 0.25 * k, kPi / 3}, 24).points});
  }
  s.add_track(morph);
  s.add_track({"N0001", TrackKind::position, 4.0, {{0, Vec3{}}, {0.5, Vec3{0, 0, 0.5}}, {1, Vec3{}}}});
  return s;
}

}  // namespace

TEST_CASE("number formatting") {
  CHECK(format_number(0.0) == "0");
  CHECK(format_number(-0.0) == "0");
  CHECK(format_number(-1e-12) == "0");
  CHECK(format_number(1.0) == "1");
  CHECK(format_number(0.5) == "0.5");
  CHECK(format_number(1.0 / 3.0) == "0.333333");
  CHECK(format_number(-2.5e-5) == "-2.5e-05");
  CHECK(format_number(123456789.0) == "1.23457e+08");
  CHECK(format_number(std::cos(kPi / 2)) == "0");
  CHECK_THROWS_AS(format_number(NAN), Error);
}

TEST_CASE("empty scene with one viewpoint") {
  Scene s;
  s.viewpoints.push_back(default_first_octant_viewpoint());
  const std::string doc = write_vrml(s);
  std::istringstream in(doc);
  std::string first;
  std::getline(in, first);
  CHECK(first == "#VRML V2.0 utf8");
  CHECK(doc.find("Background") != std::string::npos);
  CHECK(count(doc, "Viewpoint {") == 1);
  CHECK(count(doc, "Transform") == 0);
  CHECK(count(doc, "ROUTE") == 0);
  const auto sum = read_vrml(doc);
  CHECK(sum.node_total == 2);
  CHECK(sum.node_counts.at("Viewpoint") == 1);

  CHECK_THROWS_AS(write_vrml(Scene{}), Error);
}

TEST_CASE("axes triad colours") {
  Scene s;
  s.viewpoints.push_back(default_first_octant_viewpoint());
  add_axes_triad(s);
  const std::string doc = write_vrml(s);
  CHECK(doc.find("diffuseColor 1 0 0\n") != std::string::npos);
  CHECK(doc.find("diffuseColor 0 1 0\n") != std::string::npos);
  CHECK(doc.find("diffuseColor 0 0 1\n") != std::string::npos);
  CHECK(doc.find("-0 ") == std::string::npos);
  CHECK(doc.find("\r") == std::string::npos);
}

TEST_CASE("viewpoint orientation looks at the target") {
  Scene s;
  s.viewpoints.push_back(default_first_octant_viewpoint());
  const std::string doc = write_vrml(s);
  std::smatch m;
  REQUIRE(std::regex_search(doc, m, std::regex("orientation (\\S+) (\\S+) (\\S+) (\\S+)")));
  const AxisAngle r{{std::stod(m[1]), std::stod(m[2]), std::stod(m[3])}, std::stod(m[4])};
  const Vec3 look = rotate(r, {0, 0, -1});
  const Vec3 want = normalized(Vec3{-2.5, -2.0, -1.5});
  CHECK(distance(look, want) <= 1e-5);
  const Vec3 up = rotate(r, {0, 1, 0});
  CHECK(up.z > 0.0);
  CHECK(std::abs(dot(up, want)) <= 1e-5);
}

TEST_CASE("animated scene structure and reader round trip") {
  const Scene s = animated_scene();
  const std::string doc = write_vrml(s);
  CHECK(doc == write_vrml(s));
  const auto sum = read_vrml(doc);
  CHECK(sum.header == "#VRML V2.0 utf8");

  std::vector<std::string> defs;
  for (const auto& n : s.nodes) {
    for (std::size_t k = 0; k < s.tracks.size(); ++k) {
      if (s.tracks[k].target_id == n.id && s.tracks[k].kind != TrackKind::morph) {
        defs.push_back(n.id + "_A" + std::to_string(k));
      }
    }
    defs.push_back(n.id);
    if (n.kind() != NodeKind::text) defs.push_back(n.id + "_coord");
  }
  for (std::size_t k = 0; k < s.tracks.size(); ++k) {
    defs.push_back(s.tracks[k].target_id + "_A" + std::to_string(k) + "_clock");
    defs.push_back(s.tracks[k].target_id + "_A" + std::to_string(k) + "_interp");
  }
  CHECK(sum.def_names == defs);
  CHECK(sum.routes.size() == 2 * s.tracks.size());
  CHECK(sum.node_counts.at("Shape") == static_cast<int>(s.nodes.size()));
  CHECK(sum.node_counts.at("TimeSensor") == 3);
  CHECK(sum.node_counts.at("OrientationInterpolator") == 1);
  CHECK(sum.node_counts.at("CoordinateInterpolator") == 1);
  CHECK(sum.node_counts.at("PositionInterpolator") == 1);
  CHECK(sum.node_counts.at("Viewpoint") == 2);
  CHECK(sum.node_counts.at("Text") == 1);
  CHECK(sum.routes[3].second == "N0004_coord.set_point");
  CHECK(sum.routes[1].second == "N0005_A0.set_rotation");
  CHECK(sum.routes[5].second == "N0001_A2.set_translation");
  CHECK(count(doc, "cycleInterval 8 loop TRUE") == 1);
  CHECK(doc.find("transparency 0.6\n") != std::string::npos);
}

TEST_CASE("reader rejects malformed documents") {
  CHECK_THROWS_AS(read_vrml("not vrml\n"), Error);
  CHECK_THROWS_AS(read_vrml("#VRML V2.0 utf8\nShape {\n"), Error);
  CHECK_THROWS_AS(read_vrml("#VRML V2.0 utf8\nShape { geometry }\n"), Error);
  CHECK_THROWS_AS(read_vrml("#VRML V2.0 utf8\nROUTE a TO b.c\n"), Error);
  CHECK_THROWS_AS(read_vrml("#VRML V2.0 utf8\nText { string [ \"open ] }\n"), Error);
  const auto ok = read_vrml("#VRML V2.0 utf8\n# comment\nDEF A Group { children [ USE B Shape { } ] }\n");
  CHECK(ok.node_total == 2);
  CHECK(ok.def_names == std::vector<std::string>{"A"});
}

TEST_CASE("frame sequences") {
  const Scene s = animated_scene();
  const auto docs = frame_documents(s, 8);
  REQUIRE(docs.size() == 8);
  for (const auto& d : docs) {
    const auto sum = read_vrml(d);
    CHECK(sum.routes.empty());
    CHECK(sum.node_counts.count("TimeSensor") == 0);
    CHECK(sum.node_counts.at("Shape") == static_cast<int>(s.nodes.size()));
  }
  CHECK(docs[1] != docs[0]);

  // Frame 0: every track at phase 0. Here each first keyframe is the rest
  // state, so frame 0 is the static scene itself.
  Scene still = s;
  still.tracks.clear();
  CHECK(docs[0] == write_vrml(still));

  // Morph-only: no wrappers, so frame 0 is the animated document minus its tail.
  Scene morph_only = s;
  morph_only.tracks = {s.tracks[1]};
  std::string animated = write_vrml(morph_only);
  animated = animated.substr(0, animated.find("DEF N0004_A0_clock"));
  CHECK(frame_documents(morph_only, 3)[0] == animated);

  Scene trackless = s;
  trackless.tracks.clear();
  CHECK_THROWS_AS(frame_documents(trackless, 4), Error);
  CHECK_THROWS_AS(frame_documents(s, 0), Error);

  const auto dir = std::filesystem::temp_directory_path() / "virtlab_frames_test";
  std::filesystem::remove_all(dir);
  const auto paths = write_frame_sequence(s, 37, dir);
  REQUIRE(paths.size() == 37);
  CHECK(paths.front().filename() == "frame_000.wrl");
  CHECK(paths.back().filename() == "frame_036.wrl");
  int files = 0;
  for (const auto& e : std::filesystem::directory_iterator(dir)) files += e.is_regular_file();
  CHECK(files == 37);
  std::ifstream f(paths[5]);
  std::stringstream buf;
  buf << f.rdbuf();
  CHECK(buf.str() == frame_documents(s, 37)[5]);
  std::filesystem::remove_all(dir);
}

TEST_CASE("svg polar plot") {
  patterns::PlaneCut unit{patterns::Plane::xoy, {}, {}, RoleColor::red()};
  for (int k = 0; k < 36; ++k) {
    unit.angles.push_back(kTwoPi * k / 36);
    unit.values.push_back(1.0);
  }
  const std::string svg = write_svg_polar({unit}, 400, 4);
  CHECK(count(svg, "<path") == 1);
  CHECK(count(svg, "<circle") == 4);
  std::smatch m;
  REQUIRE(std::regex_search(svg, m, std::regex("d=\"([^\"]*)\"")));
  const std::string d = m[1];
  std::regex pt("([0-9.e+-]+) ([0-9.e+-]+)");
  int n = 0;
  for (auto it = std::sregex_iterator(d.begin(), d.end(), pt); it != std::sregex_iterator(); ++it, ++n) {
    const double x = std::stod((*it)[1]) - 200, y = std::stod((*it)[2]) - 200;
    CHECK(std::hypot(x, y) == doctest::Approx(180).epsilon(1e-5));
  }
  CHECK(n == 36);
  CHECK(svg.find("r=\"180\"") != std::string::npos);
  CHECK(svg.find("r=\"45\"") != std::string::npos);

  const auto cuts = patterns::main_plane_cuts(farfield::AntennaArray({farfield::DipoleElement::sinusoidal(
                                                  {0, 0, 0}, {0.2, 0.4, 0.894}, 2.4)}),
                                              72);
  const std::string three = write_svg_polar(cuts);
  CHECK(count(three, "<path") == 3);
  const auto r = three.find("stroke=\"#FF0000\""), g = three.find("stroke=\"#00FF00\""),
             b = three.find("stroke=\"#0000FF\"");
  REQUIRE(r != std::string::npos);
  REQUIRE(g != std::string::npos);
  REQUIRE(b != std::string::npos);
  CHECK(r < g);
  CHECK(g < b);
  CHECK(three == write_svg_polar(cuts));
  CHECK_THROWS_AS(write_svg_polar({}), Error);
}

TEST_CASE("mesh json") {
  SurfaceMesh tri;
  tri.vertices = {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}};
  tri.faces = {{0, 1, 2}};
  CHECK(write_mesh_json(tri) == R"({"vertices":[[0.0,0.0,0.0],[1.0,0.0,0.0],[0.0,1.0,0.0]],"faces":[[0,1,2]]})");
  CHECK(write_mesh_json(tri, std::vector<double>{1, 0.5, 0}) ==
        R"({"vertices":[[0.0,0.0,0.0],[1.0,0.0,0.0],[0.0,1.0,0.0]],"faces":[[0,1,2]],"values":[1.0,0.5,0.0]})");

  const auto pg = patterns::pattern_grid(
      farfield::AntennaArray({farfield::DipoleElement::sinusoidal({0, 0, 0}, {0.2, 0.4, 0.894}, 2.4)}), {37, 72});
  const std::string text = write_mesh_json(pg);
  CHECK(text == write_mesh_json(pg));
  const auto j = nlohmann::json::parse(text);
  const auto mesh = patterns::pattern_surface(pg);
  REQUIRE(j["vertices"].size() == mesh.vertices.size());
  double worst = 0.0;
  for (std::size_t i = 0; i < mesh.vertices.size(); ++i) {
    const auto& v = j["vertices"][i];
    worst = std::max({worst, std::abs(v[0].get<double>() - mesh.vertices[i].x),
                      std::abs(v[1].get<double>() - mesh.vertices[i].y),
                      std::abs(v[2].get<double>() - mesh.vertices[i].z)});
  }
  CHECK(worst <= 1e-9);
  CHECK(j["values"].size() == mesh.vertices.size());
  CHECK(round9(-1e-300) == -1e-300);
  CHECK(!std::signbit(round9(-0.0)));
  CHECK(round9(1.0 / 3.0) == 0.333333333);
}

TEST_CASE("scene json") {
  const Scene s = animated_scene();
  const std::string text = write_scene_json(s);
  CHECK(text == write_scene_json(s));
  const auto j = nlohmann::json::parse(text);
  CHECK(j["nodes"].size() == s.nodes.size());
  CHECK(j["tracks"].size() == 3);
  CHECK(j["nodes"][0]["kind"] == "arrow");
  CHECK(j["nodes"][0]["color"] == nlohmann::json::array({1.0, 0.0, 0.0}));
  CHECK(j["tracks"][0]["values"][1][3].get<double>() == doctest::Approx(90.0));
  CHECK(j["viewpoints"].size() == 2);
  const auto baked = nlohmann::json::parse(write_scene_json(bake_frame(s, 1, 4)));
  CHECK(baked["tracks"].empty());
}

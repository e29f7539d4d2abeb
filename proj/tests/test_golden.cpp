#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "doctest.h"
#include "virtlab/export.hpp"
#include "virtlab/scenarios.hpp"

using namespace virtlab;
namespace fs = std::filesystem;

namespace {

const fs::path kGolden = VIRTLAB_GOLDEN_DIR;

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE_MESSAGE(in.good(), "missing golden " << p.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// What a reader must recover from a scene's document, derived from the scene
// model rather than the writer.
struct Expected {
  std::vector<std::string> defs;
  std::vector<std::pair<std::string, std::string>> routes;
};

Expected expected_structure(const Scene& s) {
  Expected e;
  for (const auto& n : s.nodes) {
    for (std::size_t k = 0; k < s.tracks.size(); ++k) {
      if (s.tracks[k].target_id == n.id && s.tracks[k].kind != TrackKind::morph) {
        e.defs.push_back(n.id + "_A" + std::to_string(k));
      }
    }
    e.defs.push_back(n.id);
    if (n.kind() != NodeKind::text) e.defs.push_back(n.id + "_coord");
  }
  for (std::size_t k = 0; k < s.tracks.size(); ++k) {
    const auto& t = s.tracks[k];
    const std::string base = t.target_id + "_A" + std::to_string(k);
    e.defs.push_back(base + "_clock");
    e.defs.push_back(base + "_interp");
    e.routes.emplace_back(base + "_clock.fraction_changed", base + "_interp.set_fraction");
    std::string to;
    switch (t.kind) {
      case TrackKind::rotation: to = base + ".set_rotation"; break;
      case TrackKind::position: to = base + ".set_translation"; break;
      case TrackKind::morph: to = t.target_id + "_coord.set_point"; break;
    }
    e.routes.emplace_back(base + "_interp.value_changed", to);
  }
  return e;
}

}  // namespace

TEST_CASE("catalog exports byte-match the frozen goldens") {
  std::set<std::string> expected_files;
  for (const auto& spec : scenarios::catalog()) {
    CAPTURE(spec.id);
    const auto built = scenarios::build(spec);

    const std::string wrl = write_vrml(built.scene);
    const std::string golden_wrl = slurp(kGolden / (spec.id + ".wrl"));
    CHECK(wrl == golden_wrl);
    CHECK(golden_wrl.substr(0, golden_wrl.find('\n')) == "#VRML V2.0 utf8");
    expected_files.insert(spec.id + ".wrl");

    CHECK(built.products.dump(2) + "\n" == slurp(kGolden / (spec.id + ".json")));
    expected_files.insert(spec.id + ".json");

    if (!built.cuts.empty()) {
      CHECK(write_svg_polar(built.cuts) == slurp(kGolden / (spec.id + "_cuts.svg")));
      expected_files.insert(spec.id + "_cuts.svg");
    }
  }
  std::set<std::string> present;
  for (const auto& e : fs::directory_iterator(kGolden)) present.insert(e.path().filename().string());
  CHECK(present == expected_files);
}

TEST_CASE("reader round-trips every golden world") {
  for (const auto& spec : scenarios::catalog()) {
    CAPTURE(spec.id);
    const auto built = scenarios::build(spec);
    const Scene& s = built.scene;
    const auto sum = read_vrml(slurp(kGolden / (spec.id + ".wrl")));
    const auto want = expected_structure(s);
    CHECK(sum.header == "#VRML V2.0 utf8");
    CHECK(sum.def_names == want.defs);
    CHECK(sum.routes == want.routes);

    int texts = 0;
    for (const auto& n : s.nodes) texts += n.kind() == NodeKind::text;
    CHECK(sum.node_counts.at("Shape") == static_cast<int>(s.nodes.size()));
    CHECK(sum.node_counts.at("Viewpoint") == static_cast<int>(s.viewpoints.size()));
    CHECK(sum.node_counts.count("Text") == (texts ? 1u : 0u));
    if (texts) CHECK(sum.node_counts.at("Text") == texts);
    const int clocks = sum.node_counts.count("TimeSensor") ? sum.node_counts.at("TimeSensor") : 0;
    CHECK(clocks == static_cast<int>(s.tracks.size()));
  }
}

// Acceptance run: one PASS/FAIL line per criterion, exit status 1 on any FAIL.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include "httplib.h"
#include "json.hpp"
#include "support.hpp"
#include "virtlab/api.hpp"
#include "virtlab/coords.hpp"
#include "virtlab/error.hpp"
#include "virtlab/export.hpp"
#include "virtlab/farfield.hpp"
#include "virtlab/patterns.hpp"
#include "virtlab/scenarios.hpp"
#include "virtlab/service.hpp"
#include "virtlab/waves.hpp"

using namespace virtlab;
using nlohmann::json;

namespace {

int failures = 0;

void report(const char* name, bool ok, const std::string& detail) {
  std::printf("%s  %-28s %s\n", ok ? "PASS" : "FAIL", name, detail.c_str());
  std::fflush(stdout);
  failures += !ok;
}

std::string fmt(const char* f, double a, double b = 0, double c = 0, double d = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c, d);
  return buf;
}

template <class F>
bool throws_code(F&& f, ErrorCode code) {
  try {
    f();
  } catch (const Error& e) {
    return e.code() == code;
  }
  return false;
}

Vec3 dir_deg(double theta, double phi) {
  const double t = deg2rad(theta), p = deg2rad(phi);
  return {std::sin(t) * std::cos(p), std::sin(t) * std::sin(p), std::cos(t)};
}

void crossed_dipoles() {
  using farfield::Convention;
  const farfield::AntennaArray a({farfield::DipoleElement::short_dipole({}, {0, 0, 1}),
                                  farfield::DipoleElement::short_dipole({}, {0, 1, 0}, 1.0, kPi / 2)});
  auto pol = [&](double phi, Convention c) {
    const Vec3 d = dir_deg(90, phi);
    return farfield::polarization(farfield::array_farfield(a, d), d, c);
  };
  bool ok = true;
  for (Convention c : {Convention::toward_observer, Convention::toward_source}) {
    const auto p0 = pol(0, c), p240 = pol(240, c), p270 = pol(270, c);
    ok = ok && std::abs(p0.axial_ratio - 1.0) <= 1e-9 && p0.classification == farfield::Classification::circular;
    ok = ok && p270.classification == farfield::Classification::linear;
    ok = ok && std::abs(p240.axial_ratio - 2.0) <= 1e-6;
    ok = ok && p0.handedness != p240.handedness && p240.handedness != farfield::Handedness::LINEAR;
  }
  const auto built = scenarios::build(scenarios::find_scenario("fig6"));
  std::vector<std::string> labels;
  for (const auto& n : built.scene.nodes)
    if (n.kind() == NodeKind::text) labels.push_back(std::get<TextLabel>(n.geometry).text);
  const std::vector<std::string> want = {"0: circular CW", "240: elliptical CCW", "270: linear"};
  ok = ok && labels == want && built.products["convention"] == "toward_source";
  const double ar = pol(240, Convention::toward_source).axial_ratio;
  report("crossed-dipole polarization", ok,
         fmt("AR(0)-1=%.1e AR(240)=%.9f", pol(0, Convention::toward_source).axial_ratio - 1.0, ar) +
             " labels: " + (labels.size() == 3 ? labels[0] + " / " + labels[1] + " / " + labels[2] : "?"));
}

void dipole_constants() {
  auto oracle_d = [](double length, bool is_short) {
    auto f2 = [&](double t) {
      const double f = is_short ? std::sin(t) : testing::dipole_factor(length, t);
      return f * f;
    };
    const double fmax = f2(kPi / 2);  // both peak broadside
    const double p = testing::gauss_legendre([&](double t) { return f2(t) * std::sin(t); }, 0, kPi, 512);
    return 2.0 * fmax / p;
  };
  using farfield::DipoleElement;
  const double d_short = patterns::directivity(farfield::AntennaArray({DipoleElement::short_dipole({}, {0, 0, 1})}));
  const double d_half =
      patterns::directivity(farfield::AntennaArray({DipoleElement::sinusoidal({}, {0, 0, 1}, 0.5)}));
  const double o_short = oracle_d(0, true), o_half = oracle_d(0.5, false);
  const double r_half = patterns::input_radiation_resistance(0.5);
  const bool anti = throws_code([] { patterns::input_radiation_resistance(1.0); }, ErrorCode::anti_resonant);
  const double m_half = patterns::first_maximum_from_axis(0.5);
  const double m_15 = patterns::first_maximum_from_axis(1.5);
  const double o_15 = testing::first_max_scan(1.5);
  const bool ok = std::abs(d_short - 1.5) <= 1e-3 && std::abs(d_half - 1.641) <= 0.005 &&
                  std::abs(d_short - o_short) <= 1e-6 && std::abs(d_half - o_half) <= 1e-6 &&
                  std::abs(r_half - 73.1) <= 0.2 && anti && std::abs(m_half - 90.0) <= 5e-4 &&
                  std::abs(m_15 - 42.6) <= 0.1 && std::abs(m_15 - o_15) <= 0.1;
  report("dipole constants", ok,
         fmt("D=%.6f/%.6f R_in=%.3f max1.5=%.3f", d_short, d_half, r_half, m_15) +
             (anti ? " R_in(1.0): anti_resonant" : " R_in(1.0): no error"));
}

void wave_identities() {
  double worst = 0.0;
  for (int n = 0; n < 100000; ++n) {
    const waves::Complex g = std::polar(testing::uniform(0, 1), testing::uniform(-kPi, kPi));
    const auto w = waves::wave_components(g, testing::uniform(0, 3), testing::uniform(0, kTwoPi));
    worst = std::max({worst, std::abs(w.p - (w.i + w.r)), std::abs(w.p - (w.s + w.t))});
  }
  bool matched = true, node = true;
  const waves::TerminatedWire m{50, {50, 0}, 3.0}, s{50, {0, 0}, 3.0};
  for (int n = 0; n < 1000; ++n) {
    const double z = testing::uniform(0, 3), tau = testing::uniform(0, kTwoPi);
    const auto w = waves::wave_components(m, z, tau);
    matched = matched && w.r == 0.0 && w.s == 0.0;
    node = node && std::abs(waves::wave_components(s, 0.0, tau).p) <= 1e-15;
  }
  report("wave identities", worst <= 1e-12 && matched && node,
         fmt("worst=%.2e", worst) + (matched ? " matched r=s=0" : " matched FAIL") +
             (node ? " short: node at load" : " short FAIL"));
}

void coordinate_suite() {
  double ortho = 0.0, trip = 0.0;
  for (int n = 0; n < 1000; ++n) {
    const double th = testing::uniform(1e-3, kPi - 1e-3), ph = testing::uniform(0, kTwoPi);
    const auto t = coords::unit_triple(th, ph);
    ortho = std::max({ortho, std::abs(norm(t.e_r) - 1), std::abs(norm(t.e_theta) - 1), std::abs(norm(t.e_phi) - 1),
                      std::abs(dot(t.e_r, t.e_theta)), std::abs(dot(t.e_r, t.e_phi)),
                      std::abs(dot(t.e_theta, t.e_phi)), norm(cross(t.e_r, t.e_theta) - t.e_phi)});
    const Vec3 v{testing::uniform(-5, 5), testing::uniform(-5, 5), testing::uniform(-5, 5)};
    trip = std::max(trip, distance(coords::scs_to_ccs(coords::ccs_to_scs(v)), v) / std::max(1.0, norm(v)));
  }
  double radius_err = 0.0;
  for (int n = 0; n < 100; ++n) {
    const double r = testing::uniform(0.2, 3), th = testing::uniform(0, kPi);
    for (const auto& p : coords::sphere_cone_intersection(r, th).points) {
      radius_err = std::max(radius_err, std::abs(std::hypot(p.x, p.y) - r * std::sin(th)));
    }
  }
  const auto fig = scenarios::build(scenarios::find_scenario("fig3_right"));
  const double spot = fig.products["radius"][10].get<double>();
  const bool ok = ortho <= 1e-12 && trip <= 1e-12 && radius_err <= 1e-9 &&
                  fig.products["theta_deg"][10] == 50.0 && std::abs(spot - 0.766044) <= 5e-7;
  report("coordinate suite", ok, fmt("triples=%.1e round-trip=%.1e radius=%.1e sin50=%.6f", ortho, trip, radius_err, spot));
}

void fig7_scenario() {
  const auto& spec = scenarios::find_scenario("fig7");
  const auto t0 = std::chrono::steady_clock::now();
  const auto built = scenarios::build(spec);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const auto& pg = *built.pattern;
  const double vmax = *std::max_element(pg.values.begin(), pg.values.end());
  const bool rgb = built.cuts.size() == 3 && built.cuts[0].plane == patterns::Plane::xoy &&
                   built.cuts[0].role_color == RoleColor::red() && built.cuts[1].plane == patterns::Plane::yoz &&
                   built.cuts[1].role_color == RoleColor::green() && built.cuts[2].plane == patterns::Plane::zox &&
                   built.cuts[2].role_color == RoleColor::blue();

  const auto array = scenarios::array_from_json(built.products["elements"]);
  double peak = 0.0;
  for (int i = 0; i < 200; ++i) peak = std::max(peak, patterns::radiated_intensity(array, testing::random_unit()));
  double worst = 0.0;
  for (int k = 0; k < 20; ++k) {
    const Mat3 rot = testing::random_rotation();
    const auto turned = array.rotated(rot);
    for (int n = 0; n < 50; ++n) {
      const Vec3 d = testing::random_unit();
      worst = std::max(worst, std::abs(patterns::radiated_intensity(turned, rot * d) -
                                       patterns::radiated_intensity(array, d)) / peak);
    }
  }
  const bool ok = pg.grid.n_theta == 181 && pg.grid.n_phi == 360 && secs < 10.0 && vmax == 1.0 && rgb &&
                  worst <= 1e-9;
  report("fig7 array scenario", ok,
         fmt("181x360 build %.2fs max=%.9g equivariance=%.1e", secs, vmax, worst) + (rgb ? " cuts R,G,B" : " cuts?"));
}

void catalog_frames() {
  const std::vector<int> want = {12, 12, 37, 20, 23, 19, 73, 38, 12, 100};
  std::vector<int> got;
  bool ok = scenarios::catalog().size() == 15;
  for (const auto& spec : scenarios::catalog()) {
    const auto a = scenarios::build(spec);
    const auto b = scenarios::build(spec);
    ok = ok && write_vrml(a.scene) == write_vrml(b.scene) && a.products.dump() == b.products.dump();
    if (a.n_frames > 1) {
      got.push_back(static_cast<int>(frame_documents(a.scene, a.n_frames).size()));
    }
  }
  std::string list;
  for (int n : got) list += (list.empty() ? "" : ",") + std::to_string(n);
  report("catalog and frame counts", ok && got == want, "15 built twice; frames " + list);
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void export_determinism() {
  const std::filesystem::path dir = VIRTLAB_GOLDEN_DIR;
  int files = 0, mismatches = 0;
  bool headers = true, reader = true;
  for (const auto& spec : scenarios::catalog()) {
    const auto built = scenarios::build(spec);
    const std::string wrl = write_vrml(built.scene);
    const std::string gold = slurp(dir / (spec.id + ".wrl"));
    mismatches += wrl != gold;
    mismatches += built.products.dump(2) + "\n" != slurp(dir / (spec.id + ".json"));
    files += 2;
    if (!built.cuts.empty()) {
      mismatches += write_svg_polar(built.cuts) != slurp(dir / (spec.id + "_cuts.svg"));
      ++files;
    }
    headers = headers && gold.substr(0, gold.find('\n')) == kVrmlHeader;
    try {
      const auto sum = read_vrml(gold);
      std::size_t defs = 0;
      for (const auto& n : built.scene.nodes) defs += 1 + (n.kind() != NodeKind::text);
      for (const auto& t : built.scene.tracks) defs += 2 + (t.kind != TrackKind::morph);
      const int clocks = sum.node_counts.count("TimeSensor") ? sum.node_counts.at("TimeSensor") : 0;
      reader = reader && sum.def_names.size() == defs && sum.routes.size() == 2 * built.scene.tracks.size() &&
               sum.node_counts.at("Shape") == static_cast<int>(built.scene.nodes.size()) &&
               clocks == static_cast<int>(built.scene.tracks.size());
    } catch (const Error&) {
      reader = false;
    }
  }
  report("export determinism", mismatches == 0 && headers && reader,
         std::to_string(files) + " golden files, " + std::to_string(mismatches) + " mismatches" +
             (reader ? ", reader round trip ok" : ", reader round trip FAILED"));
}

void service_conformance() {
  bool same = true;
  auto get = [](const std::string& p, std::map<std::string, std::string> q = {}) {
    return service::handle({"GET", p, std::move(q), ""});
  };
  auto post = [](const std::string& p, const std::string& b) { return service::handle({"POST", p, {}, b}); };
  same = same && get("/api/v1/scenarios").body == api::scenario_list().dump();
  for (const auto& spec : scenarios::catalog()) {
    const auto built = scenarios::build(spec);
    same = same && get("/api/v1/scenarios/" + spec.id).body == scenarios::spec_to_json(spec).dump();
    same = same && get("/api/v1/scenarios/" + spec.id + "/scene").body == write_scene_json(built.scene);
    same = same && get("/api/v1/scenarios/" + spec.id + "/scene", {{"frame", "0"}}).body ==
                       write_scene_json(bake_frame(built.scene, 0, built.n_frames));
    same = same && get("/api/v1/scenarios/" + spec.id + "/export.wrl").body == write_vrml(built.scene);
  }
  const std::string pattern_body =
      R"({"elements":[{"axis":[0.2,0.4,0.894],"length":2.4},)"
      R"({"center":[0.075,0.125,0.203],"axis":[0.2,0.4,0.894],"length":2.4,"phase_deg":30}],)"
      R"("grid":{"n_theta":46,"n_phi":90},"mapping":"field"})";
  const auto preq = api::parse_pattern_request(json::parse(pattern_body));
  const std::string pattern_lib = write_mesh_json(patterns::pattern_grid(preq.array, preq.grid), preq.mapping);
  same = same && post("/api/v1/pattern", pattern_body).body == pattern_lib;
  const std::string pol_body =
      R"({"elements":[{"kind":"short","axis":[0,0,1]},{"kind":"short","axis":[0,1,0],"phase_deg":90}],)"
      R"("direction":{"theta_deg":90,"phi_deg":240},"convention":"toward_source"})";
  same = same && post("/api/v1/polarization", pol_body).body ==
                     api::polarization_json(api::evaluate(api::parse_polarization_request(json::parse(pol_body))))
                         .dump();
  same = same && post("/api/v1/characteristics", R"({"length":0.5})").body ==
                     api::characteristics_json(patterns::characteristics(0.5), true).dump();

  service::Options o;
  o.host = "127.0.0.1";
  o.port = 0;
  service::Server server(o);
  const int port = server.bind();
  std::thread loop([&] { server.listen(); });
  std::vector<std::string> bodies(32);
  std::vector<std::thread> clients;
  for (int i = 0; i < 32; ++i) {
    clients.emplace_back([&, i] {
      httplib::Client c("127.0.0.1", port);
      c.set_read_timeout(120, 0);
      if (auto r = c.Post("/api/v1/pattern", pattern_body, "application/json"); r && r->status == 200) {
        bodies[i] = r->body;
      }
    });
  }
  for (auto& t : clients) t.join();
  int identical = 0;
  for (const auto& b : bodies) identical += b == pattern_lib;
  httplib::Client c("127.0.0.1", port);
  const auto res = c.Post("/api/v1/characteristics", R"({"length":1.0})", "application/json");
  const int status = res ? res->status : 0;
  const bool code = res && json::parse(res->body).value("code", "") == "anti_resonant";
  server.stop();
  loop.join();
  report("service conformance", same && identical == 32 && status == 422 && code,
         std::string(same ? "bodies bit-identical" : "body mismatch") + ", " + std::to_string(identical) +
             "/32 concurrent identical, /characteristics 1.0 -> " + std::to_string(status));
}

}  // namespace

int main() {
  const std::pair<const char*, void (*)()> checks[] = {
      {"crossed-dipole polarization", crossed_dipoles}, {"dipole constants", dipole_constants},
      {"wave identities", wave_identities},             {"coordinate suite", coordinate_suite},
      {"fig7 array scenario", fig7_scenario},           {"catalog and frame counts", catalog_frames},
      {"export determinism", export_determinism},       {"service conformance", service_conformance},
  };
  for (const auto& [name, run] : checks) {
    try {
      run();
    } catch (const std::exception& e) {
      report(name, false, std::string("threw: ") + e.what());
    }
  }
  return failures ? 1 : 0;
}

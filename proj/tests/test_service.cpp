#include <thread>

#include "doctest.h"
#include "httplib.h"
#include "json.hpp"
#include "virtlab/api.hpp"
#include "virtlab/error.hpp"
#include "virtlab/export.hpp"
#include "virtlab/scenarios.hpp"
#include "virtlab/service.hpp"

using namespace virtlab;
using nlohmann::json;

namespace {

service::Response get(const std::string& path, std::map<std::string, std::string> query = {}) {
  return service::handle({"GET", path, std::move(query), ""});
}

service::Response post(const std::string& path, const std::string& body) {
  return service::handle({"POST", path, {}, body});
}

void check_error(const service::Response& r, int status, const std::string& code, const std::string& mentions) {
  CHECK(r.status == status);
  CHECK(r.content_type == "application/json");
  const auto j = json::parse(r.body);
  REQUIRE(j.is_object());
  CHECK(j.size() == 3);
  CHECK(j["status"] == status);
  CHECK(j["code"] == code);
  REQUIRE(j["message"].is_string());
  CHECK(j["message"].get<std::string>().find(mentions) != std::string::npos);
}

const char* kCrossed =
    R"({"elements":[{"kind":"short","axis":[0,0,1]},{"kind":"short","axis":[0,1,0],"phase_deg":90}],)"
    R"("direction":{"theta_deg":90,"phi_deg":240},"convention":"toward_source"})";

const char* kPatternBody =
    R"({"elements":[{"axis":[0,0,1],"length":1.5},{"center":[0.25,0,0],"axis":[0,0,1],"phase_deg":30}],)"
    R"("grid":{"n_theta":19,"n_phi":36},"mapping":"field"})";

}  // namespace

TEST_CASE("scenario endpoints match the library path") {
  auto r = get("/api/v1/scenarios");
  CHECK(r.status == 200);
  CHECK(r.body == api::scenario_list().dump());
  const auto list = json::parse(r.body);
  REQUIRE(list.size() == 15);
  CHECK(list[11]["id"] == "fig7");
  CHECK(list[11]["kind"] == "two_dipole_array");

  r = get("/api/v1/scenarios/fig7");
  CHECK(r.body == scenarios::spec_to_json(scenarios::find_scenario("fig7")).dump());

  const auto built = scenarios::build(scenarios::find_scenario("fig6"));
  r = get("/api/v1/scenarios/fig6/scene");
  CHECK(r.body == write_scene_json(built.scene));
  r = get("/api/v1/scenarios/fig6/scene", {{"frame", "40"}});
  CHECK(r.status == 200);
  CHECK(r.body == write_scene_json(bake_frame(built.scene, 40, 73)));
  CHECK(json::parse(r.body)["tracks"].empty());

  r = get("/api/v1/scenarios/fig6/export.wrl");
  CHECK(r.content_type == "model/vrml");
  CHECK(r.body == write_vrml(built.scene));

  r = get("/api/v1/scenarios/fig2_left/scene", {{"frame", "0"}});
  CHECK(r.status == 200);
}

TEST_CASE("compute endpoints match the library path") {
  auto r = post("/api/v1/pattern", kPatternBody);
  REQUIRE(r.status == 200);
  const auto preq = api::parse_pattern_request(json::parse(kPatternBody));
  CHECK(r.body == write_mesh_json(patterns::pattern_grid(preq.array, preq.grid), patterns::Mapping::field));
  const auto mesh = json::parse(r.body);
  CHECK(mesh["values"].size() == mesh["vertices"].size());

  r = post("/api/v1/polarization", kCrossed);
  REQUIRE(r.status == 200);
  const farfield::AntennaArray crossed({farfield::DipoleElement::short_dipole({}, {0, 0, 1}),
                                        farfield::DipoleElement::short_dipole({}, {0, 1, 0}, 1.0, kPi / 2)});
  const double t = deg2rad(90.0), p = deg2rad(240.0);
  const Vec3 d{std::sin(t) * std::cos(p), std::sin(t) * std::sin(p), std::cos(t)};
  const auto el = farfield::polarization(farfield::array_farfield(crossed, d), d, farfield::Convention::toward_source);
  CHECK(r.body == api::polarization_json(el).dump());
  const auto pol = json::parse(r.body);
  CHECK(std::abs(pol["axial_ratio"].get<double>() - 2.0) <= 1e-6);
  CHECK(pol["handedness"] == "CCW");

  r = post("/api/v1/characteristics", R"({"length":0.5})");
  REQUIRE(r.status == 200);
  CHECK(r.body == api::characteristics_json(patterns::characteristics(0.5), true).dump());
  const auto ch = json::parse(r.body);
  CHECK(std::abs(ch["r_in"].get<double>() - 73.1) <= 0.2);
  CHECK(ch["theta_max_deg"] == 90.0);
  CHECK(ch["cut"]["values"].size() == 360);
}

TEST_CASE("errors carry the ApiError shape") {
  check_error(post("/api/v1/characteristics", R"({"length":1.0})"), 422, "anti_resonant", "anti-resonant");
  const auto lenient = post("/api/v1/characteristics", R"({"length":1.0,"require_r_in":false})");
  CHECK(lenient.status == 200);
  CHECK(json::parse(lenient.body)["anti_resonant"] == true);

  check_error(get("/api/v1/scenarios/nope"), 404, "unknown_scenario", "nope");
  check_error(get("/api/v1/scenarios/nope/scene"), 404, "unknown_scenario", "nope");
  check_error(get("/api/v1/nothing"), 404, "not_found", "/api/v1/nothing");
  check_error(post("/api/v1/scenarios", "{}"), 404, "not_found", "POST");
  check_error(get("/api/v1/scenarios/fig6/scene", {{"frame", "73"}}), 400, "invalid_argument", "frame");
  check_error(get("/api/v1/scenarios/fig6/scene", {{"frame", "x"}}), 400, "invalid_argument", "frame");
  check_error(post("/api/v1/pattern", "{"), 400, "parse_error", "JSON");
  check_error(post("/api/v1/pattern", "[]"), 400, "parse_error", "object");
  check_error(post("/api/v1/pattern", R"({"grid":{"n_theta":9,"n_phi":9}})"), 400, "parse_error", "elements");
  check_error(post("/api/v1/pattern", R"({"elements":[{"axis":[0,0,1]}],"grid":{"n_theta":1,"n_phi":9}})"), 400,
              "parse_error", "grid.n_theta");
  check_error(post("/api/v1/pattern", R"({"elements":[{"axis":[0,0,1]}],"colour":1})"), 400, "parse_error",
              "colour");
  check_error(post("/api/v1/pattern", R"({"elements":[{"axis":[0,0,1]}],"mapping":"db"})"), 400, "parse_error",
              "mapping");
  check_error(post("/api/v1/polarization", R"({"elements":[{"axis":[0,0,1]}],"direction":{"theta_deg":90}})"), 400,
              "parse_error", "direction.phi_deg");
  check_error(post("/api/v1/polarization",
                   R"({"elements":[{"kind":"short","axis":[0,0,1]}],"direction":{"theta_deg":0,"phi_deg":0}})"),
              422, "null_field", "null field");
  check_error(post("/api/v1/characteristics", R"({"length":"long"})"), 400, "parse_error", "length");
  check_error(post("/api/v1/pattern", R"({"elements":[{"axis":[0,0,1],"amplitude":0}]})"), 422,
              "degenerate_pattern", "");
}

TEST_CASE("http server: concurrency and headers") {
  service::Options o;
  o.host = "127.0.0.1";
  o.port = 0;
  o.cors = true;
  service::Server server(o);
  const int port = server.bind();
  std::thread loop([&] { server.listen(); });

  httplib::Client probe("127.0.0.1", port);
  for (int i = 0; i < 100; ++i) {
    if (probe.Get("/api/v1/scenarios")) break;
    std::this_thread::sleep_for(std::chrono::milliseconds(10));
  }

  constexpr int kClients = 32;
  std::vector<std::string> bodies(kClients);
  std::vector<int> statuses(kClients, 0);
  std::vector<std::thread> clients;
  for (int i = 0; i < kClients; ++i) {
    clients.emplace_back([&, i] {
      httplib::Client c("127.0.0.1", port);
      c.set_read_timeout(60, 0);
      if (auto res = c.Post("/api/v1/pattern", kPatternBody, "application/json")) {
        statuses[i] = res->status;
        bodies[i] = res->body;
      }
    });
  }
  for (auto& t : clients) t.join();
  const std::string expected = post("/api/v1/pattern", kPatternBody).body;
  for (int i = 0; i < kClients; ++i) {
    CAPTURE(i);
    CHECK(statuses[i] == 200);
    CHECK(bodies[i] == expected);
  }

  auto res = probe.Get("/api/v1/scenarios/fig7/export.wrl");
  REQUIRE(res);
  CHECK(res->get_header_value("Content-Type") == "model/vrml");
  CHECK(res->get_header_value("Access-Control-Allow-Origin") == "*");
  CHECK(res->body.rfind("#VRML V2.0 utf8\n", 0) == 0);

  res = probe.Post("/api/v1/characteristics", R"({"length":1.0})", "application/json");
  REQUIRE(res);
  CHECK(res->status == 422);
  CHECK(json::parse(res->body)["code"] == "anti_resonant");

  res = probe.Get("/elsewhere");
  REQUIRE(res);
  CHECK(res->status == 404);
  CHECK(json::parse(res->body)["code"] == "not_found");

  server.stop();
  loop.join();
}

#include "virtlab/service.hpp"

#include <charconv>
#include <regex>

#include "httplib.h"
#include "virtlab/api.hpp"
#include "virtlab/error.hpp"
#include "virtlab/export.hpp"
#include "virtlab/scenarios.hpp"

namespace virtlab::service {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

constexpr const char* kPrefix = "/api/v1";

Response error(int status, const std::string& code, const std::string& message) {
  ordered_json j;
  j["status"] = status;
  j["code"] = code;
  j["message"] = message;
  return {status, "application/json", j.dump()};
}

int status_for(ErrorCode c) {
  switch (c) {
    case ErrorCode::unknown_scenario: return 404;
    case ErrorCode::parse_error:
    case ErrorCode::unknown_kind:
    case ErrorCode::invalid_argument: return 400;
    default: return 422;
  }
}

json parse_body(const std::string& body) {
  try {
    return json::parse(body);
  } catch (const json::parse_error&) {
    throw Error(ErrorCode::parse_error, "request body is not valid JSON");
  }
}

int frame_index(const std::string& text, int n_frames) {
  int k = -1;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, k);
  if (ec != std::errc() || ptr != end || k < 0 || k >= n_frames) {
    throw Error(ErrorCode::invalid_argument,
                "query 'frame' must be an integer in [0, " + std::to_string(n_frames - 1) + "]");
  }
  return k;
}

Response scenario_get(const std::string& id, const std::string& tail, const Request& req) {
  const auto& spec = scenarios::find_scenario(id);
  if (tail.empty()) return {200, "application/json", scenarios::spec_to_json(spec).dump()};
  if (tail == "/scene") {
    const auto built = scenarios::build(spec);
    const auto it = req.query.find("frame");
    if (it == req.query.end()) return {200, "application/json", write_scene_json(built.scene)};
    const int k = frame_index(it->second, built.n_frames);
    return {200, "application/json", write_scene_json(bake_frame(built.scene, k, built.n_frames))};
  }
  if (tail == "/export.wrl") return {200, "model/vrml", write_vrml(scenarios::build(spec).scene)};
  return error(404, "not_found", "no such resource '" + req.path + "'");
}

Response dispatch(const Request& req) {
  static const std::regex scenario_path(R"(/api/v1/scenarios/([A-Za-z0-9_-]+)(/scene|/export\.wrl)?)");
  const std::string& p = req.path;
  if (req.method == "GET") {
    if (p == std::string(kPrefix) + "/scenarios") return {200, "application/json", api::scenario_list().dump()};
    std::smatch m;
    if (std::regex_match(p, m, scenario_path)) return scenario_get(m[1], m[2], req);
  } else if (req.method == "POST") {
    if (p == std::string(kPrefix) + "/pattern") {
      const auto r = api::parse_pattern_request(parse_body(req.body));
      return {200, "application/json", write_mesh_json(patterns::pattern_grid(r.array, r.grid), r.mapping)};
    }
    if (p == std::string(kPrefix) + "/polarization") {
      const auto r = api::parse_polarization_request(parse_body(req.body));
      return {200, "application/json", api::polarization_json(api::evaluate(r)).dump()};
    }
    if (p == std::string(kPrefix) + "/characteristics") {
      const auto r = api::parse_characteristics_request(parse_body(req.body));
      return {200, "application/json", api::characteristics_json(api::evaluate(r), true).dump()};
    }
  }
  return error(404, "not_found", "no such endpoint: " + req.method + " " + p);
}

}  // namespace

Response handle(const Request& req) {
  try {
    return dispatch(req);
  } catch (const Error& e) {
    return error(status_for(e.code()), to_string(e.code()), e.what());
  } catch (const json::exception& e) {
    return error(400, "parse_error", e.what());
  }
}

struct Server::Impl {
  Options opts;
  httplib::Server http;
};

Server::Server(Options opts) : impl_(std::make_unique<Impl>()) {
  impl_->opts = std::move(opts);
  auto& http = impl_->http;
  const Options o = impl_->opts;
  auto serve = [o](const httplib::Request& hreq, httplib::Response& hres) {
    Request req{hreq.method, hreq.path, {}, hreq.body};
    for (const auto& [k, v] : hreq.params) req.query.emplace(k, v);
    const Response r = handle(req);
    hres.status = r.status;
    hres.set_content(r.body, r.content_type);
    if (o.cors) hres.set_header("Access-Control-Allow-Origin", o.cors_origin);
  };
  http.Get(R"(/api/v1/.*)", serve);
  http.Post(R"(/api/v1/.*)", serve);
  http.Options(R"(/api/v1/.*)", [o](const httplib::Request&, httplib::Response& hres) {
    hres.status = 204;
    if (o.cors) {
      hres.set_header("Access-Control-Allow-Origin", o.cors_origin);
      hres.set_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS");
      hres.set_header("Access-Control-Allow-Headers", "Content-Type");
    }
  });
  http.set_error_handler([](const httplib::Request& hreq, httplib::Response& hres) {
    if (!hres.body.empty()) return;
    const Response r = error(404, "not_found", "no such endpoint: " + hreq.method + " " + hreq.path);
    hres.status = r.status;
    hres.set_content(r.body, r.content_type);
  });
}

Server::~Server() { stop(); }

int Server::bind() {
  auto& o = impl_->opts;
  int port = o.port;
  if (port == 0) {
    port = impl_->http.bind_to_any_port(o.host);
  } else if (!impl_->http.bind_to_port(o.host, port)) {
    port = -1;
  }
  if (port <= 0) throw Error(ErrorCode::io_error, "cannot bind " + o.host + ":" + std::to_string(o.port));
  o.port = port;
  return port;
}

void Server::listen() { impl_->http.listen_after_bind(); }

void Server::stop() {
  if (impl_->http.is_running()) impl_->http.stop();
}

}  // namespace virtlab::service

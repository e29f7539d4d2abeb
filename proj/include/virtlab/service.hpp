#pragma once

#include <functional>
#include <map>
#include <memory>
#include <string>

namespace virtlab::service {

struct Request {
  std::string method;  // "GET" or "POST"
  std::string path;    // e.g. /api/v1/scenarios/fig7/scene
  std::map<std::string, std::string> query;
  std::string body;
};

struct Response {
  int status = 200;
  std::string content_type = "application/json";
  std::string body;
};

/// Routes one request. Pure: no I/O, no shared mutable state. Errors come
/// back as {"status","code","message"} with status 400, 404 or 422.
Response handle(const Request& req);

struct Options {
  std::string host = "0.0.0.0";
  int port = 8080;  // 0: pick a free port
  bool cors = false;
  std::string cors_origin = "*";
};

/// httplib server around handle().
class Server {
 public:
  explicit Server(Options opts);
  ~Server();
  Server(const Server&) = delete;
  Server& operator=(const Server&) = delete;

  /// Binds; returns the bound port. Throws io_error when binding fails.
  int bind();
  /// Blocks until stop().
  void listen();
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace virtlab::service

#pragma once

#include <cmath>
#include <initializer_list>
#include <string>
#include <vector>

#include "json.hpp"
#include "virtlab/error.hpp"
#include "virtlab/vec.hpp"

namespace virtlab::scenarios::detail {

[[noreturn]] inline void bad(const std::string& key, const std::string& what) {
  throw Error(ErrorCode::parse_error, "parameter '" + key + "' " + what);
}

/// Typed, range-checked access to a resolved parameter object.
class Params {
 public:
  explicit Params(const nlohmann::json& j) : j_(j) {}

  const nlohmann::json& raw(const std::string& key) const {
    if (!j_.contains(key)) bad(key, "is missing");
    return j_.at(key);
  }

  double number(const std::string& key, double lo, double hi) const {
    const auto& v = raw(key);
    if (!v.is_number()) bad(key, "must be a number");
    return check(key, v.get<double>(), lo, hi);
  }

  int integer(const std::string& key, int lo, int hi) const {
    const auto& v = raw(key);
    if (!v.is_number_integer()) bad(key, "must be an integer");
    const auto n = v.get<long long>();
    if (n < lo || n > hi) bad(key, "must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
    return static_cast<int>(n);
  }

  Vec3 vec3(const std::string& key, bool nonzero = true) const { return to_vec3(key, raw(key), nonzero); }

  std::vector<double> numbers(const std::string& key, std::size_t size, double lo, double hi) const {
    const auto& v = raw(key);
    if (!v.is_array() || (size && v.size() != size)) {
      bad(key, size ? "must be an array of " + std::to_string(size) + " numbers" : "must be an array of numbers");
    }
    std::vector<double> out;
    for (const auto& x : v) {
      if (!x.is_number()) bad(key, "must contain only numbers");
      out.push_back(check(key, x.get<double>(), lo, hi));
    }
    return out;
  }

  std::string choice(const std::string& key, std::initializer_list<const char*> options) const {
    const auto& v = raw(key);
    if (v.is_string()) {
      for (const char* o : options)
        if (v.get<std::string>() == o) return o;
    }
    std::string list;
    for (const char* o : options) list += std::string(list.empty() ? "" : ", ") + o;
    bad(key, "must be one of: " + list);
  }

  static Vec3 to_vec3(const std::string& key, const nlohmann::json& v, bool nonzero) {
    if (!v.is_array() || v.size() != 3 || !v[0].is_number() || !v[1].is_number() || !v[2].is_number()) {
      bad(key, "must be an array of 3 numbers");
    }
    const Vec3 out{v[0].get<double>(), v[1].get<double>(), v[2].get<double>()};
    if (!is_finite(out)) bad(key, "must be finite");
    if (nonzero && norm(out) == 0.0) bad(key, "must be a non-zero vector");
    return out;
  }

 private:
  static double check(const std::string& key, double x, double lo, double hi) {
    if (!std::isfinite(x) || x < lo || x > hi) {
      char buf[96];
      std::snprintf(buf, sizeof buf, "must lie in [%g, %g]", lo, hi);
      bad(key, buf);
    }
    return x;
  }

  const nlohmann::json& j_;
};

}  // namespace virtlab::scenarios::detail

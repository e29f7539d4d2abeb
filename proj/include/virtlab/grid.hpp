#pragma once

#include <cstddef>

#include "virtlab/vec.hpp"

namespace virtlab {

/// theta_i = i pi / (n_theta - 1) with both poles included; phi_j = 2 pi j / n_phi.
struct SphericalGrid {
  int n_theta = 181;
  int n_phi = 360;

  bool valid() const { return n_theta >= 2 && n_phi >= 2; }
  std::size_t size() const { return static_cast<std::size_t>(n_theta) * static_cast<std::size_t>(n_phi); }
  std::size_t index(int i, int j) const {
    return static_cast<std::size_t>(i) * static_cast<std::size_t>(n_phi) + static_cast<std::size_t>(j);
  }

  double theta(int i) const { return i == n_theta - 1 ? kPi : kPi * i / (n_theta - 1); }
  double phi(int j) const { return kTwoPi * j / n_phi; }

  Vec3 direction(int i, int j) const {
    const double t = theta(i), p = phi(j);
    return {std::sin(t) * std::cos(p), std::sin(t) * std::sin(p), std::cos(t)};
  }
};

}  // namespace virtlab

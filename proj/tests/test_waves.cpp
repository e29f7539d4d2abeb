#include <cmath>

#include "doctest.h"
#include "support.hpp"
#include "virtlab/error.hpp"
#include "virtlab/waves.hpp"

using namespace virtlab;
using namespace virtlab::waves;

TEST_CASE("reflection coefficient") {
  CHECK(std::abs(reflection_coefficient(50, {50, 0})) == 0.0);
  CHECK(std::abs(reflection_coefficient(50, {0, 0}) - Complex(-1, 0)) < 1e-15);
  const Complex zl(100, 50);
  const Complex g = reflection_coefficient(50, zl);
  CHECK(std::abs(g - Complex(0.4, 0.2)) < 1e-15);
  // |G| |zl + z0| = |zl - z0|
  CHECK(std::abs(g) * std::abs(zl + 50.0) == doctest::Approx(std::abs(zl - 50.0)).epsilon(1e-14));
  try {
    reflection_coefficient(50, {-50, 0});
    FAIL("expected singular load");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::singular_load);
  }
  for (int n = 0; n < 1000; ++n) {
    const Complex load(testing::uniform(0, 500), testing::uniform(-500, 500));
    CHECK(std::abs(reflection_coefficient(75, load)) <= 1.0 + 1e-15);
  }
}

TEST_CASE("matched load carries no reflected or standing wave") {
  const TerminatedWire wire{50, {50, 0}, 3.0};
  for (int n = 0; n < 200; ++n) {
    const double z = testing::uniform(0, 3), tau = testing::uniform(0, kTwoPi);
    const auto w = wave_components(wire, z, tau);
    CHECK(w.r == 0.0);
    CHECK(w.s == 0.0);
    CHECK(w.p == w.i);
    CHECK(w.t == w.i);
  }
}

TEST_CASE("short circuit has a current node at the termination") {
  const TerminatedWire wire{50, {0, 0}, 3.0};
  for (int n = 0; n < 200; ++n) CHECK(std::abs(wave_components(wire, 0.0, testing::uniform(0, kTwoPi)).p) <= 1e-15);
}

TEST_CASE("position outside the wire is rejected") {
  const TerminatedWire wire{50, {10, 0}, 3.0};
  CHECK_THROWS_AS(wave_components(wire, 3.5, 0.0), Error);
  CHECK_THROWS_AS(wave_components(wire, -0.1, 0.0), Error);
}

TEST_CASE("decomposition identities on 1e5 random samples") {
  double worst = 0.0;
  for (int n = 0; n < 100000; ++n) {
    const Complex g = std::polar(testing::uniform(0, 1), testing::uniform(-kPi, kPi));
    const auto w = wave_components(g, testing::uniform(0, 3), testing::uniform(0, kTwoPi));
    worst = std::max({worst, std::abs(w.p - (w.i + w.r)), std::abs(w.p - (w.s + w.t))});
  }
  CHECK(worst <= 1e-12);
}

TEST_CASE("standing part factorizes into S(z) T(tau)") {
  const Complex g = std::polar(0.6, 0.9);
  const int nz = 25, nt = 24;
  std::vector<std::vector<double>> s(nz, std::vector<double>(nt));
  for (int a = 0; a < nz; ++a)
    for (int b = 0; b < nt; ++b) s[a][b] = wave_components(g, 3.0 * a / (nz - 1), kTwoPi * b / nt).s;
  // Recover S from the tau column with the largest norm, T from the z row
  // with the largest norm, and check the rank-one reconstruction.
  int ra = 0, cb = 0;
  double best_a = 0, best_b = 0;
  for (int a = 0; a < nz; ++a) {
    double sum = 0;
    for (int b = 0; b < nt; ++b) sum += s[a][b] * s[a][b];
    if (sum > best_a) best_a = sum, ra = a;
  }
  for (int b = 0; b < nt; ++b) {
    double sum = 0;
    for (int a = 0; a < nz; ++a) sum += s[a][b] * s[a][b];
    if (sum > best_b) best_b = sum, cb = b;
  }
  const double pivot = s[ra][cb];
  REQUIRE(std::abs(pivot) > 1e-3);
  double residual = 0.0;
  for (int a = 0; a < nz; ++a)
    for (int b = 0; b < nt; ++b) residual = std::max(residual, std::abs(s[a][b] - s[a][cb] * s[ra][b] / pivot));
  CHECK(residual <= 1e-9);
}

TEST_CASE("transmitted part is a pure travelling wave toward the load") {
  const Complex g = std::polar(0.35, -1.2);
  for (int n = 0; n < 1000; ++n) {
    const double z = testing::uniform(0.5, 3), tau = testing::uniform(0, kTwoPi), d = testing::uniform(0, 0.5);
    const double a = wave_components(g, z, tau).t;
    const double b = wave_components(g, z - d, tau + kWavenumber * d).t;
    CHECK(std::abs(a - b) <= 1e-12);
  }
}

TEST_CASE("standing current profile") {
  CHECK(standing_current_profile(0.5, 0.0) == doctest::Approx(1.0).epsilon(1e-15));
  for (double len : {0.3, 0.5, 1.0, 1.25, 2.7}) {
    CHECK(std::abs(standing_current_profile(len, len / 2)) < 1e-15);
    CHECK(std::abs(standing_current_profile(len, -len / 2)) < 1e-15);
  }
  CHECK(standing_current_profile(1.25, 0.0) == doctest::Approx(-0.707107).epsilon(1e-6));
  CHECK(standing_current_profile(1.25, 0.0) == doctest::Approx(std::sin(1.25 * kPi)).epsilon(1e-15));
  CHECK_THROWS_AS(standing_current_profile(1.0, 0.6), Error);
}

TEST_CASE("rotating phasor frames") {
  const auto set = rotating_phasor_frames(1.25, 21, 12);
  REQUIRE(set.n_frames == 12);
  REQUIRE(set.frames.size() == 12);
  for (int k = 0; k < 12; ++k) CHECK(rad2deg(frame_phase(k, 12)) == doctest::Approx(30.0 * k));
  for (int i = 0; i < 21; ++i) {
    const double current = standing_current_profile(1.25, set.positions[static_cast<std::size_t>(i)]);
    CHECK(set.frames[0][static_cast<std::size_t>(i)].x == doctest::Approx(current).epsilon(1e-15));
    for (const auto& frame : set.frames) {
      const Vec3& v = frame[static_cast<std::size_t>(i)];
      CHECK(std::abs(norm(v) - std::abs(current)) <= 1e-12);
      CHECK(v.z == 0.0);
    }
  }
  CHECK_THROWS_AS(rotating_phasor_frames(1.0, 1, 12), Error);
  CHECK_THROWS_AS(rotating_phasor_frames(1.0, 5, 0), Error);
}

TEST_CASE("wave frames sample the whole wire") {
  const auto set = wave_frames({50, {100, 50}, 3.0}, 61, 12);
  CHECK(set.positions.front() == 0.0);
  CHECK(set.positions.back() == 3.0);
  CHECK(set.frames.size() == 12);
  CHECK(set.frames[3].size() == 61);
}

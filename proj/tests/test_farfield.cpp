#include <cmath>

#include "doctest.h"
#include "support.hpp"
#include "virtlab/coords.hpp"
#include "virtlab/error.hpp"
#include "virtlab/farfield.hpp"

using namespace virtlab;
using namespace virtlab::farfield;

namespace {

Vec3 dir_deg(double theta, double phi) { return coords::scs_to_ccs({1.0, deg2rad(theta), deg2rad(phi)}); }

AntennaArray crossed_dipoles(double y_phase_deg = 90.0) {
  return AntennaArray({DipoleElement::short_dipole({0, 0, 0}, {0, 0, 1}, 1.0, 0.0),
                       DipoleElement::short_dipole({0, 0, 0}, {0, 1, 0}, 1.0, deg2rad(y_phase_deg))});
}

PhasorVec random_transverse(const Vec3& k) {
  const Vec3 u = perpendicular(k), v = cross(k, u);
  const Complex a(testing::uniform(-1, 1), testing::uniform(-1, 1));
  const Complex b(testing::uniform(-1, 1), testing::uniform(-1, 1));
  return PhasorVec::from(u, a) + PhasorVec::from(v, b);
}

}  // namespace

TEST_CASE("pattern factor") {
  CHECK(pattern_factor(DipoleKind::sinusoidal, 0.5, kPi / 2) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(pattern_factor(DipoleKind::sinusoidal, 1.3, 0.0) == 0.0);
  CHECK(pattern_factor(DipoleKind::short_dipole, 0.0, 0.0) == 0.0);
  CHECK(pattern_factor(DipoleKind::sinusoidal, 2.4, kPi / 2) == doctest::Approx(0.690983).epsilon(1e-6));
  CHECK(pattern_factor(DipoleKind::sinusoidal, 2.4, kPi / 2) ==
        doctest::Approx(1.0 - std::cos(2.4 * kPi)).epsilon(1e-14));
  for (int n = 0; n < 1000; ++n) {
    const double len = testing::uniform(0.05, 3.0), psi = testing::uniform(0.01, kPi - 0.01);
    CHECK(pattern_factor(DipoleKind::sinusoidal, len, psi) ==
          doctest::Approx(testing::dipole_factor(len, psi)).epsilon(1e-9));
  }
}

TEST_CASE("element far field") {
  const auto zdip = DipoleElement::short_dipole({0, 0, 0}, {0, 0, 1}, 2.5);
  const auto e = element_farfield(zdip, {1, 0, 0});
  CHECK(std::abs(e.ex) == 0.0);
  CHECK(std::abs(e.ey) == 0.0);
  CHECK(std::abs(e.ez) == doctest::Approx(2.5));

  const auto half = DipoleElement::sinusoidal({0.3, -0.2, 0.1}, {0.2, 0.4, 0.894}, 0.5);
  CHECK(power(element_farfield(half, half.axis())) == 0.0);
  CHECK(power(element_farfield(zdip, {0, 0, 1})) == 0.0);

  const auto shifted = DipoleElement::short_dipole({0.25, 0, 0}, {0, 0, 1});
  const auto es = element_farfield(shifted, {1, 0, 0});
  CHECK(std::abs(es.ez - Complex(0, 1)) < 1e-15);

  CHECK_THROWS_AS(element_farfield(zdip, {2, 0, 0}), Error);
}

TEST_CASE("dipole axes are normalized on construction") {
  const auto d = DipoleElement::sinusoidal({0, 0, 0}, {0.2, 0.4, 0.894}, 2.4);
  CHECK(norm(d.axis()) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(norm(Vec3{0.2, 0.4, 0.894}) == doctest::Approx(0.99962).epsilon(1e-5));
  CHECK_THROWS_AS(DipoleElement::sinusoidal({0, 0, 0}, {0, 0, 0}, 1.0), Error);
  CHECK_THROWS_AS(DipoleElement::sinusoidal({0, 0, 0}, {0, 0, 1}, -1.0), Error);
  CHECK_THROWS_AS(AntennaArray({}), Error);
}

TEST_CASE("array far field superposition and transversality") {
  const auto one = DipoleElement::sinusoidal({0.1, 0.2, 0.3}, {1, 1, 0}, 0.7, 1.0, 0.4);
  const AntennaArray twin({one, one});
  for (int n = 0; n < 100; ++n) {
    const Vec3 d = testing::random_unit();
    const auto single = element_farfield(one, d);
    const auto doubled = array_farfield(twin, d);
    CHECK(doubled == single * 2.0);
  }

  const AntennaArray pair({DipoleElement::short_dipole({0.25, 0, 0}, {0, 0, 1}),
                           DipoleElement::short_dipole({-0.25, 0, 0}, {0, 0, 1})});
  CHECK(std::sqrt(power(array_farfield(pair, {1, 0, 0}))) < 1e-15);

  const auto e = array_farfield(crossed_dipoles(), dir_deg(90, 0));
  CHECK(std::abs(e.ex) < 1e-15);
  CHECK(std::abs(e.ey - Complex(0, 1)) < 1e-15);
  CHECK(std::abs(e.ez - Complex(1, 0)) < 1e-15);

  const AntennaArray fig7({DipoleElement::sinusoidal(Vec3{0.3, 0.5, 0.812} * -0.125, {0.2, 0.4, 0.894}, 2.4),
                           DipoleElement::sinusoidal(Vec3{0.3, 0.5, 0.812} * 0.125, {0.2, 0.4, 0.894}, 2.4,
                                                     1.0, deg2rad(30))});
  for (int n = 0; n < 2000; ++n) {
    const Vec3 d = testing::random_unit();
    const auto f = array_farfield(fig7, d);
    CHECK(std::abs(project(f, d)) <= 1e-12 * std::sqrt(power(f)) + 1e-300);
  }
}

TEST_CASE("decomposition and instantaneous field") {
  const PhasorVec real_only{{1, 0}, {2, 0}, {-1, 0}};
  CHECK(decompose(real_only).e_s == Vec3{0, 0, 0});
  const PhasorVec e{{0, 0}, {0, 1}, {1, 0}};  // z + j y
  const auto d = decompose(e);
  CHECK(d.e_c == Vec3{0, 0, 1});
  CHECK(d.e_s == Vec3{0, -1, 0});
  CHECK(instantaneous_field(e, 0.0) == d.e_c);
  CHECK(distance(instantaneous_field(e, kPi / 2), d.e_s) < 1e-15);
  CHECK(distance(instantaneous_field(e, kPi / 4), {0, -std::sqrt(0.5), std::sqrt(0.5)}) < 1e-15);

  for (int n = 0; n < 10000; ++n) {
    const PhasorVec r{{testing::uniform(-1, 1), testing::uniform(-1, 1)},
                      {testing::uniform(-1, 1), testing::uniform(-1, 1)},
                      {testing::uniform(-1, 1), testing::uniform(-1, 1)}};
    const double tau = testing::uniform(0, kTwoPi);
    // Oracle: Re{E e^{j tau}} evaluated component by component.
    const Complex rot = std::polar(1.0, tau);
    const Vec3 expected{(r.ex * rot).real(), (r.ey * rot).real(), (r.ez * rot).real()};
    const auto dd = decompose(r);
    CHECK(distance(instantaneous_field(r, tau), expected) <= 1e-12);
    CHECK(distance(dd.e_c * std::cos(tau) + dd.e_s * std::sin(tau), expected) <= 1e-12);
  }
}

TEST_CASE("crossed dipoles: circular, elliptical, linear") {
  const auto array = crossed_dipoles();
  const auto at0 = polarization(array_farfield(array, dir_deg(90, 0)), dir_deg(90, 0));
  CHECK(at0.classification == Classification::circular);
  CHECK(std::abs(at0.axial_ratio - 1.0) <= 1e-9);

  const auto at270 = polarization(array_farfield(array, dir_deg(90, 270)), dir_deg(90, 270));
  CHECK(at270.classification == Classification::linear);
  CHECK(at270.handedness == Handedness::LINEAR);
  CHECK(std::isinf(at270.axial_ratio));

  const auto e240 = array_farfield(array, dir_deg(90, 240));
  const auto at240 = polarization(e240, dir_deg(90, 240));
  CHECK(at240.classification == Classification::elliptical);
  CHECK(std::abs(at240.axial_ratio - 2.0) <= 1e-6);
  CHECK(at240.handedness != at0.handedness);
  CHECK(at240.handedness != Handedness::LINEAR);

  // Brute-force oracle for the 240 degree ellipse.
  const auto d = decompose(e240);
  const auto sweep = testing::sweep_ellipse(d.e_c, d.e_s);
  CHECK(sweep.max_len / sweep.min_len == doctest::Approx(2.0).epsilon(1e-6));

  // Labels under the source-facing convention read CW circular / CCW elliptical.
  const auto src0 = polarization(array_farfield(array, dir_deg(90, 0)), dir_deg(90, 0), Convention::toward_source);
  const auto src240 = polarization(e240, dir_deg(90, 240), Convention::toward_source);
  CHECK(src0.handedness == Handedness::CW);
  CHECK(src240.handedness == Handedness::CCW);
  CHECK(at0.handedness == Handedness::CCW);
}

TEST_CASE("handedness flips with the phase sign and the convention") {
  const auto lead = crossed_dipoles(90.0), lag = crossed_dipoles(-90.0);
  for (double phi : {0.0, 30.0, 120.0, 240.0}) {
    const Vec3 k = dir_deg(90, phi);
    const auto a = polarization(array_farfield(lead, k), k);
    const auto b = polarization(array_farfield(lag, k), k);
    const auto c = polarization(array_farfield(lead, k), k, Convention::toward_source);
    CHECK(a.handedness != b.handedness);
    CHECK(a.handedness != c.handedness);
    CHECK(a.axial_ratio == doctest::Approx(b.axial_ratio));
  }
}

TEST_CASE("closed-form ellipse matches a 3600-sample sweep") {
  for (int n = 0; n < 10000; ++n) {
    const Vec3 k = testing::random_unit();
    const auto e = random_transverse(k);
    const auto p = polarization(e, k);
    const auto d = decompose(e);
    const auto sweep = testing::sweep_ellipse(d.e_c, d.e_s);
    const double a = norm(p.major_axis), b = norm(p.minor_axis);
    CHECK(a == doctest::Approx(sweep.max_len).epsilon(1e-9));
    CHECK(b == doctest::Approx(sweep.min_len).epsilon(1e-6));
    if (sweep.min_len > 1e-6 * sweep.max_len) {
      CHECK(p.axial_ratio == doctest::Approx(sweep.max_len / sweep.min_len).epsilon(1e-6));
    }
    if (sweep.min_len < 0.99 * sweep.max_len) {
      CHECK(testing::parallel_error(p.major_axis, sweep.max_dir) < 1e-6);
    }
    CHECK(std::abs(dot(p.major_axis, p.minor_axis)) <= 1e-9 * (a * a + 1e-300));
    CHECK(a >= b);
    const double ps = dot(d.e_c, d.e_c) + dot(d.e_s, d.e_s);
    CHECK(a * a + b * b == doctest::Approx(ps).epsilon(1e-9));
  }
}

TEST_CASE("non-transverse and null fields are rejected") {
  try {
    polarization(PhasorVec::from({1, 0, 0}), {1, 0, 0});
    FAIL("expected not_transverse");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::not_transverse);
    CHECK(std::string(e.what()) == "field not transverse to propagation");
  }
  CHECK_THROWS_AS(polarization(PhasorVec{}, {1, 0, 0}), Error);
}

TEST_CASE("amplitude scaling leaves polarization unchanged") {
  const auto array = crossed_dipoles();
  const auto big = array.scaled(7.5);
  for (int n = 0; n < 200; ++n) {
    const Vec3 k = testing::random_unit();
    const auto e = array_farfield(array, k);
    if (std::sqrt(power(e)) < 1e-6) continue;
    const auto a = polarization(e, k), b = polarization(array_farfield(big, k), k);
    CHECK(a.classification == b.classification);
    CHECK(a.handedness == b.handedness);
    if (std::isfinite(a.axial_ratio)) CHECK(a.axial_ratio == doctest::Approx(b.axial_ratio).epsilon(1e-9));
  }
}

TEST_CASE("polarization map") {
  const AntennaArray z({DipoleElement::short_dipole({0, 0, 0}, {0, 0, 1})});
  const auto map = polarization_map(z, {19, 36});
  int nulls = 0;
  for (const auto& e : map.ellipses) {
    if (!e) {
      ++nulls;
      continue;
    }
    CHECK(e->classification == Classification::linear);
  }
  CHECK(nulls == 2 * 36);  // the two polar rows

  const auto crossed = polarization_map(crossed_dipoles(), {3, 72});
  bool seen_lin = false, seen_circ = false, seen_ell = false;
  for (int j = 0; j < 72; ++j) {
    const auto& e = crossed.ellipses[crossed.grid.index(1, j)];
    REQUIRE(e);
    seen_lin |= e->classification == Classification::linear;
    seen_circ |= e->classification == Classification::circular;
    seen_ell |= e->classification == Classification::elliptical;
  }
  CHECK((seen_lin && seen_circ && seen_ell));
}

TEST_CASE("polarization is rotation equivariant") {
  const AntennaArray array({DipoleElement::sinusoidal({0.1, 0, 0}, {0, 0, 1}, 0.8),
                            DipoleElement::short_dipole({0, 0.2, 0}, {1, 1, 0}, 0.7, deg2rad(60))});
  for (int n = 0; n < 200; ++n) {
    const Mat3 rot = testing::random_rotation();
    const auto turned = array.rotated(rot);
    const Vec3 k = testing::random_unit();
    const auto e = array_farfield(array, k);
    if (std::sqrt(power(e)) < 1e-3) continue;
    const auto a = polarization(e, k);
    const auto b = polarization(array_farfield(turned, rot * k), rot * k);
    CHECK(b.classification == a.classification);
    CHECK(b.handedness == a.handedness);
    const Vec3 ra = rot * a.major_axis;
    CHECK(std::min(distance(ra, b.major_axis), distance(ra, -b.major_axis)) <= 1e-9);
    if (a.classification == Classification::elliptical) {
      const Vec3 rm = rot * a.minor_axis;
      CHECK(std::min(distance(rm, b.minor_axis), distance(rm, -b.minor_axis)) <= 1e-9);
    }
  }
}

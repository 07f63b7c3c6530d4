#include <cmath>
#include <complex>
#include <limits>
#include <random>

#include "doctest.h"

#include "awg/diode_unit.hpp"
#include "awg/errors.hpp"

using namespace awg;
using cd = std::complex<double>;

namespace {

const double kOmega = 2.0 * 3.141592653589793 * 5.8e9;

// Independent evaluation of the unit circuit written out term by term.
cd brute_force_gamma(const UnitModel& u, double v, double w) {
  const DiodeModel& d = u.diode;
  double r;
  double x = w * d.l_p;
  if (v < d.v_forward) {
    r = d.r_p0;
    x -= 1.0 / (w * d.c_p);
  } else {
    r = d.r_on_ref * std::pow((d.v_ref - d.v_forward + d.v_soft) / (v - d.v_forward + d.v_soft), d.slope);
  }
  r += u.r_rf;
  x += w * u.l_rf - 1.0 / (w * u.c_rf);
  const double num_re = r - u.z0;
  const double den_re = r + u.z0;
  const double den2 = den_re * den_re + x * x;
  // (a + jx)/(b + jx) = ((a b + x^2) + j x (b - a)) / (b^2 + x^2)
  return {(num_re * den_re + x * x) / den2, x * (den_re - num_re) / den2};
}

}  // namespace

TEST_CASE("pin impedance, OFF branch at zero bias") {
  DiodeModel d;
  const cd z = pin_impedance(d, 0.0, kOmega);
  const double x_expected = kOmega * 0.7e-9 - 1.0 / (kOmega * 1.8e-12);
  CHECK(z.real() == doctest::Approx(2.0));
  CHECK(z.imag() == doctest::Approx(x_expected).epsilon(1e-14));
}

TEST_CASE("pin impedance at the reference voltage") {
  DiodeModel d;
  const cd z = pin_impedance(d, d.v_ref, kOmega);
  CHECK(z.real() == d.r_on_ref);
  CHECK(z.imag() == kOmega * d.l_p);
  d.r_on_ref = 0.0;
  const cd z0 = pin_impedance(d, d.v_ref, kOmega);
  CHECK(z0.real() == 0.0);
  CHECK(z0.imag() == kOmega * d.l_p);
}

TEST_CASE("pin impedance domain errors") {
  DiodeModel d;
  CHECK_THROWS_AS(pin_impedance(d, std::nan(""), kOmega), DomainError);
  CHECK_THROWS_AS(pin_impedance(d, 1.0, 0.0), DomainError);
  CHECK_THROWS_AS(pin_impedance(d, 1.0, std::numeric_limits<double>::infinity()), DomainError);
}

TEST_CASE("on resistance decreases strictly above v_forward") {
  DiodeModel d;
  double prev = d.on_resistance(d.v_forward);
  CHECK(std::isfinite(prev));
  for (int i = 1; i <= 200; ++i) {
    const double v = d.v_forward + 0.005 * i;
    const double r = d.on_resistance(v);
    CHECK(r < prev);
    prev = r;
  }
}

TEST_CASE("reflection coefficient special cases") {
  UnitModel u;
  u.c_rf = std::numeric_limits<double>::infinity();
  u.l_rf = -u.diode.l_p;  // cancels the package inductance exactly
  u.diode.r_on_ref = 0.0;
  u.r_rf = u.z0;  // matched
  CHECK(std::abs(reflection_coefficient(u, u.diode.v_ref, kOmega)) < 1e-15);

  UnitModel lossless;
  lossless.r_rf = 0.0;
  lossless.diode.r_p0 = 0.0;
  CHECK(std::abs(reflection_coefficient(lossless, 0.0, kOmega)) == doctest::Approx(1.0).epsilon(1e-14));

  UnitModel pole;
  pole.c_rf = std::numeric_limits<double>::infinity();
  pole.l_rf = -pole.diode.l_p;
  pole.diode.r_on_ref = 1.0;
  pole.r_rf = -pole.z0 - 1.0;
  CHECK_THROWS_AS(reflection_coefficient(pole, pole.diode.v_ref, kOmega), SingularityError);
}

TEST_CASE("reflection coefficient matches the brute-force circuit oracle") {
  UnitModel u;
  for (double v : {0.0, 0.3, 0.69, 0.7, 0.75, 0.9, 1.0, 1.2, 1.5}) {
    CAPTURE(v);
    const cd g = reflection_coefficient(u, v, kOmega);
    const cd ref = brute_force_gamma(u, v, kOmega);
    CHECK(std::abs(g - ref) < 1e-14);
    CHECK(std::abs(g) <= 1.0);
  }
}

TEST_CASE("magnitude map is strictly increasing and below alpha") {
  UnitModel u;
  const auto& d = u.diode;
  CHECK(magnitude_map(u, d.v_forward + 1e-6, kOmega) < magnitude_map(u, d.v_ref, kOmega));
  double prev = -1.0;
  for (int i = 0; i < 100; ++i) {
    const double v = d.v_forward + (d.v_ref - d.v_forward) * i / 99.0;
    const double m = magnitude_map(u, v, kOmega);
    CHECK(m > prev);
    CHECK(m < u.alpha);
    prev = m;
  }
  CHECK_THROWS_AS(magnitude_map(u, d.v_forward - 1e-9, kOmega), PreconditionError);
}

TEST_CASE("default unit spans roughly a decade of magnitude") {
  UnitModel u;
  const MagnitudeRange r = magnitude_range(u, kOmega);
  CHECK(r.lo > 0.05);
  CHECK(r.lo < 0.15);
  CHECK(r.hi > 0.9);
  CHECK(r.hi < u.alpha);
}

TEST_CASE("inverse magnitude map") {
  UnitModel u;
  const auto& d = u.diode;
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> pick(d.v_forward, d.v_ref);
  for (int i = 0; i < 20; ++i) {
    const double v = pick(rng);
    const double m = magnitude_map(u, v, kOmega);
    const double back = inverse_magnitude_map(u, m, kOmega);
    CHECK(std::abs(back - v) <= 1e-6);
    CHECK(std::abs(magnitude_map(u, back, kOmega) - m) <= 1e-9);
  }
  const MagnitudeRange r = magnitude_range(u, kOmega);
  CHECK(inverse_magnitude_map(u, r.hi, kOmega) == d.v_ref);
  CHECK(inverse_magnitude_map(u, r.lo, kOmega) == d.v_forward);
  try {
    inverse_magnitude_map(u, u.alpha, kOmega);
    FAIL("expected RangeError");
  } catch (const RangeError& e) {
    CHECK(e.min() == r.lo);
    CHECK(e.max() == r.hi);
  }
  CHECK_THROWS_AS(inverse_magnitude_map(u, r.lo * 0.5, kOmega), RangeError);
}

TEST_CASE("rc_state branches") {
  UnitModel u;
  const auto& d = u.diode;
  const RcState off = rc_state(u, 0.0, kOmega);
  CHECK(off.magnitude == u.alpha);
  CHECK(off.phase == u.phi_off);
  CHECK(rc_state(u, d.v_ref, kOmega).magnitude == magnitude_map(u, d.v_ref, kOmega));
  const double p_f = rc_state(u, d.v_forward, kOmega).phase;
  const double p_r = rc_state(u, d.v_ref, kOmega).phase;
  CHECK(std::abs(p_f - p_r) <= deg2rad(5.0) + 1e-15);

  for (int i = 0; i <= 300; ++i) {
    const double v = 1.5 * i / 300.0;
    const RcState s = rc_state(u, v, kOmega);
    CHECK(s.magnitude <= 1.0);
    if (v >= d.v_forward) {
      CHECK(std::abs(s.phase - u.phi_on) <= u.phase_jitter + 1e-15);
    } else {
      CHECK(s.phase == u.phi_off);
    }
  }
}

TEST_CASE("rc_state is continuous except at v_forward") {
  UnitModel u;
  const auto& d = u.diode;
  const double h = 1e-7;
  for (double v : {0.2, 0.5, 0.8, 1.0, 1.15}) {
    const RcState a = rc_state(u, v, kOmega);
    const RcState b = rc_state(u, v + h, kOmega);
    CHECK(std::abs(a.magnitude - b.magnitude) < 1e-3);
    CHECK(std::abs(a.phase - b.phase) < 1e-3);
  }
  const RcState below = rc_state(u, d.v_forward - h, kOmega);
  const RcState at = rc_state(u, d.v_forward, kOmega);
  CHECK(std::abs(below.magnitude - at.magnitude) > 0.5);
}

TEST_CASE("jitter profile") {
  UnitModel u;
  const auto& d = u.diode;
  CHECK(u.jitter(d.v_forward) == doctest::Approx(u.phase_jitter));
  CHECK(u.jitter(d.v_ref) == 0.0);
  CHECK(u.jitter(2.0) == 0.0);
  CHECK(u.jitter(0.0) == doctest::Approx(u.phase_jitter));
}

TEST_CASE("validation") {
  UnitModel u;
  CHECK_NOTHROW(u.validate());
  u.alpha = 0.0;
  CHECK_THROWS_AS(u.validate(), ConfigError);
  u = UnitModel{};
  u.diode.v_ref = u.diode.v_forward;
  CHECK_THROWS_AS(u.validate(), ConfigError);
  u = UnitModel{};
  u.diode.c_p = 0.0;
  CHECK_THROWS_AS(u.validate(), ConfigError);
}

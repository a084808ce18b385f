#include <doctest.h>

#include <cmath>

#include "nhadiab/protocols.hpp"
#include "oracles.hpp"

using namespace nhadiab;

namespace {

const double kOmega4 = kTwoPi * 3.183e3;
const double kDelta4 = kTwoPi * 31.831e3;

ProtocolSchedule cpr4() { return ProtocolSchedule::cpr(kDelta4, kOmega4, 4e8, 1e-3); }
ProtocolSchedule lz1() { return ProtocolSchedule::landau_zener(2e6, kTwoPi * 0.159e3, 3e-3); }

}  // namespace

TEST_CASE("LZ values and derivatives") {
  const auto s = lz1();
  CHECK(s.kind() == ProtocolKind::LandauZener);
  CHECK(s.delta(1.5e-3) == 0.0);
  CHECK(s.delta(0.0) == doctest::Approx(-2e6 * 1.5e-3));
  for (double t : {0.0, 1e-3, 2.9e-3}) {
    CHECK(s.omega_r(t) == kTwoPi * 0.159e3);
    CHECK(s.delta_dot(t) == 2e6);
    CHECK(s.omega_r_dot(t) == 0.0);
  }
}

TEST_CASE("CPR values and derivatives") {
  const auto s = cpr4();
  CHECK(s.omega_r(0.5e-3) == kOmega4);
  CHECK(s.delta_dot(0.5e-3) == 0.0);
  CHECK(s.omega_r_dot(0.5e-3) == 0.0);
  CHECK(s.delta(0.2e-3) == kDelta4);
  // Pulse is effectively off at the boundaries.
  CHECK(s.omega_r(0.0) / kOmega4 == doctest::Approx(std::exp(-100.0)).epsilon(1e-12));
}

TEST_CASE("CPR Omega_R' matches central differences at O(h^2)") {
  const auto s = cpr4();
  const double t = 0.37e-3;
  auto err = [&](double h) {
    const double fd = (s.omega_r(t + h) - s.omega_r(t - h)) / (2.0 * h);
    return std::abs(fd - s.omega_r_dot(t));
  };
  const double e1 = err(1e-6), e2 = err(0.5e-6);
  CHECK(e1 / e2 == doctest::Approx(4.0).epsilon(0.05));
}

TEST_CASE("out-of-range and invalid schedules throw") {
  const auto s = cpr4();
  CHECK_THROWS_AS(s.eval(-1e-9), std::out_of_range);
  CHECK_THROWS_AS(s.eval(1.1e-3), std::out_of_range);
  CHECK_THROWS_AS(ProtocolSchedule::landau_zener(0.0, 1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(ProtocolSchedule::landau_zener(1.0, 1.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(ProtocolSchedule::cpr(-1.0, 1.0, 1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(ProtocolSchedule::cpr(1.0, 1.0, 0.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(ProtocolSchedule::tabulated({0, 1, 2}, {0, 0, 0}, {0, 0, 0}), std::invalid_argument);
  CHECK_THROWS_AS(ProtocolSchedule::tabulated({0, 1, 2, 3, 5}, {0, 0, 0, 0, 0}, {0, 0, 0, 0, 0}),
                  std::invalid_argument);
}

TEST_CASE("complex continuation agrees with real evaluation on the axis") {
  for (const auto& s : {cpr4(), lz1()}) {
    for (double f : {0.0, 0.21, 0.5, 0.93}) {
      const double t = f * s.t_f();
      const auto r = s.eval(t);
      const auto c = s.eval(cplx(t, 0.0));
      CHECK(std::abs(c.delta - r.delta) <= 1e-12 * (1.0 + std::abs(r.delta)));
      CHECK(std::abs(c.omega - r.omega) <= 1e-12 * (1.0 + std::abs(r.omega)));
      CHECK(std::abs(c.omega_dot - r.omega_dot) <= 1e-12 * (1.0 + std::abs(r.omega_dot)));
    }
  }
}

TEST_CASE("tabulated schedule reproduces analytic schedules from 1e4 samples") {
  for (const auto& s : {cpr4(), lz1()}) {
    const std::size_t n = 10000;
    std::vector<double> t(n + 1), d(n + 1), w(n + 1);
    for (std::size_t k = 0; k <= n; ++k) {
      t[k] = s.t_f() * static_cast<double>(k) / static_cast<double>(n);
      d[k] = s.delta(t[k]);
      w[k] = s.omega_r(t[k]);
    }
    const auto tab = ProtocolSchedule::tabulated(t, d, w);
    CHECK(tab.kind() == ProtocolKind::Tabulated);
    CHECK(!tab.analytic());
    double worst = 0.0;
    oracle::Gen gen(3);
    const double scale = std::max(std::abs(s.delta(0.0)), kOmega4);
    for (int i = 0; i < 500; ++i) {
      const double x = gen.uniform(0.0, s.t_f());
      worst = std::max({worst, std::abs(tab.delta(x) - s.delta(x)) / scale,
                        std::abs(tab.omega_r(x) - s.omega_r(x)) / scale});
    }
    CHECK(worst < 1e-8);
    CHECK_THROWS_AS(tab.eval(cplx(0.0, 1.0)), std::domain_error);
  }
}

TEST_CASE("LZ regime classification and branch defaults") {
  CHECK(classify_lz(1.0, 1.0) == LzRegime::BelowThreshold);
  CHECK(classify_lz(3.0, 1.0) == LzRegime::AboveThreshold);
  CHECK(classify_lz(2.0, 1.0) == LzRegime::Degenerate);
  const auto below = default_branches(lz1(), kTwoPi * 0.159e3);
  CHECK(below.sqrt_interval == ArgInterval::minus_pi_to_pi());
  CHECK(!below.pi_offset);
  const auto above = default_branches(ProtocolSchedule::landau_zener(5e7, kTwoPi * 0.796e3, 1e-3),
                                      kTwoPi * 1.910e3);
  CHECK(above.sqrt_interval == ArgInterval::zero_to_two_pi());
  CHECK(above.pi_offset);
  const auto cpr = default_branches(cpr4(), kOmega4);
  CHECK(cpr.sqrt_interval == ArgInterval::minus_pi_to_pi());
  CHECK(!cpr.pi_offset);
}

TEST_CASE("schedules are pure functions of t") {
  const auto s = cpr4();
  const auto a = s.eval(0.123e-3);
  const auto b = s.eval(0.123e-3);
  CHECK(a.omega == b.omega);
  CHECK(a.omega_dot == b.omega_dot);
}

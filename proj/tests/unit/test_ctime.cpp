#include <doctest.h>

#include <cmath>

#include "nhadiab/ctime.hpp"
#include "nhadiab/dynamics.hpp"
#include "nhadiab/presets.hpp"
#include "oracles.hpp"

using namespace nhadiab;

namespace {

struct Loaded {
  Scenario scenario;
  ProtocolSchedule schedule;
  ModelParams params;
  BranchDefaults branches;
};

Loaded load(const std::string& name) {
  const Scenario s = preset(name);
  auto schedule = s.protocol.build();
  const ModelParams p = s.model();
  return {s, schedule, p, default_branches(schedule, p.gamma)};
}

cplx closest(const std::vector<Degeneracy>& found, cplx t) {
  cplx best = found.empty() ? cplx(1e300) : found.front().t;
  for (const auto& d : found) {
    if (d.converged && std::abs(d.t - t) < std::abs(best - t)) best = d.t;
  }
  return best;
}

}  // namespace

TEST_CASE("LZ degeneracies: closed form, roots of z, and the Newton search") {
  for (const char* name : {"fig2_lzi", "fig2_lzii", "fig1a_lzi", "fig1b_lzii"}) {
    CAPTURE(name);
    const Loaded l = load(name);
    const LandauZenerParams& lz = *l.schedule.as_lz();
    const double b = lz.chirp, w0 = lz.omega0, g = l.params.gamma, tf = lz.t_f;
    // Gamma + 2 i b (t - t_f/2) = +-2 i Omega_0.
    const cplx expect[2] = {tf / 2 + kI * (g - 2 * w0) / (2 * b), tf / 2 + kI * (g + 2 * w0) / (2 * b)};
    const auto roots = lz_degeneracies(lz, g);
    REQUIRE(roots.size() == 2);
    for (const cplx e : expect) {
      const double d = std::min(std::abs(roots[0] - e), std::abs(roots[1] - e));
      CHECK(d < 1e-12 * tf);
      const auto c = l.schedule.eval(e);
      const cplx z = radicand<cplx>(c.delta, c.omega, g);
      CHECK(std::abs(z) < 1e-10 * (std::norm(cplx(g, 2 * b * tf)) + 4 * w0 * w0));
    }
    const auto found = find_degeneracies(l.schedule, l.params, default_search(l.schedule));
    for (const cplx e : roots) {
      if (std::abs(e.imag()) > 0.5 * tf) continue;
      CHECK(std::abs(closest(found, e) - e) < 1e-10 * tf);
    }
  }
}

TEST_CASE("Hermitian LZ degeneracies form a conjugate pair") {
  const LandauZenerParams lz{2e6, kTwoPi * 0.159e3, 3e-3};
  const auto roots = lz_degeneracies(lz, 0.0);
  REQUIRE(roots.size() == 2);
  const double im = lz.omega0 / lz.chirp;
  CHECK(std::abs(roots[0] - std::conj(roots[1])) < 1e-15);
  for (const cplx r : roots) {
    CHECK(r.real() == doctest::Approx(1.5e-3));
    CHECK(std::abs(r.imag()) == doctest::Approx(im).epsilon(1e-14));
  }
}

TEST_CASE("CPR degeneracies sit off the axis without conjugate partners") {
  const Loaded l = load("fig8a");
  const auto found = find_degeneracies(l.schedule, l.params, default_search(l.schedule));
  std::size_t converged = 0;
  for (const auto& d : found) {
    if (!d.converged) continue;
    ++converged;
    CHECK(d.residual < 1e-10);
    CHECK(std::abs(d.t.imag()) > 1e-6 * l.schedule.t_f());
    CHECK(d.gap < 1e-6 * kTwoPi * 31.831e3);
    CHECK(std::abs(closest(found, std::conj(d.t)) - std::conj(d.t)) > 1e-6 * l.schedule.t_f());
  }
  CHECK(converged >= 1);
}

TEST_CASE("non-analytic schedules are rejected") {
  const auto tab = ProtocolSchedule::tabulated({0, 1, 2, 3, 4}, {1, 1, 1, 1, 1}, {0, 1, 2, 1, 0});
  CHECK_THROWS_AS(find_degeneracies(tab, {0.1}, default_search(tab)), std::domain_error);
}

TEST_CASE("constant H: Phi is linear in t") {
  // No coupling: E_+ - E_- = Delta - i Gamma / 2 everywhere.
  const double delta = kTwoPi * 1e3, gamma = kTwoPi * 0.5e3, tf = 1e-3;
  const auto schedule = ProtocolSchedule::cpr(delta, 0.0, 4e8, tf);
  const BranchDefaults branches = default_branches(schedule, gamma);
  oracle::Gen gen(4);
  for (int i = 0; i < 20; ++i) {
    const cplx t(gen.uniform(0.0, tf), gen.uniform(-0.05 * tf, 0.05 * tf));
    const cplx phi = phi_straight(schedule, {gamma}, t, 200, branches);
    const cplx expect = kI * cplx(delta, -gamma / 2) * t;
    CHECK(std::abs(phi - expect) < 1e-10 * std::abs(expect));
    CHECK(std::abs(phi.real() - (-delta * t.imag() + 0.5 * gamma * t.real())) < 1e-10 * std::abs(expect));
  }
  const ComplexRect rect{0.0, tf, -0.05 * tf, 0.05 * tf, 5, 5};
  const ComplexLandscape land = sample_landscape(schedule, {gamma}, rect);
  for (const auto& node : land.nodes) CHECK(std::abs(node.h) == 0.0);
  CHECK(classify_boundary_validity(land).verdict == BoundaryVerdict::BoundaryDominated);
}

TEST_CASE("fig4a: Re Phi decreases up the vertical through t_f") {
  const Loaded l = load("fig4a");
  const double tf = l.schedule.t_f();
  double prev = phi_straight(l.schedule, l.params, tf, 20000, l.branches).real();
  for (int k = 1; k <= 12; ++k) {
    const cplx t(tf, 0.005 * k * tf);
    const double now = phi_along(l.schedule, l.params, {0.0, tf, t}, 20000, l.branches).real();
    CHECK(now < prev);
    prev = now;
  }
}

TEST_CASE("fig7a: Re Phi is monotone along the real axis") {
  const Loaded l = load("fig7a");
  const double tf = l.schedule.t_f();
  const auto rect = ComplexRect{0.0, tf, 0.0, 0.0, 201, 1};
  LandscapeConfig cfg;
  cfg.contour_steps = 4000;
  const ComplexLandscape land = sample_landscape(l.schedule, l.params, rect, cfg);
  for (std::size_t i = 1; i < rect.n_re; ++i) {
    CHECK(land.at(i, 0).phi.real() > land.at(i - 1, 0).phi.real());
  }
}

TEST_CASE("Phi on the real axis equals i W from propagation") {
  for (const char* name : {"fig4a", "fig7a", "fig2_lzi"}) {
    CAPTURE(name);
    const Loaded l = load(name);
    IntegratorSettings settings = l.scenario.integrator();
    const Trajectory tr = propagate(l.schedule, l.params, l.scenario.psi0(l.schedule), settings);
    for (std::size_t k : {tr.grid.steps / 4, tr.grid.steps / 2, tr.grid.steps}) {
      const auto& s = tr.samples[k];
      const cplx phi = phi_straight(l.schedule, l.params, s.t, 20000, l.branches);
      CHECK(std::abs(phi - kI * s.phases.w_pm) < 1e-8 * std::max(1.0, std::abs(s.phases.w_pm)));
    }
  }
}

TEST_CASE("property: Phi is path independent away from degeneracies") {
  const Loaded l = load("fig4a");
  const double tf = l.schedule.t_f();
  oracle::Gen gen(808);
  for (int i = 0; i < 20; ++i) {
    const cplx t(gen.uniform(0.05 * tf, tf), gen.uniform(-0.04 * tf, 0.04 * tf));
    const cplx straight = phi_straight(l.schedule, l.params, t, 20000, l.branches);
    Flag flags = Flag::None;
    const cplx bent = phi_along(l.schedule, l.params, {0.0, cplx(t.real()), t}, 20000, l.branches, &flags);
    CHECK(!has(flags, Flag::CoarseStep));
    CHECK(std::abs(straight - bent) < 1e-8 * std::max(1.0, std::abs(straight)));
  }
}

TEST_CASE("landscape layout and validity") {
  const Loaded l = load("fig8a");
  const double tf = l.schedule.t_f();
  const ComplexRect rect = default_landscape_rect(l.schedule);
  CHECK(rect.re_min == 0.0);
  CHECK(rect.re_max == tf);
  CHECK(rect.im_max == doctest::Approx(0.06 * tf));
  CHECK(rect.contains(rect.node(0, 0)));
  CHECK(rect.contains(rect.node(rect.n_re - 1, rect.n_im - 1)));
  CHECK(!rect.contains(cplx(tf, 0.07 * tf)));
  const ComplexRect small{0.0, tf, -0.06 * tf, 0.06 * tf, 11, 7};
  const ComplexLandscape land = sample_landscape(l.schedule, l.params, small);
  REQUIRE(land.nodes.size() == 77);
  CHECK(land.at(3, 2).t == small.node(3, 2));
  CHECK(land.at(0, 3).valid);
  for (const auto& node : land.nodes) {
    if (node.valid) CHECK(std::isfinite(std::abs(node.phi)));
  }
}

TEST_CASE("boundary classifier on the two CPR cases") {
  for (auto [name, verdict] : {std::pair{"fig8a", BoundaryVerdict::BoundaryDominated},
                               std::pair{"fig8b", BoundaryVerdict::InteriorContaminated}}) {
    CAPTURE(name);
    const Loaded l = load(name);
    const ComplexLandscape land =
        sample_landscape(l.schedule, l.params, l.scenario.landscape->rect, {});
    const BoundaryReport r = classify_boundary_validity(land);
    CHECK(r.verdict == verdict);
    CHECK(!r.reason.empty());
    CHECK(r.h_boundary >= 0.0);
  }
}

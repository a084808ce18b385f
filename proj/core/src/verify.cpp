#include "nhadiab/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include <fmt/format.h>

#include "nhadiab/criteria.hpp"
#include "nhadiab/ctime.hpp"
#include "nhadiab/populations.hpp"
#include "nhadiab/presets.hpp"

namespace nhadiab {

bool VerifyReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const InvariantCheck& c) { return c.passed; });
}

namespace {

class Suite {
 public:
  explicit Suite(const VerifyOptions& options) : options_(options) {}

  void record(std::string name, double value, double tolerance, std::string detail = {}) {
    InvariantCheck c;
    c.name = std::move(name);
    c.value = value;
    c.tolerance = tolerance;
    c.passed = std::isfinite(value) && value <= tolerance;
    c.detail = std::move(detail);
    if (options_.on_check) options_.on_check(c);
    report_.checks.push_back(std::move(c));
  }

  void flag(std::string name, bool ok, std::string detail = {}) {
    record(std::move(name), ok ? 0.0 : 1.0, 0.5, std::move(detail));
  }

  VerifyReport take() { return std::move(report_); }
  const VerifyOptions& options() const { return options_; }

 private:
  const VerifyOptions& options_;
  VerifyReport report_;
};

struct Loaded {
  Scenario scenario;
  ProtocolSchedule schedule;
};

Loaded load(const std::string& name) {
  Scenario s = preset(name);
  ProtocolSchedule schedule = s.protocol.build();
  return {std::move(s), std::move(schedule)};
}

void eigensystem(Suite& suite) {
  std::mt19937_64 rng(suite.options().seed);
  std::uniform_real_distribution<double> control(-10.0, 10.0), decay(0.0, 10.0);
  double eig = 0.0, bi = 0.0, closure = 0.0, herm = 0.0;
  std::size_t used = 0;
  while (used < suite.options().random_triples) {
    const double delta = control(rng), omega = control(rng);
    const double gamma = used % 4 == 0 ? 0.0 : decay(rng);
    const double scale = std::norm(cplx(gamma, 2.0 * delta)) + 4.0 * omega * omega;
    if (std::abs(radicand<cplx>(delta, omega, gamma)) < 1e-6 * scale) continue;
    BranchDefaults labelled;
    labelled.auto_label = true;
    FrameTrackers trackers(labelled);
    const EigenFrame f = eigenframe(ControlValues<double>{delta, omega, 0.0, 0.0}, gamma, 0.0, trackers);
    eig = std::max(eig, eigen_residual(f, hamiltonian(delta, omega, gamma)));
    bi = std::max(bi, biorthogonality_residual(f));
    closure = std::max(closure, closure_residual(f));
    if (gamma == 0.0) herm = std::max(herm, orthonormality_residual(f));
    ++used;
  }
  suite.record("eigen residual H|n> = E_n|n>", eig, 1e-10);
  suite.record("biorthogonality <n^|m> = delta_nm", bi, 1e-10);
  suite.record("closure sum |n><n^| = 1", closure, 1e-10);
  suite.record("Gamma = 0 orthonormality", herm, 1e-12);
}

void crossings(Suite& suite) {
  {
    const auto l = load("fig2_lzi");
    const ModelParams p = l.scenario.model();
    FrameTrackers tr(default_branches(l.schedule, p.gamma));
    const EigenFrame f = eigenframe(l.schedule, p, 0.5 * l.schedule.t_f(), tr);
    const double dev = std::max(std::abs(f.e_plus.imag() + 0.25 * p.gamma),
                                std::abs(f.e_minus.imag() + 0.25 * p.gamma)) / p.gamma;
    suite.record("LZ(i) Im E_pm(t_f/2) = -Gamma/4", dev, 1e-10);
    suite.flag("LZ(i) real parts avoid crossing", std::abs(f.e_plus.real() - f.e_minus.real()) > 0.0);
  }
  {
    const auto l = load("fig2_lzii");
    const ModelParams p = l.scenario.model();
    FrameTrackers tr(default_branches(l.schedule, p.gamma));
    const EigenFrame f = eigenframe(l.schedule, p, 0.5 * l.schedule.t_f(), tr);
    suite.record("LZ(ii) Re E_pm(t_f/2) = 0",
                 std::max(std::abs(f.e_plus.real()), std::abs(f.e_minus.real())) / p.gamma, 1e-10);
    const Trajectory t = propagate(l.schedule, p, l.scenario.psi0(l.schedule), l.scenario.integrator());
    bool ordered = true;
    for (const auto& s : t.samples) ordered = ordered && s.frame.e_plus.imag() > s.frame.e_minus.imag();
    suite.flag("LZ(ii) Im E_+ > Im E_- throughout", ordered);
  }
}

void identities(Suite& suite, const std::vector<std::string>& names) {
  for (const auto& name : names) {
    const auto l = load(name);
    const ModelParams p = l.scenario.model();
    Trajectory tr;
    try {
      tr = propagate(l.schedule, p, l.scenario.psi0(l.schedule), l.scenario.integrator());
    } catch (const NumericalError& e) {
      suite.flag(name + ": propagation finite", false, e.what());
      continue;
    }
    double dg = 0.0, cd = 0.0;
    for (const auto& s : tr.samples) {
      for (std::size_t n = 0; n < 2; ++n) {
        dg = std::max(dg, std::abs(s.d[n] - s.d_from_g[n]) / std::max(1.0, std::abs(s.d[n])));
        cd = std::max(cd, std::abs(s.c[n] - s.d[n]) / std::max(1.0, std::abs(s.c[n])));
      }
    }
    suite.record(name + ": d_n = g_n exp(-i int E_n)", dg, 1e-8);
    suite.record(name + ": c_n = d_n", cd, 1e-8);
    suite.record(name + ": reconstruction of Psi", reconstruction_residual(tr), 1e-7);
  }
}

void coefficients(Suite& suite) {
  const auto l = load("fig4a");
  const ModelParams p = l.scenario.model();
  const IntegratorSettings settings = l.scenario.integrator();
  const Trajectory tr = propagate(l.schedule, p, l.scenario.psi0(l.schedule), settings);

  const Table1Report table = verify_table1(l.schedule, p, l.scenario.psi0(l.schedule), settings);
  suite.flag("population property yes/no pattern", table.matches_expected());

  const CoefficientSeries base = extract_coefficients(tr);
  std::mt19937_64 rng(suite.options().seed + 1);
  std::uniform_real_distribution<double> log_mod(-1.0, 1.0), phase(-kPi, kPi);
  double cov = 0.0, unit = 0.0;
  for (int k = 0; k < 10; ++k) {
    BasisGauge gauge{std::polar(std::exp(log_mod(rng)), phase(rng)),
                     std::polar(std::exp(log_mod(rng)), phase(rng))};
    const auto moved = extract_coefficients_in_gauge(tr, gauge);
    const BasisGauge unimodular{std::polar(1.0, phase(rng)), std::polar(1.0, phase(rng))};
    const auto rotated = extract_coefficients_in_gauge(tr, unimodular);
    const auto f = gauge.factors();
    for (std::size_t n = 0; n < 2; ++n) {
      for (std::size_t i = 0; i < tr.size(); ++i) {
        const cplx expect = base.g[n][i] / f[n];
        cov = std::max(cov, std::abs(moved.g[n][i] - expect) / std::max(1e-300, std::abs(expect)));
        unit = std::max(unit, std::abs(std::abs(rotated.g[n][i]) - std::abs(base.g[n][i])) /
                                  std::max(1e-300, std::abs(base.g[n][i])));
      }
    }
  }
  suite.record("gauge covariance g~_n = g_n / f_n", cov, 1e-12);
  suite.record("unimodular gauges keep |g_n|", unit, 1e-13);

  const Trajectory forced = forced_adiabatic(l.schedule, p, {cplx(0.6), cplx(0.8)}, settings);
  double drift = 0.0;
  for (const auto& s : forced.samples) {
    drift = std::max({drift, std::abs(std::norm(s.g[0]) - 0.36), std::abs(std::norm(s.g[1]) - 0.64)});
  }
  suite.record("forced adiabatic |g_n|^2 constant", drift, 1e-10);

  const auto ode = integrate_amplitude_ode(tr);
  double ode_dev = 0.0;
  for (std::size_t n = 0; n < 2; ++n) {
    for (std::size_t i = 0; i < tr.size(); ++i) {
      ode_dev = std::max(ode_dev, std::abs(ode[n][i] - tr.samples[i].g[n]));
    }
  }
  suite.record("amplitude ODE reproduces g_n", ode_dev, 1e-7);

  // Complex-time exponent on the real axis and around a detour.
  const BranchDefaults branches = default_branches(l.schedule, p.gamma);
  const double tf = l.schedule.t_f();
  const cplx w = tr.samples.back().phases.w_pm;
  const cplx axis = phi_straight(l.schedule, p, tf, 20000, branches);
  suite.record("Phi(t_f) on the real axis = i W_+-", std::abs(axis - kI * w) / std::max(1.0, std::abs(w)),
               1e-8);
  const cplx detour = phi_along(l.schedule, p, {0.0, cplx(0.0, 0.03 * tf), cplx(tf, 0.03 * tf), tf},
                                20000, branches);
  suite.record("Phi path independence", std::abs(detour - axis) / std::max(1.0, std::abs(axis)), 1e-8);

  double residual = 0.0;
  std::size_t converged = 0;
  for (const auto& d : find_degeneracies(l.schedule, p, default_search(l.schedule))) {
    if (!d.converged) continue;
    ++converged;
    residual = std::max(residual, d.residual);
  }
  suite.record("CPR degeneracy relative residual", converged ? residual : 1.0, 1e-10,
               fmt::format("{} converged roots", converged));
}

void lz_roots(Suite& suite) {
  for (const char* name : {"fig2_lzi", "fig2_lzii"}) {
    const auto l = load(name);
    const ModelParams p = l.scenario.model();
    const auto found = find_degeneracies(l.schedule, p, default_search(l.schedule));
    double worst = 0.0;
    for (const cplx expect : lz_degeneracies(*l.schedule.as_lz(), p.gamma)) {
      double best = std::numeric_limits<double>::infinity();
      for (const auto& d : found) {
        if (d.converged) best = std::min(best, std::abs(d.t - expect));
      }
      worst = std::max(worst, best / l.schedule.t_f());
    }
    suite.record(std::string(name) + ": LZ degeneracies match closed form", worst, 1e-10);
  }
}

void scenarios(Suite& suite) {
  bool round_trip = true;
  std::string bad;
  for (const auto& info : list_presets()) {
    const Scenario s = preset(info.name);
    if (!(parse_scenario(serialize_scenario(s)) == s)) {
      round_trip = false;
      bad = info.name;
    }
  }
  suite.flag("scenario serialize/parse round trip", round_trip, bad);

  const std::string body = R"(
protocol:
  kind: cpr
  delta0: 2pi*{}
  omega_max: 2pi*{}
  a: 4e8
  t_f: {}
gamma: 2pi*{}
grid: {{steps: 4000}}
)";
  const Scenario khz = parse_scenario("name: a\nunits: {frequency: kHz, time: ms}" +
                                      fmt::format(fmt::runtime(body), "31.831", "3.183", "1", "3.183"));
  const Scenario hz = parse_scenario("name: b\nunits: {frequency: Hz, time: s}" +
                                     fmt::format(fmt::runtime(body), "31831", "3183", "0.001", "3183"));
  const auto run = [](const Scenario& s) {
    const auto schedule = s.protocol.build();
    return propagate(schedule, s.model(), s.psi0(schedule), s.integrator()).samples.back().psi;
  };
  suite.record("2pi*kHz and Hz inputs agree", (run(khz) - run(hz)).norm(), 1e-12);
}

}  // namespace

VerifyReport run_invariant_suite(const VerifyOptions& options) {
  Suite suite(options);
  eigensystem(suite);
  crossings(suite);
  std::vector<std::string> names = options.presets;
  if (names.empty()) {
    for (const auto& info : list_presets()) names.push_back(info.name);
  }
  identities(suite, names);
  coefficients(suite);
  lz_roots(suite);
  scenarios(suite);
  return suite.take();
}

}  // namespace nhadiab

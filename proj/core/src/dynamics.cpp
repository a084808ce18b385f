#include "nhadiab/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace nhadiab {

namespace {

bool finite(const StateVec& v) {
  return std::isfinite(v[0].real()) && std::isfinite(v[0].imag()) && std::isfinite(v[1].real()) &&
         std::isfinite(v[1].imag());
}

struct Integrand {
  PerMode<cplx> energy;
  PerMode<cplx> transport;
  cplx omega;
};

Integrand integrand(const EigenFrame& f) {
  return {{f.e_plus, f.e_minus},
          {f.coupling(Mode::Plus, Mode::Plus), f.coupling(Mode::Minus, Mode::Minus)},
          f.omega(Mode::Plus, Mode::Minus)};
}

// Simpson weights over one step, and the quadratic-interpolant weights that
// carry an integral from the left node to the midpoint of the same step.
template <class Combine>
PhaseIntegrals advance(const PhaseIntegrals& p, const Integrand& a, const Integrand& m,
                       const Integrand& b, Combine weights) {
  PhaseIntegrals out = p;
  for (std::size_t n = 0; n < 2; ++n) {
    out.energy[n] += weights(a.energy[n], m.energy[n], b.energy[n]);
    out.transport[n] += weights(a.transport[n], m.transport[n], b.transport[n]);
  }
  out.w_pm += weights(a.omega, m.omega, b.omega);
  return out;
}

void fill_coefficients(TrajectorySample& s) {
  for (Mode n : {Mode::Plus, Mode::Minus}) {
    const std::size_t i = index(n);
    s.beta[i] = s.phases.beta(n);
    s.c[i] = s.frame.hat(n).dot(s.psi);
    s.g[i] = s.c[i] * std::exp(-kI * s.beta[i]);
    s.d[i] = s.c[i] * std::exp(s.phases.transport[i]);
    s.d_from_g[i] = s.g[i] * std::exp(-kI * s.phases.energy[i]);
  }
  s.norm2 = s.psi.squaredNorm();
}

// Frames at nodes and midpoints, tracked along t_0, t_0 + h/2, t_1, ...
Trajectory build_frames(const ProtocolSchedule& schedule, const ModelParams& params,
                        const IntegratorSettings& settings) {
  params.validate();
  if (settings.steps < 2) throw std::invalid_argument("IntegratorSettings: steps must be >= 2");
  Trajectory tr;
  tr.params = params;
  tr.branches = settings.branches.value_or(default_branches(schedule, params.gamma));
  tr.grid = TimeGrid{schedule.t_f(), settings.steps};
  tr.samples.resize(tr.grid.size());
  tr.mid.resize(tr.grid.steps);

  FrameTrackers trackers(tr.branches, settings.degeneracy_eps);
  const double h = tr.grid.step();
  auto frame_at = [&](double t) {
    EigenFrame f = eigenframe(schedule, params, t, trackers);
    tr.flags |= f.flags;
    return f;
  };

  tr.samples[0].t = 0.0;
  tr.samples[0].frame = frame_at(0.0);
  Integrand left = integrand(tr.samples[0].frame);
  for (std::size_t k = 0; k < tr.grid.steps; ++k) {
    const double t0 = tr.grid.at(k);
    const double t1 = tr.grid.at(k + 1);
    MidSample& mid = tr.mid[k];
    mid.frame = frame_at(0.5 * (t0 + t1));
    TrajectorySample& next = tr.samples[k + 1];
    next.t = t1;
    next.frame = frame_at(t1);
    const Integrand centre = integrand(mid.frame);
    const Integrand right = integrand(next.frame);
    const PhaseIntegrals& p = tr.samples[k].phases;
    next.phases = advance(p, left, centre, right,
                          [h](cplx a, cplx m, cplx b) { return h / 6.0 * (a + 4.0 * m + b); });
    mid.phases = advance(p, left, centre, right, [h](cplx a, cplx m, cplx b) {
      return h / 24.0 * (5.0 * a + 8.0 * m - b);
    });
    left = right;
    tr.max_transport = std::max({tr.max_transport, std::abs(next.phases.transport[0]),
                                 std::abs(next.phases.transport[1])});
  }
  tr.coarse_steps = trackers.sqrt.coarse_steps() + trackers.atan.minus_log().coarse_steps() +
                    trackers.atan.plus_log().coarse_steps();
  tr.degenerate_samples = trackers.sqrt.degenerate_samples();
  tr.initial_orthonormality = orthonormality_residual(tr.samples[0].frame);
  return tr;
}

}  // namespace

std::vector<double> Trajectory::times() const {
  std::vector<double> t(samples.size());
  std::transform(samples.begin(), samples.end(), t.begin(), [](const auto& s) { return s.t; });
  return t;
}

Trajectory propagate(const ProtocolSchedule& schedule, const ModelParams& params,
                     const StateVec& psi0, const IntegratorSettings& settings) {
  if (!finite(psi0)) throw std::invalid_argument("propagate: initial state is not finite");
  Trajectory tr = build_frames(schedule, params, settings);
  const double h = tr.grid.step();
  auto rhs = [&](double t, const StateVec& psi) -> StateVec {
    return -kI * (hamiltonian(schedule, params, t) * psi);
  };

  tr.samples[0].psi = psi0;
  fill_coefficients(tr.samples[0]);
  for (std::size_t k = 0; k < tr.grid.steps; ++k) {
    const double t0 = tr.grid.at(k);
    const double tm = tr.mid[k].frame.t;
    const double t1 = tr.grid.at(k + 1);
    const StateVec& y = tr.samples[k].psi;
    const StateVec k1 = rhs(t0, y);
    const StateVec k2 = rhs(tm, y + 0.5 * h * k1);
    const StateVec k3 = rhs(tm, y + 0.5 * h * k2);
    const StateVec k4 = rhs(t1, y + h * k3);
    TrajectorySample& next = tr.samples[k + 1];
    next.psi = y + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (!finite(next.psi)) {
      tr.flags |= Flag::NonFinite;
      throw NumericalError("propagate: state became non-finite at t = " + std::to_string(t1));
    }
    fill_coefficients(next);
  }
  return tr;
}

Trajectory forced_adiabatic(const ProtocolSchedule& schedule, const ModelParams& params,
                            const PerMode<cplx>& g0, const IntegratorSettings& settings) {
  Trajectory tr = build_frames(schedule, params, settings);
  for (auto& s : tr.samples) {
    s.psi = StateVec::Zero();
    for (Mode n : {Mode::Plus, Mode::Minus}) {
      s.psi += g0[index(n)] * std::exp(kI * s.phases.beta(n)) * s.frame.ket(n);
    }
    if (!finite(s.psi)) throw NumericalError("forced_adiabatic: state became non-finite");
    fill_coefficients(s);
  }
  return tr;
}

std::vector<cplx> beta_phase(const Trajectory& tr, Mode n) {
  std::vector<cplx> out(tr.size());
  for (std::size_t k = 0; k < tr.size(); ++k) out[k] = tr.samples[k].beta[index(n)];
  return out;
}

CoefficientSeries extract_coefficients(const Trajectory& tr) {
  CoefficientSeries out;
  for (std::size_t n = 0; n < 2; ++n) {
    out.c[n].reserve(tr.size());
    out.d[n].reserve(tr.size());
    out.g[n].reserve(tr.size());
    for (const auto& s : tr.samples) {
      out.c[n].push_back(s.c[n]);
      out.d[n].push_back(s.d[n]);
      out.g[n].push_back(s.g[n]);
    }
  }
  return out;
}

void BasisGauge::validate() const {
  if (std::abs(f_plus) == 0.0 || std::abs(f_minus) == 0.0 || !std::isfinite(std::abs(f_plus)) ||
      !std::isfinite(std::abs(f_minus))) {
    throw std::invalid_argument("BasisGauge: gauge factors must be finite and non-zero");
  }
}

CoefficientSeries gauge_transform(const Trajectory& tr, const BasisGauge& gauge) {
  gauge.validate();
  CoefficientSeries out = extract_coefficients(tr);
  const auto f = gauge.factors();
  for (std::size_t n = 0; n < 2; ++n) {
    for (auto* series : {&out.c[n], &out.d[n], &out.g[n]}) {
      for (auto& v : *series) v /= f[n];
    }
  }
  return out;
}

CoefficientSeries extract_coefficients_in_gauge(const Trajectory& tr, const BasisGauge& gauge) {
  gauge.validate();
  const auto f = gauge.factors();
  CoefficientSeries out;
  for (const auto& s : tr.samples) {
    const EigenFrame gauged = apply_gauge(s.frame, f);
    for (Mode n : {Mode::Plus, Mode::Minus}) {
      const std::size_t i = index(n);
      const cplx c = gauged.hat(n).dot(s.psi);
      // f is constant, so the gauged basis is still parallel transported.
      out.c[i].push_back(c);
      out.d[i].push_back(c * std::exp(s.phases.transport[i]));
      out.g[i].push_back(c * std::exp(-kI * s.phases.beta(n)));
    }
  }
  return out;
}

double reconstruction_residual(const Trajectory& tr) {
  double worst = 0.0;
  for (const auto& s : tr.samples) {
    StateVec rebuilt = StateVec::Zero();
    for (Mode n : {Mode::Plus, Mode::Minus}) {
      rebuilt += s.g[index(n)] * std::exp(kI * s.beta[index(n)]) * s.frame.ket(n);
    }
    const double scale = std::max(s.psi.norm(), 1e-300);
    worst = std::max(worst, (rebuilt - s.psi).norm() / scale);
  }
  return worst;
}

StateVec initial_mode_state(const ProtocolSchedule& schedule, const ModelParams& params, Mode m,
                            const IntegratorSettings& settings) {
  FrameTrackers trackers(settings.branches.value_or(default_branches(schedule, params.gamma)),
                         settings.degeneracy_eps);
  return eigenframe(schedule, params, 0.0, trackers).ket(m);
}

}  // namespace nhadiab

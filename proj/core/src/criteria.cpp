#include "nhadiab/criteria.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace nhadiab {

PerMode<cplx> amplitude_ode_rhs(const EigenFrame& f, cplx w_pm, const PerMode<cplx>& g) {
  const cplx phase = std::exp(kI * w_pm);
  PerMode<cplx> out;
  out[index(Mode::Plus)] = -phase * f.coupling(Mode::Plus, Mode::Minus) * g[index(Mode::Minus)];
  out[index(Mode::Minus)] = -f.coupling(Mode::Minus, Mode::Plus) * g[index(Mode::Plus)] / phase;
  return out;
}

PerMode<std::vector<cplx>> integrate_amplitude_ode(const Trajectory& tr) {
  return integrate_amplitude_ode(tr, tr.samples.front().g);
}

PerMode<std::vector<cplx>> integrate_amplitude_ode(const Trajectory& tr, const PerMode<cplx>& g0) {
  struct State {
    PerMode<cplx> g;
    cplx w;
  };
  auto rhs = [](const EigenFrame& f, const State& y) {
    return State{amplitude_ode_rhs(f, y.w, y.g), f.omega(Mode::Plus, Mode::Minus)};
  };
  auto axpy = [](const State& y, double s, const State& k) {
    return State{{y.g[0] + s * k.g[0], y.g[1] + s * k.g[1]}, y.w + s * k.w};
  };

  const double h = tr.grid.step();
  PerMode<std::vector<cplx>> out;
  for (auto& v : out) v.reserve(tr.size());
  State y{g0, 0.0};
  out[0].push_back(y.g[0]);
  out[1].push_back(y.g[1]);
  for (std::size_t k = 0; k + 1 < tr.size(); ++k) {
    const EigenFrame& f0 = tr.samples[k].frame;
    const EigenFrame& fm = tr.mid[k].frame;
    const EigenFrame& f1 = tr.samples[k + 1].frame;
    const State k1 = rhs(f0, y);
    const State k2 = rhs(fm, axpy(y, 0.5 * h, k1));
    const State k3 = rhs(fm, axpy(y, 0.5 * h, k2));
    const State k4 = rhs(f1, axpy(y, h, k3));
    for (std::size_t n = 0; n < 2; ++n) {
      y.g[n] += h / 6.0 * (k1.g[n] + 2.0 * k2.g[n] + 2.0 * k3.g[n] + k4.g[n]);
    }
    y.w += h / 6.0 * (k1.w + 2.0 * k2.w + 2.0 * k3.w + k4.w);
    out[0].push_back(y.g[0]);
    out[1].push_back(y.g[1]);
  }
  return out;
}

namespace {

void require_pair(Mode m, Mode n) {
  if (m == n) throw std::invalid_argument("criteria: modes m and n must differ");
}

cplx integrand(const EigenFrame& f, const PhaseIntegrals& p, Mode m, Mode n) {
  return f.coupling(n, m) * std::exp(kI * p.w(n, m));
}

double max_omega(const Trajectory& tr, Mode n, Mode m) {
  double worst = 0.0;
  for (const auto& s : tr.samples) worst = std::max(worst, std::abs(s.frame.omega(n, m)));
  return worst;
}

// First and second derivatives at the integer nodes of a uniformly spaced
// sequence, second order everywhere.
void differentiate(const std::vector<cplx>& f, double delta, std::vector<cplx>& d1,
                   std::vector<cplx>& d2) {
  const std::size_t last = f.size() - 1;
  d1.assign(f.size(), 0.0);
  d2.assign(f.size(), 0.0);
  for (std::size_t j = 1; j < last; ++j) {
    d1[j] = (f[j + 1] - f[j - 1]) / (2.0 * delta);
    d2[j] = (f[j + 1] - 2.0 * f[j] + f[j - 1]) / (delta * delta);
  }
  d1[0] = (-3.0 * f[0] + 4.0 * f[1] - f[2]) / (2.0 * delta);
  d1[last] = (3.0 * f[last] - 4.0 * f[last - 1] + f[last - 2]) / (2.0 * delta);
  d2[0] = (2.0 * f[0] - 5.0 * f[1] + 4.0 * f[2] - f[3]) / (delta * delta);
  d2[last] = (2.0 * f[last] - 5.0 * f[last - 1] + 4.0 * f[last - 2] - f[last - 3]) / (delta * delta);
}

}  // namespace

std::vector<cplx> first_order_amplitude(const Trajectory& tr, Mode m, Mode n) {
  require_pair(m, n);
  const double h = tr.grid.step();
  std::vector<cplx> out(tr.size());
  out[0] = 0.0;
  cplx left = integrand(tr.samples[0].frame, tr.samples[0].phases, m, n);
  for (std::size_t k = 0; k + 1 < tr.size(); ++k) {
    const cplx centre = integrand(tr.mid[k].frame, tr.mid[k].phases, m, n);
    const cplx right = integrand(tr.samples[k + 1].frame, tr.samples[k + 1].phases, m, n);
    out[k + 1] = out[k] - h / 6.0 * (left + 4.0 * centre + right);
    left = right;
  }
  return out;
}

const char* to_string(Partition p) {
  switch (p) {
    case Partition::UV: return "uv";
    case Partition::UV_RE: return "uv_re";
    case Partition::UV_IM: return "uv_im";
  }
  return "?";
}

CriterionValues uv_criterion(const Trajectory& tr, Partition partition, Mode m, Mode n) {
  require_pair(m, n);
  CriterionValues out;
  out.threshold = 1e-6 * max_omega(tr, n, m);
  out.value.reserve(tr.size());
  out.flags.reserve(tr.size());
  for (const auto& s : tr.samples) {
    const cplx omega = s.frame.omega(n, m);
    double den = std::abs(omega);
    if (partition == Partition::UV_RE) den = std::abs(omega.real());
    if (partition == Partition::UV_IM) den = std::abs(omega.imag());
    const double scale = std::abs(s.frame.coupling(n, m)) * std::exp(-s.phases.w(n, m).imag());
    Flag flag = Flag::None;
    if (den < out.threshold) flag |= Flag::BlowUp;
    out.value.push_back(den > 0.0 ? scale / den : std::numeric_limits<double>::infinity());
    out.flags.push_back(flag);
  }
  return out;
}

PartitionPieces partition_pieces(Partition partition, cplx a, cplx omega, cplx w) {
  switch (partition) {
    case Partition::UV:
      return {a / (kI * omega), kI * omega * std::exp(kI * w)};
    case Partition::UV_RE:
      return {a * std::exp(-w.imag()) / (kI * omega.real()),
              kI * omega.real() * std::exp(kI * w.real())};
    case Partition::UV_IM:
      return {a * std::exp(kI * w.real()) / (-omega.imag()),
              -omega.imag() * std::exp(-w.imag())};
  }
  return {};
}

IbpTerms ibp_terms(const LocalDerivatives& d) {
  const cplx iw = kI * d.omega;
  const cplx iw1 = kI * d.omega_dot;
  const cplx iw2 = kI * d.omega_ddot;
  IbpTerms t;
  t.u = d.a / iw;
  t.u1 = d.a_dot / (iw * iw) - d.a * iw1 / std::pow(iw, 3);
  t.u2 = d.a_ddot / std::pow(iw, 3) - 3.0 * d.a_dot * iw1 / std::pow(iw, 4) -
         d.a * iw2 / std::pow(iw, 4) + 3.0 * d.a * iw1 * iw1 / std::pow(iw, 5);
  return t;
}

std::vector<LocalDerivatives> local_derivatives(const Trajectory& tr, Mode m, Mode n) {
  require_pair(m, n);
  const std::size_t nodes = 2 * tr.grid.steps + 1;
  std::vector<cplx> alpha_dot(nodes), omega_dot(nodes);
  auto omega_rate = [n](const EigenFrame& f) {
    return mode_sign(n) * f.z_dot / (4.0 * f.sqrt_z);
  };
  for (std::size_t k = 0; k < tr.size(); ++k) {
    alpha_dot[2 * k] = tr.samples[k].frame.alpha_dot;
    omega_dot[2 * k] = omega_rate(tr.samples[k].frame);
    if (k < tr.mid.size()) {
      alpha_dot[2 * k + 1] = tr.mid[k].frame.alpha_dot;
      omega_dot[2 * k + 1] = omega_rate(tr.mid[k].frame);
    }
  }
  const double delta = 0.5 * tr.grid.step();
  std::vector<cplx> a2, a3, w2, unused;
  differentiate(alpha_dot, delta, a2, a3);
  differentiate(omega_dot, delta, w2, unused);

  // <n^|d/dt m> = mode_sign(m) alpha_dot / 2.
  const double s = 0.5 * mode_sign(m);
  std::vector<LocalDerivatives> out(tr.size());
  for (std::size_t k = 0; k < tr.size(); ++k) {
    const EigenFrame& f = tr.samples[k].frame;
    LocalDerivatives& d = out[k];
    d.a = f.coupling(n, m);
    d.a_dot = s * a2[2 * k];
    d.a_ddot = s * a3[2 * k];
    d.omega = f.omega(n, m);
    d.omega_dot = omega_dot[2 * k];
    d.omega_ddot = w2[2 * k];
  }
  return out;
}

BoundarySeries boundary_series(const Trajectory& tr, Mode m, Mode n, int order) {
  require_pair(m, n);
  if (order < 1 || order > 3) throw std::invalid_argument("boundary_series: order must be 1, 2 or 3");
  const auto derivs = local_derivatives(tr, m, n);
  const double threshold = 1e-6 * max_omega(tr, n, m);
  BoundarySeries out;
  out.order = order;
  out.at_t.resize(tr.size());
  out.total.resize(tr.size());
  out.flags.assign(tr.size(), Flag::None);
  for (std::size_t k = 0; k < tr.size(); ++k) {
    const IbpTerms t = ibp_terms(derivs[k]);
    cplx bracket = -t.u;
    if (order >= 2) bracket += t.u1;
    if (order >= 3) bracket -= t.u2;
    out.at_t[k] = bracket * std::exp(kI * tr.samples[k].phases.w(n, m));
    if (std::abs(derivs[k].omega) < threshold) out.flags[k] |= Flag::BlowUp;
    out.flags[k] |= tr.samples[k].frame.flags & Flag::Degenerate;
  }
  out.at_zero = out.at_t.front();
  for (std::size_t k = 0; k < tr.size(); ++k) out.total[k] = out.at_t[k] - out.at_zero;
  return out;
}

CriterionSeries criterion_series(const Trajectory& tr, Mode m, Mode n) {
  CriterionSeries out;
  out.m = m;
  out.n = n;
  out.g1 = first_order_amplitude(tr, m, n);
  out.uv = uv_criterion(tr, Partition::UV, m, n);
  out.uv_re = uv_criterion(tr, Partition::UV_RE, m, n);
  out.uv_im = uv_criterion(tr, Partition::UV_IM, m, n);
  out.series1 = boundary_series(tr, m, n, 1);
  out.series2 = boundary_series(tr, m, n, 2);
  out.series3 = boundary_series(tr, m, n, 3);
  return out;
}

}  // namespace nhadiab

#include "nhadiab/protocols.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <boost/math/interpolators/cardinal_cubic_b_spline.hpp>

namespace nhadiab {

struct ProtocolSchedule::Spline {
  boost::math::interpolators::cardinal_cubic_b_spline<double> curve;
};

namespace {

template <class T>
ControlValues<T> eval_lz(const LandauZenerParams& p, T t) {
  ControlValues<T> v;
  v.delta = p.chirp * (t - 0.5 * p.t_f);
  v.omega = T(p.omega0);
  v.delta_dot = T(p.chirp);
  v.omega_dot = T(0.0);
  return v;
}

template <class T>
ControlValues<T> eval_cpr(const CprParams& p, T t) {
  ControlValues<T> v;
  const T s = t - 0.5 * p.t_f;
  v.delta = T(p.delta0);
  v.omega = p.omega_max * std::exp(-p.a * s * s);
  v.delta_dot = T(0.0);
  v.omega_dot = -2.0 * p.a * s * v.omega;
  return v;
}

void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(what);
}

}  // namespace

std::string to_string(ProtocolKind kind) {
  switch (kind) {
    case ProtocolKind::LandauZener: return "lz";
    case ProtocolKind::CoherentPopulationReturn: return "cpr";
    case ProtocolKind::Tabulated: return "tabulated";
  }
  return "unknown";
}

std::string to_string(LzRegime regime) {
  switch (regime) {
    case LzRegime::BelowThreshold: return "lz-i";
    case LzRegime::AboveThreshold: return "lz-ii";
    case LzRegime::Degenerate: return "lz-degenerate";
  }
  return "unknown";
}

ProtocolSchedule ProtocolSchedule::landau_zener(double chirp, double omega0, double t_f) {
  require(t_f > 0.0 && std::isfinite(t_f), "landau_zener: t_f must be positive");
  require(chirp > 0.0 && std::isfinite(chirp), "landau_zener: chirp b must be positive");
  require(std::isfinite(omega0), "landau_zener: omega0 must be finite");
  ProtocolSchedule s;
  s.params_ = LandauZenerParams{chirp, omega0, t_f};
  s.t_f_ = t_f;
  return s;
}

ProtocolSchedule ProtocolSchedule::cpr(double delta0, double omega_max, double a, double t_f) {
  require(t_f > 0.0 && std::isfinite(t_f), "cpr: t_f must be positive");
  require(delta0 > 0.0 && std::isfinite(delta0), "cpr: delta0 must be positive");
  require(a > 0.0 && std::isfinite(a), "cpr: a must be positive");
  require(std::isfinite(omega_max), "cpr: omega_max must be finite");
  ProtocolSchedule s;
  s.params_ = CprParams{delta0, omega_max, a, t_f};
  s.t_f_ = t_f;
  return s;
}

ProtocolSchedule ProtocolSchedule::tabulated(std::vector<double> t, std::vector<double> delta,
                                             std::vector<double> omega) {
  require(t.size() >= 5, "tabulated: need at least 5 samples");
  require(delta.size() == t.size() && omega.size() == t.size(),
          "tabulated: t, delta and omega must have equal length");
  require(t.front() == 0.0, "tabulated: samples must start at t = 0");
  const double step = (t.back() - t.front()) / static_cast<double>(t.size() - 1);
  require(step > 0.0, "tabulated: times must increase");
  for (std::size_t k = 0; k < t.size(); ++k) {
    const double expected = static_cast<double>(k) * step;
    require(std::abs(t[k] - expected) <= 1e-9 * step, "tabulated: samples must be uniformly spaced");
    require(std::isfinite(delta[k]) && std::isfinite(omega[k]), "tabulated: non-finite sample");
  }
  ProtocolSchedule s;
  TabulatedState state;
  state.delta_spline = std::make_shared<const Spline>(
      Spline{{delta.data(), delta.size(), 0.0, step}});
  state.omega_spline = std::make_shared<const Spline>(
      Spline{{omega.data(), omega.size(), 0.0, step}});
  s.t_f_ = t.back();
  state.data = TabulatedParams{std::move(t), std::move(delta), std::move(omega)};
  s.params_ = std::move(state);
  return s;
}

ProtocolKind ProtocolSchedule::kind() const {
  switch (params_.index()) {
    case 0: return ProtocolKind::LandauZener;
    case 1: return ProtocolKind::CoherentPopulationReturn;
    default: return ProtocolKind::Tabulated;
  }
}

const TabulatedParams* ProtocolSchedule::as_tabulated() const {
  const auto* state = std::get_if<TabulatedState>(&params_);
  return state ? &state->data : nullptr;
}

ControlValues<double> ProtocolSchedule::eval(double t) const {
  const double slack = 1e-12 * t_f_;
  if (!(t >= -slack && t <= t_f_ + slack)) {
    throw std::out_of_range("schedule evaluated outside [0, t_f]");
  }
  if (const auto* lz = std::get_if<LandauZenerParams>(&params_)) return eval_lz(*lz, t);
  if (const auto* cp = std::get_if<CprParams>(&params_)) return eval_cpr(*cp, t);
  const auto& tab = std::get<TabulatedState>(params_);
  const double tc = std::clamp(t, 0.0, t_f_);
  ControlValues<double> v;
  v.delta = tab.delta_spline->curve(tc);
  v.omega = tab.omega_spline->curve(tc);
  v.delta_dot = tab.delta_spline->curve.prime(tc);
  v.omega_dot = tab.omega_spline->curve.prime(tc);
  return v;
}

ControlValues<cplx> ProtocolSchedule::eval(cplx t) const {
  if (const auto* lz = std::get_if<LandauZenerParams>(&params_)) return eval_lz(*lz, t);
  if (const auto* cp = std::get_if<CprParams>(&params_)) return eval_cpr(*cp, t);
  throw std::domain_error("tabulated schedules have no analytic continuation");
}

LzRegime classify_lz(double gamma, double omega0, double rel_tol) {
  const double threshold = 2.0 * std::abs(omega0);
  const double gap = gamma - threshold;
  if (std::abs(gap) <= rel_tol * std::max(threshold, gamma)) return LzRegime::Degenerate;
  return gap < 0.0 ? LzRegime::BelowThreshold : LzRegime::AboveThreshold;
}

BranchDefaults default_branches(const ProtocolSchedule& schedule, double gamma) {
  BranchDefaults b;
  switch (schedule.kind()) {
    case ProtocolKind::LandauZener: {
      const auto regime = classify_lz(gamma, schedule.as_lz()->omega0);
      if (regime == LzRegime::AboveThreshold) {
        b.sqrt_interval = ArgInterval::zero_to_two_pi();
        b.atan_interval = ArgInterval::principal_half();
        b.pi_offset = true;
      } else {
        // The sweep starts at negative detuning with alpha(0) ~ pi.
        b.sqrt_interval = ArgInterval::minus_pi_to_pi();
        b.atan_interval = ArgInterval::zero_to_pi();
        b.pi_offset = false;
      }
      break;
    }
    case ProtocolKind::CoherentPopulationReturn:
      b.sqrt_interval = ArgInterval::minus_pi_to_pi();
      b.atan_interval = ArgInterval::principal_half();
      b.pi_offset = false;
      break;
    case ProtocolKind::Tabulated:
      b.auto_label = true;
      break;
  }
  return b;
}

}  // namespace nhadiab

#include "nhadiab/ctime.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace nhadiab {

namespace {

cplx radicand_at(const ProtocolSchedule& s, const ModelParams& p, cplx t) {
  const auto c = s.eval(t);
  return radicand<cplx>(c.delta, c.omega, p.gamma);
}

cplx radicand_rate(const ControlValues<cplx>& c, double gamma) {
  return -2.0 * (gamma + 2.0 * kI * c.delta) * (2.0 * kI * c.delta_dot) +
         8.0 * c.omega * c.omega_dot;
}

double radicand_scale(const ControlValues<cplx>& c, double gamma) {
  return std::norm(gamma + 2.0 * kI * c.delta) + 4.0 * std::norm(c.omega);
}

double segment_distance(cplx p, cplx a, cplx b) {
  const cplx ab = b - a;
  const double len2 = std::norm(ab);
  if (len2 == 0.0) return std::abs(p - a);
  const double s = std::clamp(((p - a) * std::conj(ab)).real() / len2, 0.0, 1.0);
  return std::abs(p - (a + s * ab));
}

}  // namespace

cplx ComplexRect::node(std::size_t i_re, std::size_t i_im) const {
  const double fr = n_re > 1 ? static_cast<double>(i_re) / static_cast<double>(n_re - 1) : 0.0;
  const double fi = n_im > 1 ? static_cast<double>(i_im) / static_cast<double>(n_im - 1) : 0.0;
  return {re_min + fr * (re_max - re_min), im_min + fi * (im_max - im_min)};
}

bool ComplexRect::contains(cplx t, double slack) const {
  return t.real() >= re_min - slack && t.real() <= re_max + slack && t.imag() >= im_min - slack &&
         t.imag() <= im_max + slack;
}

DegeneracySearch default_search(const ProtocolSchedule& schedule) {
  const double tf = schedule.t_f();
  DegeneracySearch s;
  s.band = ComplexRect{0.0, tf, -0.5 * tf, 0.5 * tf, 161, 161};
  return s;
}

std::vector<cplx> lz_degeneracies(const LandauZenerParams& lz, double gamma) {
  const double centre = 0.5 * lz.t_f;
  return {cplx(centre, (gamma - 2.0 * lz.omega0) / (2.0 * lz.chirp)),
          cplx(centre, (gamma + 2.0 * lz.omega0) / (2.0 * lz.chirp))};
}

std::vector<Degeneracy> find_degeneracies(const ProtocolSchedule& schedule,
                                          const ModelParams& params,
                                          const DegeneracySearch& search) {
  if (!schedule.analytic()) {
    throw std::domain_error("find_degeneracies: schedule has no analytic continuation");
  }
  const ComplexRect& band = search.band;
  const std::size_t nr = band.n_re, ni = band.n_im;
  std::vector<double> field(nr * ni);
  for (std::size_t j = 0; j < ni; ++j) {
    for (std::size_t i = 0; i < nr; ++i) {
      const double mag = std::abs(radicand_at(schedule, params, band.node(i, j)));
      field[j * nr + i] = mag > 0.0 ? std::log(mag) : -std::numeric_limits<double>::infinity();
    }
  }

  const double extent = std::max({band.re_max - band.re_min, band.im_max - band.im_min,
                                  schedule.t_f()});
  std::vector<Degeneracy> found;
  auto refine = [&](cplx t) {
    Degeneracy d;
    for (int it = 0; it < search.max_iterations; ++it) {
      const auto c = schedule.eval(t);
      const cplx z = radicand<cplx>(c.delta, c.omega, params.gamma);
      const cplx dz = radicand_rate(c, params.gamma);
      d.iterations = it + 1;
      if (z == 0.0) {
        d.converged = true;
        break;
      }
      if (dz == 0.0 || !std::isfinite(std::abs(dz))) break;
      const cplx step = z / dz;
      t -= step;
      if (!std::isfinite(t.real()) || !std::isfinite(t.imag())) break;
      if (std::abs(step) <= search.tolerance * extent) {
        d.converged = true;
        break;
      }
    }
    const auto c = schedule.eval(t);
    const cplx z = radicand<cplx>(c.delta, c.omega, params.gamma);
    d.t = t;
    d.residual = std::abs(z) / std::max(radicand_scale(c, params.gamma), 1e-300);
    d.gap = 0.5 * std::sqrt(std::abs(z));
    d.converged = d.converged && d.residual <= 1e-10;
    return d;
  };

  for (std::size_t j = 1; j + 1 < ni; ++j) {
    for (std::size_t i = 1; i + 1 < nr; ++i) {
      const double v = field[j * nr + i];
      bool minimum = true;
      for (int dj = -1; dj <= 1 && minimum; ++dj) {
        for (int di = -1; di <= 1; ++di) {
          if (di == 0 && dj == 0) continue;
          if (field[(j + dj) * nr + (i + di)] < v) {
            minimum = false;
            break;
          }
        }
      }
      if (!minimum) continue;
      Degeneracy d = refine(band.node(i, j));
      const double cell = std::max((band.re_max - band.re_min) / static_cast<double>(nr - 1),
                                   (band.im_max - band.im_min) / static_cast<double>(ni - 1));
      if (!band.contains(d.t, cell)) continue;
      const bool duplicate = std::any_of(found.begin(), found.end(), [&](const Degeneracy& o) {
        return std::abs(o.t - d.t) <= 1e-9 * extent;
      });
      if (!duplicate) found.push_back(d);
    }
  }
  std::sort(found.begin(), found.end(), [](const Degeneracy& a, const Degeneracy& b) {
    return a.t.imag() != b.t.imag() ? a.t.imag() < b.t.imag() : a.t.real() < b.t.real();
  });
  return found;
}

cplx phi_along(const ProtocolSchedule& schedule, const ModelParams& params,
               const std::vector<cplx>& path, std::size_t steps, const BranchDefaults& branches,
               Flag* flags) {
  if (path.empty()) return 0.0;
  if (steps == 0) throw std::invalid_argument("phi_along: steps must be positive");
  BranchTracker tracker(branches.sqrt_interval);
  Flag seen = Flag::None;
  auto omega = [&](cplx t) {
    const auto root = tracked_sqrt(tracker, radicand_at(schedule, params, t));
    seen |= root.flags;
    return 0.5 * root.value;
  };
  cplx integral = 0.0;
  cplx left = omega(path.front());
  for (std::size_t seg = 0; seg + 1 < path.size(); ++seg) {
    const cplx a = path[seg], b = path[seg + 1];
    const cplx h = (b - a) / static_cast<double>(steps);
    for (std::size_t k = 0; k < steps; ++k) {
      const cplx t0 = a + static_cast<double>(k) * h;
      const cplx centre = omega(t0 + 0.5 * h);
      const cplx right = omega(k + 1 == steps ? b : t0 + h);
      integral += h / 6.0 * (left + 4.0 * centre + right);
      left = right;
    }
  }
  if (tracker.coarse_steps() > 0) seen |= Flag::CoarseStep;
  if (tracker.degenerate_samples() > 0) seen |= Flag::Degenerate;
  if (flags) *flags |= seen;
  return kI * integral;
}

ComplexRect default_landscape_rect(const ProtocolSchedule& schedule) {
  const double tf = schedule.t_f();
  return ComplexRect{0.0, tf, -0.06 * tf, 0.06 * tf, 41, 25};
}

ComplexLandscape sample_landscape(const ProtocolSchedule& schedule, const ModelParams& params,
                                  const ComplexRect& rect, const LandscapeConfig& config) {
  params.validate();
  ComplexLandscape out;
  out.schedule = std::make_shared<const ProtocolSchedule>(schedule);
  out.params = params;
  out.branches = config.branches.value_or(default_branches(schedule, params.gamma));
  out.rect = rect;
  out.config = config;
  out.degeneracies = find_degeneracies(schedule, params, default_search(schedule));

  const double tf = schedule.t_f();
  out.nodes.reserve(rect.n_re * rect.n_im);
  for (std::size_t j = 0; j < rect.n_im; ++j) {
    for (std::size_t i = 0; i < rect.n_re; ++i) {
      LandscapeNode node;
      node.t = rect.node(i, j);
      for (const auto& d : out.degeneracies) {
        if (d.converged && segment_distance(d.t, 0.0, node.t) < config.margin * tf) {
          node.valid = false;
          node.flags |= Flag::InvalidNode;
        }
      }
      node.phi = phi_along(schedule, params, {cplx(0.0), node.t}, config.contour_steps,
                           out.branches, &node.flags);
      if (has(node.flags, Flag::CoarseStep)) node.valid = false;
      node.h = -0.5 * alpha_dot(schedule.eval(node.t), params.gamma);
      out.nodes.push_back(node);
    }
  }
  return out;
}

const char* to_string(BoundaryVerdict v) {
  return v == BoundaryVerdict::BoundaryDominated ? "BoundaryDominated" : "InteriorContaminated";
}

BoundaryReport classify_boundary_validity(const ComplexLandscape& land,
                                          const ClassifierConfig& config) {
  const ProtocolSchedule& schedule = *land.schedule;
  const ModelParams& params = land.params;
  const double tf = schedule.t_f();
  BoundaryReport report;

  // Real-axis pass: tracked omega at t_f and |h| samples.
  const std::size_t n = std::max<std::size_t>(config.axis_samples, 2);
  FrameTrackers trackers(land.branches);
  std::vector<double> axis_t(n + 1), axis_h(n + 1);
  EigenFrame last;
  for (std::size_t k = 0; k <= n; ++k) {
    const double t = k == n ? tf : tf * static_cast<double>(k) / static_cast<double>(n);
    last = eigenframe(schedule, params, t, trackers);
    axis_t[k] = t;
    axis_h[k] = 0.5 * std::abs(last.alpha_dot);
  }
  const cplx omega = last.omega(Mode::Plus, Mode::Minus);
  // grad Re Phi = (-Im omega, -Re omega); descent runs against it.
  report.descent = cplx(omega.imag(), omega.real());
  report.descent_degrees =
      std::atan2(std::abs(report.descent.imag()), std::abs(report.descent.real())) * 180.0 / kPi;
  report.off_axis = report.descent_degrees > config.off_axis_degrees;
  report.h_boundary = axis_h.back();

  const double window = config.height_margin * tf;
  bool contaminated = false;
  for (const auto& d : land.degeneracies) {
    if (!d.converged) continue;
    DegeneracyAssessment a;
    a.t = d.t;
    a.close = d.t.real() > 0.0 && d.t.real() < tf && std::abs(d.t.imag()) <= window;
    a.descent_side = report.descent.imag() != 0.0 && d.t.imag() != 0.0 &&
                     std::signbit(report.descent.imag()) == std::signbit(d.t.imag());
    for (std::size_t k = 0; k <= n; ++k) {
      if (std::abs(axis_t[k] - d.t.real()) <= window) a.h_peak = std::max(a.h_peak, axis_h[k]);
    }
    a.disturbance = a.h_peak > config.h_ratio * report.h_boundary;
    if (a.close) {
      const cplx foot(d.t.real(), 0.0);
      const cplx top(d.t.real(), config.approach * d.t.imag());
      const cplx base = phi_along(schedule, params, {cplx(0.0), foot}, config.contour_steps,
                                  land.branches);
      const cplx peak = phi_along(schedule, params, {cplx(0.0), foot, top}, config.contour_steps,
                                  land.branches);
      a.screening = base.real() - peak.real();
    }
    const bool exposed = !report.off_axis || (a.descent_side && a.screening < config.screening);
    a.contaminates = a.close && a.disturbance && exposed;
    contaminated = contaminated || a.contaminates;
    report.degeneracies.push_back(a);
  }

  report.verdict =
      contaminated ? BoundaryVerdict::InteriorContaminated : BoundaryVerdict::BoundaryDominated;
  if (contaminated) {
    report.reason = report.off_axis ? "unscreened degeneracy on the descent side"
                                    : "descent runs along the real axis past a close degeneracy";
  } else if (land.degeneracies.empty()) {
    report.reason = "no degeneracies in the search band";
  } else {
    report.reason = report.off_axis ? "off-axis descent; close degeneracies screened"
                                    : "no close degeneracy disturbs h";
  }
  return report;
}

}  // namespace nhadiab

#include "nhadiab/model.hpp"

#include <algorithm>
#include <cmath>

namespace nhadiab {

namespace {

// Labels agree when sqrt z = 2 (Delta - iG/2) / cos(alpha) = 2 Omega / sin(alpha).
bool labels_match(cplx sqrt_z, cplx alpha, cplx d, double omega) {
  const cplx c = std::cos(alpha), s = std::sin(alpha);
  const double same = std::abs(sqrt_z * c - 2.0 * d) + std::abs(sqrt_z * s - 2.0 * omega);
  const double flipped = std::abs(sqrt_z * c + 2.0 * d) + std::abs(sqrt_z * s + 2.0 * omega);
  return same <= flipped;
}

}  // namespace

Vec2 EigenFrame::ket_dot(Mode m) const {
  // d/dt |+> = (a'/2)|->, d/dt |-> = -(a'/2)|+>.
  return m == Mode::Plus ? Vec2(0.5 * alpha_dot * ket_minus) : Vec2(-0.5 * alpha_dot * ket_plus);
}

cplx EigenFrame::coupling(Mode n, Mode m) const { return hat(n).dot(ket_dot(m)); }

FrameTrackers::FrameTrackers(const BranchDefaults& branches, double degeneracy_eps)
    : sqrt(branches.sqrt_interval, degeneracy_eps),
      atan(ArctanConfig{branches.atan_interval, branches.pi_offset, degeneracy_eps}),
      auto_label(branches.auto_label) {}

Mat2 hamiltonian(double delta, double omega, double gamma) {
  Mat2 h;
  h << cplx(-0.5 * delta), cplx(0.5 * omega), cplx(0.5 * omega), cplx(0.5 * delta, -0.5 * gamma);
  return h;
}

Mat2 hamiltonian(const ProtocolSchedule& schedule, const ModelParams& params, double t) {
  const auto c = schedule.eval(t);
  return hamiltonian(c.delta, c.omega, params.gamma);
}

cplx alpha_dot(const ProtocolSchedule& schedule, const ModelParams& params, double t, Flag* flags) {
  const auto c = schedule.eval(t);
  const cplx d = cplx(c.delta, -0.5 * params.gamma);
  const cplx denom = d * d + c.omega * c.omega;
  const double scale = std::norm(d) + c.omega * c.omega;
  if (flags && std::abs(denom) <= 1e-14 * scale) *flags |= Flag::Degenerate;
  return alpha_dot(c, params.gamma);
}

EigenFrame eigenframe(const ControlValues<double>& c, double gamma, double t,
                      FrameTrackers& trackers) {
  EigenFrame f;
  f.t = t;
  const cplx d(c.delta, -0.5 * gamma);
  f.z = radicand<cplx>(c.delta, c.omega, gamma);
  f.x = cplx(c.omega) / d;

  const bool first = !trackers.atan.initialized();
  const auto root = tracked_sqrt(trackers.sqrt, f.z);
  auto angle = tracked_arctan_ratio(trackers.atan, c.omega, d);
  f.flags = root.flags | angle.flags;
  f.sqrt_z = root.value;

  if (!labels_match(root.value, angle.value, d, c.omega)) {
    if (first && trackers.auto_label) {
      trackers.atan.shift_alpha(1);
      angle.value += kPi;
    } else if (!has(root.flags, Flag::Degenerate)) {
      f.flags |= Flag::LabelMismatch;
    }
  }
  f.alpha = angle.value;

  f.e_plus = 0.25 * (-kI * gamma + root.value);
  f.e_minus = 0.25 * (-kI * gamma - root.value);

  const cplx half = 0.5 * f.alpha;
  const cplx s = std::sin(half), co = std::cos(half);
  f.ket_plus << s, co;
  f.ket_minus << co, -s;
  f.hat_plus = f.ket_plus.conjugate();
  f.hat_minus = f.ket_minus.conjugate();

  const cplx denom = d * d + c.omega * c.omega;
  if (std::abs(denom) <= 1e-14 * (std::norm(d) + c.omega * c.omega)) f.flags |= Flag::Degenerate;
  f.alpha_dot = alpha_dot(c, gamma);
  f.z_dot = -2.0 * (gamma + 2.0 * kI * c.delta) * (2.0 * kI * c.delta_dot) +
            8.0 * c.omega * c.omega_dot;
  return f;
}

EigenFrame eigenframe(const ProtocolSchedule& schedule, const ModelParams& params, double t,
                      FrameTrackers& trackers) {
  return eigenframe(schedule.eval(t), params.gamma, t, trackers);
}

EigenFrame apply_gauge(EigenFrame frame, const PerMode<cplx>& f) {
  if (std::abs(f[0]) == 0.0 || std::abs(f[1]) == 0.0) {
    throw std::invalid_argument("apply_gauge: gauge factors must be non-zero");
  }
  frame.ket_plus *= f[index(Mode::Plus)];
  frame.ket_minus *= f[index(Mode::Minus)];
  frame.hat_plus /= std::conj(f[index(Mode::Plus)]);
  frame.hat_minus /= std::conj(f[index(Mode::Minus)]);
  return frame;
}

double eigen_residual(const EigenFrame& f, const Mat2& h) {
  const double scale = std::max(h.norm(), 1e-300);
  double worst = 0.0;
  for (Mode m : {Mode::Plus, Mode::Minus}) {
    const Vec2 r = h * f.ket(m) - f.energy(m) * f.ket(m);
    worst = std::max(worst, r.norm() / (scale * f.ket(m).norm()));
  }
  return worst;
}

double biorthogonality_residual(const EigenFrame& f) {
  double worst = 0.0;
  for (Mode n : {Mode::Plus, Mode::Minus}) {
    for (Mode m : {Mode::Plus, Mode::Minus}) {
      const cplx expected = n == m ? cplx(1.0) : cplx(0.0);
      worst = std::max(worst, std::abs(f.hat(n).dot(f.ket(m)) - expected));
    }
  }
  return worst;
}

double closure_residual(const EigenFrame& f) {
  const Mat2 sum = f.ket_plus * f.hat_plus.adjoint() + f.ket_minus * f.hat_minus.adjoint();
  const Mat2 dual = f.hat_plus * f.ket_plus.adjoint() + f.hat_minus * f.ket_minus.adjoint();
  return std::max((sum - Mat2::Identity()).norm(), (dual - Mat2::Identity()).norm());
}

double orthonormality_residual(const EigenFrame& f) {
  return std::max({std::abs(f.ket_plus.squaredNorm() - 1.0), std::abs(f.ket_minus.squaredNorm() - 1.0),
                   std::abs(f.ket_plus.dot(f.ket_minus))});
}

}  // namespace nhadiab

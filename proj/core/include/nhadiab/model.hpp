#pragma once

// Decaying two-level atom in the bare basis |g> = (1, 0), |e> = (0, 1).
// Units: hbar = 1, energies are angular frequencies in rad/s.

#include <cmath>
#include <stdexcept>

#include "nhadiab/cxbranch.hpp"
#include "nhadiab/protocols.hpp"
#include "nhadiab/types.hpp"

namespace nhadiab {

struct ModelParams {
  double gamma = 0.0;  // decay rate of |e>, rad/s

  void validate() const {
    if (!(gamma >= 0.0) || !std::isfinite(gamma)) {
      throw std::invalid_argument("ModelParams: gamma must be finite and >= 0");
    }
  }
};

/// Instantaneous biorthogonal eigensystem at one time.
///
/// Right eigenvectors are parameterized by the complex mixing angle alpha:
/// ket_plus = (sin a/2, cos a/2), ket_minus = (cos a/2, -sin a/2). The left
/// partners |n^> carry the conjugated angle, so <n^|m> is the unconjugated
/// bilinear product of the ket components and equals delta_nm exactly.
struct EigenFrame {
  double t = 0.0;
  cplx e_plus{}, e_minus{};
  cplx alpha{}, alpha_dot{};
  Vec2 ket_plus = Vec2::Zero(), ket_minus = Vec2::Zero();
  Vec2 hat_plus = Vec2::Zero(), hat_minus = Vec2::Zero();
  cplx z{};  // radicand -(Gamma + 2 i Delta)^2 + 4 Omega^2
  cplx x{};  // Omega / (Delta - i Gamma / 2)
  cplx sqrt_z{};
  cplx z_dot{};
  Flag flags = Flag::None;

  const Vec2& ket(Mode m) const { return m == Mode::Plus ? ket_plus : ket_minus; }
  const Vec2& hat(Mode m) const { return m == Mode::Plus ? hat_plus : hat_minus; }
  cplx energy(Mode m) const { return m == Mode::Plus ? e_plus : e_minus; }
  /// omega_nm = E_n - E_m.
  cplx omega(Mode n, Mode m) const { return energy(n) - energy(m); }
  /// Time derivative of |m>, from alpha_dot.
  Vec2 ket_dot(Mode m) const;
  /// <n^|d/dt m>; zero for n == m (parallel transport).
  cplx coupling(Mode n, Mode m) const;
};

/// Caller-owned branch state for one trajectory.
struct FrameTrackers {
  BranchTracker sqrt;
  ArctanTracker atan;
  bool auto_label = false;

  explicit FrameTrackers(const BranchDefaults& branches = {}, double degeneracy_eps = 1e-14);
};

Mat2 hamiltonian(double delta, double omega, double gamma);
Mat2 hamiltonian(const ProtocolSchedule& schedule, const ModelParams& params, double t);

template <class T>
T radicand(T delta, T omega, double gamma) {
  const T s = gamma + 2.0 * kI * delta;
  return -s * s + 4.0 * omega * omega;
}

/// d alpha / dt = [Omega' (Delta - i G/2) - Omega Delta'] / [(Delta - i G/2)^2 + Omega^2].
template <class T>
cplx alpha_dot(const ControlValues<T>& c, double gamma) {
  const cplx d = cplx(c.delta) - 0.5 * kI * gamma;
  return (cplx(c.omega_dot) * d - cplx(c.omega) * cplx(c.delta_dot)) /
         (d * d + cplx(c.omega) * cplx(c.omega));
}

/// Closed-form alpha_dot; sets Flag::Degenerate when the denominator vanishes.
cplx alpha_dot(const ProtocolSchedule& schedule, const ModelParams& params, double t,
               Flag* flags = nullptr);

EigenFrame eigenframe(const ControlValues<double>& controls, double gamma, double t,
                      FrameTrackers& trackers);
EigenFrame eigenframe(const ProtocolSchedule& schedule, const ModelParams& params, double t,
                      FrameTrackers& trackers);

/// Frame with modes rescaled, |phi_n> = f_n |n>, |phi_n^> = |n^> / conj(f_n).
EigenFrame apply_gauge(EigenFrame frame, const PerMode<cplx>& f);

// Residuals used by tests and the verify command.
double eigen_residual(const EigenFrame& frame, const Mat2& h);
double biorthogonality_residual(const EigenFrame& frame);
double closure_residual(const EigenFrame& frame);
/// max_n |<n|n> - 1| + |<n|m>| for n != m; zero for an orthonormal frame.
double orthonormality_residual(const EigenFrame& frame);

}  // namespace nhadiab

#pragma once

// Schroedinger propagation and the coefficient families c_n, d_n, g_n.

#include <cstddef>
#include <optional>
#include <vector>

#include "nhadiab/model.hpp"

namespace nhadiab {

using StateVec = Vec2;

/// Uniform grid t_k = k t_f / steps, k = 0..steps.
struct TimeGrid {
  double t_f = 0.0;
  std::size_t steps = 20000;

  double step() const { return t_f / static_cast<double>(steps); }
  double at(std::size_t k) const { return k == steps ? t_f : static_cast<double>(k) * step(); }
  std::size_t size() const { return steps + 1; }
};

struct IntegratorSettings {
  std::size_t steps = 20000;
  double degeneracy_eps = 1e-14;
  /// Replaces the regime defaults from default_branches().
  std::optional<BranchDefaults> branches;
};

/// Running integrals along the trajectory, all from 0 to t.
struct PhaseIntegrals {
  PerMode<cplx> energy{};     // int E_n
  PerMode<cplx> transport{};  // int <n^|d/dt n>
  cplx w_pm{};                // W_{+-} = int (E_+ - E_-)

  /// W_nm; W_nn = 0.
  cplx w(Mode n, Mode m) const {
    if (n == m) return 0.0;
    return n == Mode::Plus ? w_pm : -w_pm;
  }
  /// beta_n = -int E_n + i int <n^|d/dt n>.
  cplx beta(Mode n) const { return -energy[index(n)] + kI * transport[index(n)]; }
};

struct TrajectorySample {
  double t = 0.0;
  StateVec psi = StateVec::Zero();
  EigenFrame frame;
  PhaseIntegrals phases;
  PerMode<cplx> beta{}, c{}, d{}, g{};
  /// d_n evaluated independently as g_n exp(-i int E_n).
  PerMode<cplx> d_from_g{};
  double norm2 = 0.0;
};

/// Frame and phase integrals at the midpoint of each step.
struct MidSample {
  EigenFrame frame;
  PhaseIntegrals phases;
};

struct Trajectory {
  ModelParams params;
  BranchDefaults branches;
  TimeGrid grid;
  std::vector<TrajectorySample> samples;  // size steps + 1
  std::vector<MidSample> mid;             // size steps
  Flag flags = Flag::None;
  std::size_t coarse_steps = 0;
  std::size_t degenerate_samples = 0;
  /// max_t |int <n^|d/dt n>| over both modes, asserted small.
  double max_transport = 0.0;
  /// orthonormality_residual of the t = 0 frame.
  double initial_orthonormality = 0.0;

  std::size_t size() const { return samples.size(); }
  std::vector<double> times() const;
};

/// RK4 with frames evaluated at the step midpoints; throws NumericalError on a
/// non-finite state.
Trajectory propagate(const ProtocolSchedule& schedule, const ModelParams& params,
                     const StateVec& psi0, const IntegratorSettings& settings = {});

/// Psi(t) = sum_n g_n(0) e^{i beta_n(t)} |n(t)>, sampled on the propagation grid.
Trajectory forced_adiabatic(const ProtocolSchedule& schedule, const ModelParams& params,
                            const PerMode<cplx>& g0, const IntegratorSettings& settings = {});

/// beta_n at every sample.
std::vector<cplx> beta_phase(const Trajectory& trajectory, Mode n);

struct CoefficientSeries {
  PerMode<std::vector<cplx>> c, d, g;
};

CoefficientSeries extract_coefficients(const Trajectory& trajectory);

/// Constant rescaling of the parallel-transported basis.
struct BasisGauge {
  cplx f_plus{1.0};
  cplx f_minus{1.0};

  PerMode<cplx> factors() const { return {f_plus, f_minus}; }
  void validate() const;
};

/// g~_n = g_n / f_n(0), d~_n = d_n / f_n(0), c~_n = c_n / f_n(0).
CoefficientSeries gauge_transform(const Trajectory& trajectory, const BasisGauge& gauge);

/// Coefficients re-extracted from gauge-rescaled frames, <phi^_n|Psi> e^{-i beta_n}.
CoefficientSeries extract_coefficients_in_gauge(const Trajectory& trajectory,
                                                const BasisGauge& gauge);

/// max_k || Psi - sum_n g_n e^{i beta_n} |n> || / ||Psi||.
double reconstruction_residual(const Trajectory& trajectory);

/// Initial state for a named mode of the t = 0 frame.
StateVec initial_mode_state(const ProtocolSchedule& schedule, const ModelParams& params, Mode m,
                            const IntegratorSettings& settings = {});

}  // namespace nhadiab

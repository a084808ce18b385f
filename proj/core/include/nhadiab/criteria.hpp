#pragma once

// Amplitude equations, first-order amplitudes, |uv|-type criteria and the
// integration-by-parts boundary series.

#include <vector>

#include "nhadiab/dynamics.hpp"

namespace nhadiab {

/// d g_n / dt = -sum_{k != n} e^{i W_nk} <n^|d/dt k> g_k.
PerMode<cplx> amplitude_ode_rhs(const EigenFrame& frame, cplx w_pm, const PerMode<cplx>& g);

/// Solves the amplitude ODE by RK4 on the trajectory grid, with W_{+-} carried
/// in the state. Starts from the trajectory's g_n(0) unless `g0` is given.
PerMode<std::vector<cplx>> integrate_amplitude_ode(const Trajectory& trajectory);
PerMode<std::vector<cplx>> integrate_amplitude_ode(const Trajectory& trajectory,
                                                    const PerMode<cplx>& g0);

/// g1_n(t) = -int_0^t <n^|d/dt m> e^{i W_nm} dt', n != m.
std::vector<cplx> first_order_amplitude(const Trajectory& trajectory, Mode m, Mode n);

enum class Partition { UV, UV_RE, UV_IM };

const char* to_string(Partition p);

struct CriterionValues {
  std::vector<double> value;  // |(uv)_n| for the chosen partition
  std::vector<Flag> flags;    // Flag::BlowUp where the denominator is below threshold
  double threshold = 0.0;     // 1e-6 max_t |omega_nm|
};

CriterionValues uv_criterion(const Trajectory& trajectory, Partition partition, Mode m, Mode n);

/// u and dv/dt of one partition at one sample.
struct PartitionPieces {
  cplx u{};
  cplx dv{};
};

/// A = <n^|d/dt m>, omega = omega_nm, w = W_nm at a single time.
PartitionPieces partition_pieces(Partition partition, cplx coupling, cplx omega, cplx w);

/// Coupling A = <n^|d/dt m> and omega_nm with their first two time derivatives.
struct LocalDerivatives {
  cplx a{}, a_dot{}, a_ddot{};
  cplx omega{}, omega_dot{}, omega_ddot{};
};

/// u, u_1, u_2 of the repeated integration by parts.
struct IbpTerms {
  cplx u{}, u1{}, u2{};
};

IbpTerms ibp_terms(const LocalDerivatives& d);

/// A, omega and derivatives along the grid: A_dot, A_ddot from finite
/// differences of alpha_dot on the half-step grid, omega_dot analytic,
/// omega_ddot by finite differences.
std::vector<LocalDerivatives> local_derivatives(const Trajectory& trajectory, Mode m, Mode n);

struct BoundarySeries {
  int order = 1;
  std::vector<cplx> at_t;  // bracket evaluated at the upper limit
  cplx at_zero{};          // bracket evaluated at 0 (subtracted)
  std::vector<cplx> total; // at_t - at_zero
  std::vector<Flag> flags;
};

/// Order 1: -[u e^{iW}]; order 2 adds +[u1 e^{iW}]; order 3 adds -[u2 e^{iW}].
BoundarySeries boundary_series(const Trajectory& trajectory, Mode m, Mode n, int order);

/// Everything the criteria CSV carries for one (m -> n) pair.
struct CriterionSeries {
  Mode m = Mode::Minus, n = Mode::Plus;
  std::vector<cplx> g1;
  CriterionValues uv, uv_re, uv_im;
  BoundarySeries series1, series2, series3;
};

CriterionSeries criterion_series(const Trajectory& trajectory, Mode m, Mode n);

}  // namespace nhadiab

#pragma once

// Control schedules Delta(t), Omega_R(t) with analytic time derivatives.

#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "nhadiab/cxbranch.hpp"
#include "nhadiab/types.hpp"

namespace nhadiab {

enum class ProtocolKind { LandauZener, CoherentPopulationReturn, Tabulated };

std::string to_string(ProtocolKind kind);

/// Linear chirp Delta = b (t - t_f/2), constant Rabi frequency.
struct LandauZenerParams {
  double chirp = 0.0;   // b, s^-2
  double omega0 = 0.0;  // rad/s
  double t_f = 0.0;     // s
};

/// Constant detuning, Gaussian Rabi pulse centred at t_f/2.
struct CprParams {
  double delta0 = 0.0;     // rad/s
  double omega_max = 0.0;  // rad/s
  double a = 0.0;          // s^-2
  double t_f = 0.0;        // s
};

/// Uniformly sampled (t, Delta, Omega_R) table.
struct TabulatedParams {
  std::vector<double> t;
  std::vector<double> delta;
  std::vector<double> omega;
};

/// Values of the control fields and their first time derivatives at one time.
template <class T>
struct ControlValues {
  T delta{};
  T omega{};
  T delta_dot{};
  T omega_dot{};
};

class ProtocolSchedule {
 public:
  static ProtocolSchedule landau_zener(double chirp, double omega0, double t_f);
  static ProtocolSchedule cpr(double delta0, double omega_max, double a, double t_f);
  /// Cubic interpolation of uniformly spaced samples; end slopes come from
  /// one-sided derivative estimates of the data.
  static ProtocolSchedule tabulated(std::vector<double> t, std::vector<double> delta,
                                    std::vector<double> omega);

  ProtocolKind kind() const;
  double t_f() const { return t_f_; }

  double delta(double t) const { return eval(t).delta; }
  double omega_r(double t) const { return eval(t).omega; }
  double delta_dot(double t) const { return eval(t).delta_dot; }
  double omega_r_dot(double t) const { return eval(t).omega_dot; }

  /// All four control values; throws std::out_of_range outside [0, t_f].
  ControlValues<double> eval(double t) const;

  /// Analytic continuation to complex time (LZ and CPR only).
  ControlValues<cplx> eval(cplx t) const;
  bool analytic() const { return kind() != ProtocolKind::Tabulated; }

  const LandauZenerParams* as_lz() const { return std::get_if<LandauZenerParams>(&params_); }
  const CprParams* as_cpr() const { return std::get_if<CprParams>(&params_); }
  const TabulatedParams* as_tabulated() const;

 private:
  struct Spline;
  struct TabulatedState {
    TabulatedParams data;
    std::shared_ptr<const Spline> delta_spline;
    std::shared_ptr<const Spline> omega_spline;
  };

  ProtocolSchedule() = default;

  std::variant<LandauZenerParams, CprParams, TabulatedState> params_;
  double t_f_ = 0.0;
};

/// Landau-Zener regimes separated by Gamma = 2 Omega_0.
enum class LzRegime { BelowThreshold, AboveThreshold, Degenerate };

std::string to_string(LzRegime regime);

LzRegime classify_lz(double gamma, double omega0, double rel_tol = 1e-12);

/// Branch conventions for one trajectory: anchors for sqrt(z) and arctan(x)
/// plus the pi offset that matches eigenvector and eigenvalue labels.
struct BranchDefaults {
  ArgInterval sqrt_interval = ArgInterval::minus_pi_to_pi();
  ArgInterval atan_interval = ArgInterval::principal_half();
  bool pi_offset = false;
  /// Flip alpha by pi on the first sample if labels would otherwise mismatch.
  bool auto_label = false;

  friend bool operator==(const BranchDefaults&, const BranchDefaults&) = default;
};

BranchDefaults default_branches(const ProtocolSchedule& schedule, double gamma);

}  // namespace nhadiab

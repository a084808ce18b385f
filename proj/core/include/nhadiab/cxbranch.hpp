#pragma once

// Branch-continuous square root and arctangent along sampled trajectories.
//
// The multivalued functions are continued by unwrapping the argument of their
// input against the previous sample. A configured interval fixes only the
// first sample; afterwards the branch follows the trajectory wherever it goes.

#include "nhadiab/types.hpp"

namespace nhadiab {

/// Interval of length `width` used to anchor an argument on the first sample,
/// either (lower, lower + width] or [lower, lower + width).
struct ArgInterval {
  double lower = -kPi;
  double width = kTwoPi;
  bool closed_at_lower = false;

  /// (-pi, pi]: cut just below the negative real axis.
  static ArgInterval minus_pi_to_pi() { return {-kPi, kTwoPi, false}; }
  /// [0, 2pi): cut just below the positive real axis.
  static ArgInterval zero_to_two_pi() { return {0.0, kTwoPi, true}; }
  /// (-pi/2, pi/2]: principal real part of arctan.
  static ArgInterval principal_half() { return {-kPi / 2, kPi, false}; }
  /// (0, pi]: arctan real part for sweeps that start from alpha ~ pi.
  static ArgInterval zero_to_pi() { return {0.0, kPi, false}; }

  bool contains(double value) const;
  /// Integer k such that value + k * width lies inside the interval.
  long shift_into(double value) const;

  friend bool operator==(const ArgInterval&, const ArgInterval&) = default;
};

/// A function value together with the diagnostics raised while computing it.
template <class T>
struct Tracked {
  T value{};
  Flag flags = Flag::None;
};

/// Accumulated-winding state for the argument of one complex input sequence.
class BranchTracker {
 public:
  explicit BranchTracker(ArgInterval anchor = ArgInterval::minus_pi_to_pi(),
                         double degeneracy_eps = 1e-14, double scale = 0.0);

  /// Continuous argument of `w`, anchored into the interval on first use.
  double track_arg(cplx w, Flag& flags);

  /// Moves the current branch by `k` full turns (used to re-anchor).
  void shift_turns(long k);

  bool initialized() const { return initialized_; }
  double prev_arg() const { return prev_arg_; }
  cplx prev_value() const { return prev_value_; }
  long winding() const { return winding_; }
  double scale() const { return scale_; }
  const ArgInterval& anchor() const { return anchor_; }
  std::size_t coarse_steps() const { return coarse_steps_; }
  std::size_t degenerate_samples() const { return degenerate_samples_; }

  void set_prev_value(cplx v) { prev_value_ = v; }
  void reset();

 private:
  ArgInterval anchor_;
  double eps_;
  double caller_scale_;
  double scale_;
  cplx prev_value_{};
  double prev_arg_ = 0.0;
  long winding_ = 0;
  bool initialized_ = false;
  std::size_t coarse_steps_ = 0;
  std::size_t degenerate_samples_ = 0;
};

/// w with w^2 = z and arg(w) continuous with the tracker history.
Tracked<cplx> tracked_sqrt(BranchTracker& tracker, cplx z);

struct ArctanConfig {
  ArgInterval real_interval = ArgInterval::principal_half();
  bool pi_offset = false;
  double singular_eps = 1e-14;

  friend bool operator==(const ArctanConfig&, const ArctanConfig&) = default;
};

/// arctan(x) = i [ln(1 - i x) - ln(1 + i x)] / 2 with both logarithms tracked.
class ArctanTracker {
 public:
  explicit ArctanTracker(ArctanConfig config = {});

  const ArctanConfig& config() const { return config_; }
  bool initialized() const { return minus_log_.initialized(); }
  const BranchTracker& minus_log() const { return minus_log_; }
  const BranchTracker& plus_log() const { return plus_log_; }

  /// Moves alpha by k * pi on the current branch.
  void shift_alpha(long k) { plus_log_.shift_turns(k); }

  // Evaluates with the two log arguments given directly; see tracked_arctan_ratio.
  Tracked<cplx> evaluate(cplx minus_arg, cplx plus_arg, double scale);

 private:
  ArctanConfig config_;
  BranchTracker minus_log_;
  BranchTracker plus_log_;
};

Tracked<cplx> tracked_arctan(ArctanTracker& tracker, cplx x);

/// arctan(numerator / denominator) without forming the quotient, so a zero
/// denominator is harmless. The logs are taken of (den -+ i num).
Tracked<cplx> tracked_arctan_ratio(ArctanTracker& tracker, cplx numerator, cplx denominator);

}  // namespace nhadiab

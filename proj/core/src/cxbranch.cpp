#include "nhadiab/cxbranch.hpp"

#include <algorithm>
#include <cmath>

namespace nhadiab {

bool ArgInterval::contains(double value) const {
  const double upper = lower + width;
  if (closed_at_lower) return value >= lower && value < upper;
  return value > lower && value <= upper;
}

long ArgInterval::shift_into(double value) const {
  long k = static_cast<long>(std::floor((lower - value) / width)) + 1;
  // floor() lands within one turn; settle boundary cases explicitly.
  for (int guard = 0; guard < 4 && !contains(value + k * width); ++guard) {
    k += (value + k * width <= lower) ? 1 : -1;
  }
  return k;
}

BranchTracker::BranchTracker(ArgInterval anchor, double degeneracy_eps, double scale)
    : anchor_(anchor), eps_(degeneracy_eps), caller_scale_(scale), scale_(scale) {}

void BranchTracker::reset() {
  scale_ = caller_scale_;
  prev_value_ = {};
  prev_arg_ = 0.0;
  winding_ = 0;
  initialized_ = false;
  coarse_steps_ = 0;
  degenerate_samples_ = 0;
}

void BranchTracker::shift_turns(long k) {
  prev_arg_ += kTwoPi * static_cast<double>(k);
  winding_ += k;
}

double BranchTracker::track_arg(cplx w, Flag& flags) {
  const double modulus = std::abs(w);
  scale_ = std::max(scale_, modulus);
  if (modulus <= eps_ * scale_) {
    flags |= Flag::Degenerate;
    ++degenerate_samples_;
    if (modulus == 0.0) {
      if (!initialized_) {
        prev_arg_ = 0.0 + kTwoPi * static_cast<double>(anchor_.shift_into(0.0));
        initialized_ = true;
      }
      return prev_arg_;
    }
  }
  const double principal = std::arg(w);
  if (!initialized_) {
    const long k = anchor_.shift_into(principal);
    prev_arg_ = principal + kTwoPi * static_cast<double>(k);
    winding_ = 0;
    initialized_ = true;
    return prev_arg_;
  }
  const double step = std::remainder(principal - prev_arg_, kTwoPi);
  if (std::abs(step) > kPi / 2) {
    flags |= Flag::CoarseStep;
    ++coarse_steps_;
  }
  const double next = prev_arg_ + step;
  const double cut = anchor_.lower;
  // Count crossings of the anchoring cut (one turn per crossing).
  winding_ += static_cast<long>(std::floor((next - cut) / kTwoPi)) -
              static_cast<long>(std::floor((prev_arg_ - cut) / kTwoPi));
  prev_arg_ = next;
  return prev_arg_;
}

Tracked<cplx> tracked_sqrt(BranchTracker& tracker, cplx z) {
  Tracked<cplx> out;
  const double arg = tracker.track_arg(z, out.flags);
  out.value = std::polar(std::sqrt(std::abs(z)), 0.5 * arg);
  tracker.set_prev_value(out.value);
  return out;
}

ArctanTracker::ArctanTracker(ArctanConfig config)
    : config_(config),
      minus_log_(ArgInterval::minus_pi_to_pi(), config.singular_eps),
      plus_log_(ArgInterval::minus_pi_to_pi(), config.singular_eps) {}

Tracked<cplx> ArctanTracker::evaluate(cplx minus_arg, cplx plus_arg, double scale) {
  Tracked<cplx> out;
  const bool first = !minus_log_.initialized();
  const double theta_minus = minus_log_.track_arg(minus_arg, out.flags);
  double theta_plus = plus_log_.track_arg(plus_arg, out.flags);
  if (has(out.flags, Flag::Degenerate)) {
    // A vanishing log argument is the x = +-i singularity, not a radicand zero.
    out.flags = (out.flags & Flag::CoarseStep) | Flag::Singular;
  }
  const double tiny = config_.singular_eps * std::max(scale, 1e-300);
  if (std::abs(minus_arg) <= tiny || std::abs(plus_arg) <= tiny) out.flags |= Flag::Singular;

  if (first) {
    // One turn of the plus-log moves Re(alpha) by pi.
    const double re_alpha = 0.5 * (theta_plus - theta_minus);
    const long k = config_.real_interval.shift_into(re_alpha);
    plus_log_.shift_turns(k);
    theta_plus = plus_log_.prev_arg();
  }
  const double log_ratio = std::log(std::abs(minus_arg)) - std::log(std::abs(plus_arg));
  cplx alpha{0.5 * (theta_plus - theta_minus), 0.5 * log_ratio};
  if (config_.pi_offset) alpha += kPi;
  out.value = alpha;
  return out;
}

Tracked<cplx> tracked_arctan(ArctanTracker& tracker, cplx x) {
  return tracker.evaluate(1.0 - kI * x, 1.0 + kI * x, 1.0 + std::abs(x));
}

Tracked<cplx> tracked_arctan_ratio(ArctanTracker& tracker, cplx numerator, cplx denominator) {
  return tracker.evaluate(denominator - kI * numerator, denominator + kI * numerator,
                          std::abs(denominator) + std::abs(numerator));
}

}  // namespace nhadiab

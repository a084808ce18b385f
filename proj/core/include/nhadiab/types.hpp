#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>

#include <Eigen/Core>

namespace nhadiab {

using cplx = std::complex<double>;
using Vec2 = Eigen::Vector2cd;
using Mat2 = Eigen::Matrix2cd;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;
inline constexpr cplx kI{0.0, 1.0};

/// Instantaneous eigenmode label. `Plus` owns E_+ = (-i Gamma + sqrt z)/4.
enum class Mode : std::uint8_t { Plus = 0, Minus = 1 };

constexpr std::size_t index(Mode m) { return static_cast<std::size_t>(m); }
constexpr Mode other(Mode m) { return m == Mode::Plus ? Mode::Minus : Mode::Plus; }
constexpr double mode_sign(Mode m) { return m == Mode::Plus ? 1.0 : -1.0; }
inline const char* mode_name(Mode m) { return m == Mode::Plus ? "plus" : "minus"; }

/// Per-mode pair indexed by `index(Mode)`.
template <class T>
using PerMode = std::array<T, 2>;

/// Diagnostic bits attached to individual samples.
enum class Flag : std::uint32_t {
  None = 0,
  Degenerate = 1u << 0,     // sqrt radicand (or arctan log argument) near zero
  CoarseStep = 1u << 1,     // tracked argument moved by more than pi/2 in one step
  Singular = 1u << 2,       // arctan log singularity, x = +-i
  LabelMismatch = 1u << 3,  // sqrt branch and mixing angle disagree on the +- labels
  BlowUp = 1u << 4,         // criterion denominator below threshold
  NonFinite = 1u << 5,
  InvalidNode = 1u << 6,    // complex-time contour too close to a degeneracy
};

constexpr Flag operator|(Flag a, Flag b) {
  return static_cast<Flag>(static_cast<std::uint32_t>(a) | static_cast<std::uint32_t>(b));
}
constexpr Flag operator&(Flag a, Flag b) {
  return static_cast<Flag>(static_cast<std::uint32_t>(a) & static_cast<std::uint32_t>(b));
}
constexpr Flag& operator|=(Flag& a, Flag b) { return a = a | b; }
constexpr bool any(Flag f) { return f != Flag::None; }
constexpr bool has(Flag set, Flag bit) { return any(set & bit); }
constexpr std::uint32_t bits(Flag f) { return static_cast<std::uint32_t>(f); }

/// Raised when a propagated quantity stops being finite.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace nhadiab

#pragma once

// Declarative scenario files (YAML) and their in-memory form.
//
// Physical values are stored in SI units (rad/s, s, s^-2). In the file,
// frequencies are read in `units.frequency` (rad/s, Hz, kHz, MHz) and times in
// `units.time` (s, ms, us); any number may carry a `2pi*` prefix.

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "nhadiab/ctime.hpp"
#include "nhadiab/dynamics.hpp"

namespace nhadiab {

/// Invalid scenario; `path` names the offending field, e.g. "protocol.t_f".
class ScenarioError : public std::runtime_error {
 public:
  ScenarioError(std::string path, const std::string& message)
      : std::runtime_error(path + ": " + message), path_(std::move(path)) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

enum class InitialKind { Ground, Excited, PlusMode, MinusMode, Custom };

struct InitialState {
  InitialKind kind = InitialKind::Ground;
  StateVec custom = StateVec(1.0, 0.0);

  friend bool operator==(const InitialState& a, const InitialState& b) {
    return a.kind == b.kind && (a.kind != InitialKind::Custom || a.custom == b.custom);
  }
};

enum class Product { Trajectory, Populations, Criteria, Landscape };

const char* to_string(Product p);
const char* to_string(InitialKind k);

struct ProtocolSpec {
  ProtocolKind kind = ProtocolKind::CoherentPopulationReturn;
  double t_f = 0.0;
  // LZ
  double chirp = 0.0;
  double omega0 = 0.0;
  // CPR
  double delta0 = 0.0;
  double omega_max = 0.0;
  double a = 0.0;
  // Tabulated, SI units
  std::vector<double> table_t, table_delta, table_omega;

  ProtocolSchedule build() const;
  friend bool operator==(const ProtocolSpec&, const ProtocolSpec&) = default;
};

struct BranchOverrides {
  std::optional<ArgInterval> sqrt_interval;
  std::optional<ArgInterval> atan_interval;
  std::optional<bool> pi_offset;
  std::optional<bool> auto_label;

  bool empty() const { return !sqrt_interval && !atan_interval && !pi_offset && !auto_label; }
  BranchDefaults apply(BranchDefaults base) const;
  friend bool operator==(const BranchOverrides&, const BranchOverrides&) = default;
};

struct LandscapeSpec {
  ComplexRect rect;
  std::size_t contour_steps = 2000;

  friend bool operator==(const LandscapeSpec& a, const LandscapeSpec& b) {
    return a.rect.re_min == b.rect.re_min && a.rect.re_max == b.rect.re_max &&
           a.rect.im_min == b.rect.im_min && a.rect.im_max == b.rect.im_max &&
           a.rect.n_re == b.rect.n_re && a.rect.n_im == b.rect.n_im &&
           a.contour_steps == b.contour_steps;
  }
};

struct Scenario {
  std::string name;
  std::string caption;
  double gamma = 0.0;
  ProtocolSpec protocol;
  InitialState initial;
  std::size_t steps = 20000;
  /// CSV rows are written for every k-th sample (the last sample always).
  std::size_t output_every = 1;
  std::vector<Product> outputs{Product::Trajectory, Product::Populations, Product::Criteria};
  BranchOverrides branches;
  std::optional<LandscapeSpec> landscape;

  bool wants(Product p) const;
  ModelParams model() const { return ModelParams{gamma}; }
  IntegratorSettings integrator() const;
  /// Initial state vector in the bare basis.
  StateVec psi0(const ProtocolSchedule& schedule) const;

  friend bool operator==(const Scenario&, const Scenario&) = default;
};

/// Parses YAML text; throws ScenarioError.
Scenario parse_scenario(const std::string& text);
Scenario load_scenario_file(const std::string& path);

/// Canonical YAML in SI units with 17 significant digits; parse_scenario of
/// the result compares equal to the input.
std::string serialize_scenario(const Scenario& scenario);

/// Throws ScenarioError("name") unless `name` is a plain directory name.
void check_scenario_name(const std::string& name);

/// Parses a number with optional `2pi*` prefix, e.g. "2pi*3.183" or "4e8".
double parse_number(const std::string& text, const std::string& path);

/// Scale from the named unit to SI (rad/s or s).
double frequency_scale(const std::string& unit, const std::string& path);
double time_scale(const std::string& unit, const std::string& path);

}  // namespace nhadiab

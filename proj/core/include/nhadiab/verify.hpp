#pragma once

// Library-level invariant suite behind `nhadiab verify`.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace nhadiab {

struct InvariantCheck {
  std::string name;
  bool passed = false;
  double value = 0.0;      // worst observed value
  double tolerance = 0.0;  // bound it is compared against
  std::string detail;
};

struct VerifyOptions {
  std::size_t random_triples = 1000;
  std::uint64_t seed = 7;
  /// Restrict the per-preset checks to these names (empty = all presets).
  std::vector<std::string> presets;
  /// Called after each check, e.g. for progress output.
  std::function<void(const InvariantCheck&)> on_check;
};

struct VerifyReport {
  std::vector<InvariantCheck> checks;
  bool passed() const;
};

VerifyReport run_invariant_suite(const VerifyOptions& options = {});

}  // namespace nhadiab

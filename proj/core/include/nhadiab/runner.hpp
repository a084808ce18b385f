#pragma once

// Runs a scenario end to end and writes its artifact bundle:
//   <out>/<name>/trajectory.csv, populations.csv, criteria.csv, landscape.csv,
//   degeneracies.json (with landscape), meta.json (always).

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "nhadiab/ctime.hpp"
#include "nhadiab/scenario.hpp"

namespace nhadiab {

const char* version();

/// Output directory could not be written.
class RunIoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunOptions {
  std::filesystem::path out_dir = ".";
  std::optional<std::size_t> steps;  // overrides the scenario grid
};

struct RunResult {
  std::string name;
  std::filesystem::path directory;
  std::vector<std::string> files;
  double wall_seconds = 0.0;
  Flag flags = Flag::None;
  std::optional<BoundaryVerdict> verdict;
};

RunResult run_scenario(const Scenario& scenario, const RunOptions& options = {});

/// Runs independent scenarios on up to `threads` workers (0 = hardware).
/// Each scenario writes only into its own directory. Exceptions propagate
/// after all workers have finished, first failure wins.
std::vector<RunResult> run_batch(const std::vector<Scenario>& scenarios,
                                 const RunOptions& options = {}, unsigned threads = 0);

// CSV bodies, exposed for tests. Rows use 17 significant digits; `stride`
// keeps every k-th sample plus the last one.
std::string trajectory_csv(const Trajectory& trajectory, std::size_t stride = 1);
std::string populations_csv(const Trajectory& trajectory, std::size_t stride = 1);
std::string criteria_csv(const Trajectory& trajectory, std::size_t stride = 1);
std::string landscape_csv(const ComplexLandscape& landscape);

}  // namespace nhadiab

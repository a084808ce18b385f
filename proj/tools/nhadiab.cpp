// nhadiab command line front end.
//
// Exit codes: 0 success, 1 scenario or usage error, 2 numerical failure,
// 3 invariant violation in `verify`.

#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "nhadiab/presets.hpp"
#include "nhadiab/runner.hpp"
#include "nhadiab/verify.hpp"

namespace {

enum Exit { kOk = 0, kScenario = 1, kNumerical = 2, kInvariant = 3 };

nhadiab::Scenario resolve(const std::string& target) {
  if (std::filesystem::is_regular_file(target)) return nhadiab::load_scenario_file(target);
  if (nhadiab::has_preset(target)) return nhadiab::preset(target);
  throw nhadiab::ScenarioError("target", "'" + target + "' is neither a scenario file nor a preset");
}

void report(const nhadiab::RunResult& r) {
  std::string files;
  for (const auto& f : r.files) files += (files.empty() ? "" : " ") + f;
  fmt::print("{}: {} [{}] in {:.2f} s", r.name, r.directory.string(), files, r.wall_seconds);
  if (r.verdict) fmt::print(", {}", nhadiab::to_string(*r.verdict));
  fmt::print("\n");
}

std::vector<double> parse_rect(const std::string& text) {
  std::vector<double> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t comma = text.find(',', start);
    const std::string part = text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    out.push_back(nhadiab::parse_number(part, "--rect"));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  if (out.size() != 4 && out.size() != 6) {
    throw nhadiab::ScenarioError("--rect", "expected re_min,re_max,im_min,im_max[,n_re,n_im]");
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Adiabaticity diagnostics for decaying two-level systems"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(nhadiab::version()));

  std::vector<std::string> targets;
  std::string out_dir = ".";
  std::size_t steps = 0;
  unsigned jobs = 0;
  auto* run = app.add_subcommand("run", "Run scenario files or presets and write CSV/JSON artifacts");
  run->add_option("target", targets, "Scenario file or preset name")->required();
  run->add_option("--out", out_dir, "Output directory (one subdirectory per scenario)");
  run->add_option("--steps", steps, "Override the number of time steps")->check(CLI::Range(4, 100000000));
  run->add_option("--jobs", jobs, "Concurrent scenarios (0 = hardware threads)");

  app.add_subcommand("list-presets", "List built-in scenarios");

  std::vector<std::string> verify_presets;
  std::size_t triples = 1000;
  bool quiet = false;
  auto* verify = app.add_subcommand("verify", "Run the invariant suite");
  verify->add_option("--preset", verify_presets, "Limit per-preset checks to these presets");
  verify->add_option("--triples", triples, "Random (Delta, Omega, Gamma) triples for eigensystem checks");
  verify->add_flag("--quiet", quiet, "Only print failures and the summary");

  std::string land_preset, rect_text, time_unit = "s";
  std::size_t contour_steps = 0;
  auto* land = app.add_subcommand("landscape", "Sample the complex-time landscape of a preset");
  land->add_option("preset", land_preset, "Preset or scenario file")->required();
  land->add_option("--rect", rect_text, "re_min,re_max,im_min,im_max[,n_re,n_im] in --time-unit");
  land->add_option("--time-unit", time_unit, "Unit of --rect values (s, ms, us)");
  land->add_option("--contour-steps", contour_steps, "Quadrature steps per contour");
  land->add_option("--out", out_dir, "Output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kScenario;
  }

  try {
    if (app.got_subcommand("list-presets")) {
      for (const auto& p : nhadiab::list_presets()) fmt::print("{:<12} {}\n", p.name, p.caption);
      return kOk;
    }

    if (app.got_subcommand("verify")) {
      nhadiab::VerifyOptions options;
      options.presets = verify_presets;
      options.random_triples = triples;
      options.on_check = [quiet](const nhadiab::InvariantCheck& c) {
        if (quiet && c.passed) return;
        fmt::print("{} {} (value {:.3e}, tol {:.1e}){}\n", c.passed ? "ok  " : "FAIL", c.name, c.value,
                   c.tolerance, c.detail.empty() ? "" : " " + c.detail);
        std::fflush(stdout);
      };
      const auto result = nhadiab::run_invariant_suite(options);
      std::size_t failed = 0;
      for (const auto& c : result.checks) failed += c.passed ? 0 : 1;
      fmt::print("{} checks, {} failed\n", result.checks.size(), failed);
      return result.passed() ? kOk : kInvariant;
    }

    nhadiab::RunOptions options;
    options.out_dir = out_dir;

    if (app.got_subcommand("run")) {
      if (steps) options.steps = steps;
      std::vector<nhadiab::Scenario> scenarios;
      for (const auto& t : targets) scenarios.push_back(resolve(t));
      for (const auto& r : nhadiab::run_batch(scenarios, options, jobs)) report(r);
      return kOk;
    }

    if (app.got_subcommand("landscape")) {
      nhadiab::Scenario s = resolve(land_preset);
      s.outputs = {nhadiab::Product::Landscape};
      nhadiab::LandscapeSpec spec = s.landscape.value_or(nhadiab::LandscapeSpec{
          nhadiab::default_landscape_rect(s.protocol.build()), 2000});
      if (!rect_text.empty()) {
        const double scale = nhadiab::time_scale(time_unit, "--time-unit");
        const auto v = parse_rect(rect_text);
        spec.rect.re_min = scale * v[0];
        spec.rect.re_max = scale * v[1];
        spec.rect.im_min = scale * v[2];
        spec.rect.im_max = scale * v[3];
        if (v.size() == 6) {
          if (v[4] < 1 || v[5] < 1) throw nhadiab::ScenarioError("--rect", "node counts must be >= 1");
          spec.rect.n_re = static_cast<std::size_t>(v[4]);
          spec.rect.n_im = static_cast<std::size_t>(v[5]);
        }
        if (!(spec.rect.re_max >= spec.rect.re_min && spec.rect.im_max >= spec.rect.im_min)) {
          throw nhadiab::ScenarioError("--rect", "max must not be below min");
        }
      }
      if (contour_steps) spec.contour_steps = contour_steps;
      s.landscape = spec;
      report(nhadiab::run_scenario(s, options));
      return kOk;
    }
  } catch (const nhadiab::ScenarioError& e) {
    std::cerr << "scenario error: " << e.what() << "\n";
    return kScenario;
  } catch (const nhadiab::RunIoError& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return kScenario;
  } catch (const nhadiab::NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kNumerical;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kScenario;
  }
  return kOk;
}

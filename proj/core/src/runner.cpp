#include "nhadiab/runner.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <fstream>
#include <thread>

#include <fmt/format.h>
#include <json.hpp>

#include "nhadiab/criteria.hpp"
#include "nhadiab/populations.hpp"

namespace nhadiab {

const char* version() { return NHADIAB_VERSION_STRING; }

namespace {

using json = nlohmann::ordered_json;

void num(std::string& row, double v) {
  row += ',';
  row += fmt::format("{:.17g}", v);
}

void num(std::string& row, cplx v) {
  num(row, v.real());
  num(row, v.imag());
}

std::string header(std::initializer_list<std::string> cols) {
  std::string out;
  for (const auto& c : cols) out += (out.empty() ? "" : ",") + c;
  return out + "\n";
}

void write_file(const std::filesystem::path& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw RunIoError("cannot write " + path.string());
  out << body;
  out.close();
  if (!out) throw RunIoError("write failed for " + path.string());
}

json interval_json(const ArgInterval& a) {
  return {{"lower", a.lower}, {"width", a.width}, {"closed_at_lower", a.closed_at_lower}};
}

json complex_json(cplx v) { return json::array({v.real(), v.imag()}); }

bool keep(std::size_t k, std::size_t size, std::size_t stride) {
  return k % stride == 0 || k + 1 == size;
}

}  // namespace

std::string trajectory_csv(const Trajectory& tr, std::size_t stride) {
  std::string out;
  std::string cols = "t,psi_g_re,psi_g_im,psi_e_re,psi_e_im,norm2,E_p_re,E_p_im,E_m_re,E_m_im,"
                     "alpha_re,alpha_im,z_re,z_im,x_re,x_im";
  for (const char* n : {"p", "m"}) {
    for (const char* q : {"c", "d", "g", "beta"}) cols += fmt::format(",{0}_{1}_re,{0}_{1}_im", q, n);
  }
  out += cols + ",W_pm_re,W_pm_im,flags\n";
  for (std::size_t k = 0; k < tr.size(); ++k) {
    if (!keep(k, tr.size(), stride)) continue;
    const auto& s = tr.samples[k];
    std::string row = fmt::format("{:.17g}", s.t);
    num(row, s.psi[0]);
    num(row, s.psi[1]);
    num(row, s.norm2);
    num(row, s.frame.e_plus);
    num(row, s.frame.e_minus);
    num(row, s.frame.alpha);
    num(row, s.frame.z);
    num(row, s.frame.x);
    for (std::size_t n = 0; n < 2; ++n) {
      num(row, s.c[n]);
      num(row, s.d[n]);
      num(row, s.g[n]);
      num(row, s.beta[n]);
    }
    num(row, s.phases.w_pm);
    row += fmt::format(",{}\n", bits(s.frame.flags));
    out += row;
  }
  return out;
}

std::string populations_csv(const Trajectory& tr, std::size_t stride) {
  std::string out =
      header({"t", "P1p", "P1m", "P2p", "P2m", "P3p", "P3m", "P4p", "P4m", "P5p", "P5m", "P3p_im",
              "P3m_im", "norm2"});
  const auto pops = population_series(tr);
  for (std::size_t k = 0; k < tr.size(); ++k) {
    if (!keep(k, tr.size(), stride)) continue;
    std::string row = fmt::format("{:.17g}", tr.samples[k].t);
    for (int j = 1; j <= kPopulationCount; ++j) {
      num(row, pops[k](j, Mode::Plus));
      num(row, pops[k](j, Mode::Minus));
    }
    num(row, pops[k].p3_imag[0]);
    num(row, pops[k].p3_imag[1]);
    num(row, pops[k].norm2);
    out += row + "\n";
  }
  return out;
}

std::string criteria_csv(const Trajectory& tr, std::size_t stride) {
  // Target mode n is fed from the other mode m.
  const CriterionSeries plus = criterion_series(tr, Mode::Minus, Mode::Plus);
  const CriterionSeries minus = criterion_series(tr, Mode::Plus, Mode::Minus);
  std::string cols = "t,abs_g_p,abs_g_m";
  for (const char* n : {"p", "m"}) {
    cols += fmt::format(
        ",g1_{0}_re,g1_{0}_im,uv_{0},uv_re_{0},uv_im_{0},series1_{0}_re,series1_{0}_im,"
        "series2_{0}_re,series2_{0}_im,series3_{0}_re,series3_{0}_im,flags_{0}",
        n);
  }
  std::string out = cols + "\n";
  for (std::size_t k = 0; k < tr.size(); ++k) {
    if (!keep(k, tr.size(), stride)) continue;
    const auto& s = tr.samples[k];
    std::string row = fmt::format("{:.17g}", s.t);
    num(row, std::abs(s.g[0]));
    num(row, std::abs(s.g[1]));
    for (const CriterionSeries* c : {&plus, &minus}) {
      num(row, c->g1[k]);
      num(row, c->uv.value[k]);
      num(row, c->uv_re.value[k]);
      num(row, c->uv_im.value[k]);
      num(row, c->series1.total[k]);
      num(row, c->series2.total[k]);
      num(row, c->series3.total[k]);
      const Flag f = c->uv.flags[k] | c->series3.flags[k];
      // Partition-specific blow-ups are encoded in the upper bits.
      const std::uint32_t partition_bits = (has(c->uv_re.flags[k], Flag::BlowUp) ? 1u << 8 : 0u) |
                                           (has(c->uv_im.flags[k], Flag::BlowUp) ? 1u << 9 : 0u);
      row += fmt::format(",{}", bits(f) | partition_bits);
    }
    out += row + "\n";
  }
  return out;
}

std::string landscape_csv(const ComplexLandscape& land) {
  std::string out = header({"re_t", "im_t", "re_phi", "im_phi", "abs_h", "valid", "flags"});
  for (const auto& n : land.nodes) {
    std::string row = fmt::format("{:.17g}", n.t.real());
    num(row, n.t.imag());
    num(row, n.phi);
    num(row, std::abs(n.h));
    row += fmt::format(",{},{}\n", n.valid ? 1 : 0, bits(n.flags));
    out += row;
  }
  return out;
}

RunResult run_scenario(const Scenario& scenario, const RunOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  const ProtocolSchedule schedule = scenario.protocol.build();
  const ModelParams params = scenario.model();
  IntegratorSettings settings = scenario.integrator();
  if (options.steps) {
    if (*options.steps < 4) throw ScenarioError("grid.steps", "must be >= 4");
    settings.steps = *options.steps;
  }
  if (scenario.wants(Product::Landscape) && !schedule.analytic()) {
    throw ScenarioError("outputs", "landscape requires an analytic (lz or cpr) protocol");
  }

  check_scenario_name(scenario.name);
  RunResult result;
  result.name = scenario.name;
  result.directory = options.out_dir / scenario.name;
  std::error_code ec;
  std::filesystem::create_directories(result.directory, ec);
  if (ec) throw RunIoError("cannot create " + result.directory.string() + ": " + ec.message());

  json meta;
  meta["name"] = scenario.name;
  meta["caption"] = scenario.caption;
  meta["version"] = version();
  meta["scenario"] = serialize_scenario(scenario);
  json outputs = json::array();
  for (Product p : scenario.outputs) outputs.push_back(to_string(p));
  meta["outputs"] = outputs;

  const bool need_trajectory = scenario.wants(Product::Trajectory) ||
                               scenario.wants(Product::Populations) ||
                               scenario.wants(Product::Criteria);
  const BranchDefaults branches =
      settings.branches.value_or(default_branches(schedule, params.gamma));
  meta["grid"] = {{"t_f", schedule.t_f()},
                  {"steps", settings.steps},
                  {"step", schedule.t_f() / static_cast<double>(settings.steps)},
                  {"output_every", scenario.output_every}};
  meta["branches"] = {{"sqrt_interval", interval_json(branches.sqrt_interval)},
                      {"atan_interval", interval_json(branches.atan_interval)},
                      {"pi_offset", branches.pi_offset},
                      {"auto_label", branches.auto_label}};
  meta["tolerances"] = {{"degeneracy_eps", settings.degeneracy_eps},
                        {"blowup_fraction_of_max_omega", 1e-6},
                        {"newton_relative_residual", 1e-10},
                        {"landscape_margin_fraction_of_t_f", LandscapeConfig{}.margin}};

  if (need_trajectory) {
    const StateVec psi0 = scenario.psi0(schedule);
    const Trajectory tr = propagate(schedule, params, psi0, settings);
    result.flags = tr.flags;
    meta["diagnostics"] = {{"flags", bits(tr.flags)},
                           {"coarse_steps", tr.coarse_steps},
                           {"degenerate_samples", tr.degenerate_samples},
                           {"max_transport", tr.max_transport},
                           {"initial_orthonormality", tr.initial_orthonormality},
                           {"reconstruction_residual", reconstruction_residual(tr)}};
    meta["psi0"] = {{"g", complex_json(psi0[0])}, {"e", complex_json(psi0[1])}};
    if (scenario.wants(Product::Trajectory)) {
      write_file(result.directory / "trajectory.csv", trajectory_csv(tr, scenario.output_every));
      result.files.push_back("trajectory.csv");
    }
    if (scenario.wants(Product::Populations)) {
      write_file(result.directory / "populations.csv", populations_csv(tr, scenario.output_every));
      result.files.push_back("populations.csv");
    }
    if (scenario.wants(Product::Criteria)) {
      write_file(result.directory / "criteria.csv", criteria_csv(tr, scenario.output_every));
      result.files.push_back("criteria.csv");
    }
  }

  if (scenario.wants(Product::Landscape)) {
    LandscapeConfig config;
    config.branches = branches;
    ComplexRect rect = default_landscape_rect(schedule);
    if (scenario.landscape) {
      rect = scenario.landscape->rect;
      config.contour_steps = scenario.landscape->contour_steps;
    }
    const ComplexLandscape land = sample_landscape(schedule, params, rect, config);
    const BoundaryReport report = classify_boundary_validity(land);
    result.verdict = report.verdict;
    write_file(result.directory / "landscape.csv", landscape_csv(land));
    result.files.push_back("landscape.csv");

    json degs = json::array();
    std::size_t rejected = 0;
    for (const auto& d : land.degeneracies) {
      if (!d.converged) {
        ++rejected;
        continue;
      }
      degs.push_back({{"t", complex_json(d.t)},
                      {"residual", d.residual},
                      {"gap", d.gap},
                      {"iterations", d.iterations},
                      {"converged", d.converged}});
    }
    json assessed = json::array();
    for (const auto& a : report.degeneracies) {
      assessed.push_back({{"t", complex_json(a.t)},
                          {"close", a.close},
                          {"descent_side", a.descent_side},
                          {"screening", a.screening},
                          {"h_peak", a.h_peak},
                          {"disturbance", a.disturbance},
                          {"contaminates", a.contaminates}});
    }
    json doc;
    doc["degeneracies"] = degs;
    doc["unconverged_candidates"] = rejected;
    doc["classification"] = {{"verdict", to_string(report.verdict)},
                             {"reason", report.reason},
                             {"descent", complex_json(report.descent)},
                             {"descent_degrees", report.descent_degrees},
                             {"off_axis", report.off_axis},
                             {"h_boundary", report.h_boundary},
                             {"assessments", assessed}};
    write_file(result.directory / "degeneracies.json", doc.dump(2) + "\n");
    result.files.push_back("degeneracies.json");
    meta["landscape"] = {{"re_min", rect.re_min}, {"re_max", rect.re_max},
                         {"im_min", rect.im_min}, {"im_max", rect.im_max},
                         {"n_re", rect.n_re},     {"n_im", rect.n_im},
                         {"contour_steps", config.contour_steps}};
  }

  result.files.push_back("meta.json");
  meta["files"] = result.files;
  result.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  meta["wall_time_s"] = result.wall_seconds;
  write_file(result.directory / "meta.json", meta.dump(2) + "\n");
  return result;
}

std::vector<RunResult> run_batch(const std::vector<Scenario>& scenarios, const RunOptions& options,
                                 unsigned threads) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(scenarios.size(), 1)));
  std::vector<RunResult> results(scenarios.size());
  std::vector<std::exception_ptr> errors(scenarios.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < scenarios.size(); i = next++) {
      try {
        results[i] = run_scenario(scenarios[i], options);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned k = 1; k < threads; ++k) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return results;
}

}  // namespace nhadiab

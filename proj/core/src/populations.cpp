#include "nhadiab/populations.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace nhadiab {

PopulationSet compute_populations(const EigenFrame& frame, const StateVec& psi,
                                  const PerMode<cplx>& beta) {
  PopulationSet out;
  out.norm2 = psi.squaredNorm();
  PerMode<double> q{};
  for (Mode n : {Mode::Plus, Mode::Minus}) {
    const std::size_t i = index(n);
    const cplx c = frame.hat(n).dot(psi);   // <n^|Psi>
    const cplx r = frame.ket(n).dot(psi);   // <n|Psi>
    const double c2 = std::norm(c);
    q[i] = std::abs(std::conj(c) * r);
    out.p[0][i] = c2;
    const cplx p3 = std::conj(c) * frame.ket(n).squaredNorm() * c;
    out.p[2][i] = p3.real();
    out.p3_imag[i] = p3.imag();
    out.p[3][i] = out.norm2 > 0.0 ? c2 / (frame.hat(n).squaredNorm() * out.norm2) : 0.0;
    out.p[4][i] = std::norm(c * std::exp(-kI * beta[i]));
  }
  const double total = q[0] + q[1];
  if (!(total > 0.0)) throw std::invalid_argument("compute_populations: state has zero overlap");
  out.p[1] = {q[0] / total, q[1] / total};
  return out;
}

PopulationSet compute_populations(const TrajectorySample& s) {
  return compute_populations(s.frame, s.psi, s.beta);
}

std::vector<PopulationSet> population_series(const Trajectory& tr) {
  std::vector<PopulationSet> out;
  out.reserve(tr.size());
  for (const auto& s : tr.samples) out.push_back(compute_populations(s));
  return out;
}

const char* to_string(Table1Property p) {
  switch (p) {
    case Table1Property::SumIsOne: return "sum=1";
    case Table1Property::BoundedByOne: return "<=1";
    case Table1Property::GaugeIndependent: return "f-indep";
    case Table1Property::AdiabaticInvariant: return "adiab-inv";
  }
  return "?";
}

bool Table1Report::matches_expected() const {
  for (int j = 0; j < kPopulationCount; ++j) {
    for (int p = 0; p < kTable1Properties; ++p) {
      if (cells[j][p].holds != kTable1Expected[j][p]) return false;
    }
  }
  return true;
}

namespace {

class Checker {
 public:
  Checker(Table1Report& report, const Table1Config& config, const std::vector<cplx>& gauges)
      : report_(report), config_(config), gauges_(gauges) {}

  void state(const std::string& source, const EigenFrame& frame, const StateVec& psi,
             const PerMode<cplx>& beta) {
    const PopulationSet base = compute_populations(frame, psi, beta);
    for (int j = 1; j <= kPopulationCount; ++j) {
      const double sum = base.sum(j);
      record(j, Table1Property::SumIsOne, std::abs(sum - 1.0) <= config_.sum_tol,
             {source, frame.t, Mode::Plus, sum, 1.0, std::nullopt});
      for (Mode n : {Mode::Plus, Mode::Minus}) {
        const double v = base(j, n);
        record(j, Table1Property::BoundedByOne, v <= 1.0 + config_.bound_tol,
               {source, frame.t, n, v, 1.0, std::nullopt});
      }
    }
    for (std::size_t k = 0; k < gauges_.size(); k += 2) {
      const PerMode<cplx> f{gauges_[k], gauges_[k + 1]};
      const PopulationSet moved = compute_populations(apply_gauge(frame, f), psi, beta);
      for (int j = 1; j <= kPopulationCount; ++j) {
        for (Mode n : {Mode::Plus, Mode::Minus}) {
          const double a = base(j, n), b = moved(j, n);
          const bool same = std::abs(a - b) <= config_.gauge_tol * std::max(1.0, std::abs(a));
          record(j, Table1Property::GaugeIndependent, same,
                 {source, frame.t, n, b, a, f[index(n)]});
        }
      }
    }
  }

  void invariance(const Trajectory& forced) {
    const PopulationSet start = compute_populations(forced.samples.front());
    for (const auto& s : forced.samples) {
      const PopulationSet now = compute_populations(s);
      for (int j = 1; j <= kPopulationCount; ++j) {
        for (Mode n : {Mode::Plus, Mode::Minus}) {
          const bool same = std::abs(now(j, n) - start(j, n)) <= config_.invariance_tol;
          record(j, Table1Property::AdiabaticInvariant, same,
                 {"forced-adiabatic", s.t, n, now(j, n), start(j, n), std::nullopt});
        }
      }
    }
  }

 private:
  void record(int j, Table1Property p, bool ok, Table1Witness w) {
    Table1Cell& cell = report_.cells[j - 1][static_cast<int>(p)];
    ++cell.checks;
    if (ok) return;
    cell.holds = false;
    // Keep the strongest counterexample.
    if (!cell.witness ||
        std::abs(w.value - w.reference) > std::abs(cell.witness->value - cell.witness->reference)) {
      cell.witness = std::move(w);
    }
  }

  Table1Report& report_;
  const Table1Config& config_;
  const std::vector<cplx>& gauges_;
};

std::vector<cplx> random_gauges(const Table1Config& config) {
  std::mt19937_64 rng(config.seed);
  std::uniform_real_distribution<double> log_modulus(0.1, 1.0);
  std::uniform_real_distribution<double> phase(-kPi, kPi);
  std::bernoulli_distribution shrink(0.5);
  std::vector<cplx> out;
  for (std::size_t k = 0; k < 2 * config.random_gauges; ++k) {
    const double lm = log_modulus(rng) * (shrink(rng) ? -1.0 : 1.0);
    out.push_back(std::polar(std::exp(lm), phase(rng)));
  }
  return out;
}

}  // namespace

Table1Report verify_table1(const std::vector<NamedTrajectory>& trajectories,
                           const Trajectory& forced, const Table1Config& config) {
  Table1Report report;
  const std::vector<cplx> gauges = random_gauges(config);
  report.gauges_tested = config.random_gauges;
  Checker check(report, config, gauges);
  for (const auto& named : trajectories) {
    for (const auto& s : named.trajectory->samples) {
      if (s.norm2 > 0.0) check.state(named.name, s.frame, s.psi, s.beta);
      if (!config.probe_states) continue;
      for (Mode n : {Mode::Plus, Mode::Minus}) {
        const StateVec hat = s.frame.hat(n).normalized();
        const StateVec ket = s.frame.ket(n).normalized();
        check.state(named.name + ":probe-hat-" + mode_name(n), s.frame, hat, s.beta);
        check.state(named.name + ":probe-ket-" + mode_name(n), s.frame, ket, s.beta);
      }
    }
  }
  check.invariance(forced);
  return report;
}

Table1Report verify_table1(const ProtocolSchedule& schedule, const ModelParams& params,
                           const StateVec& psi0, const IntegratorSettings& settings,
                           const Table1Config& config) {
  const Trajectory tr = propagate(schedule, params, psi0, settings);
  const Trajectory forced = forced_adiabatic(schedule, params, {cplx(0.6), cplx(0.8)}, settings);
  return verify_table1({{"propagated", &tr}}, forced, config);
}

}  // namespace nhadiab

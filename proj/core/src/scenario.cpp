#include "nhadiab/scenario.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <fmt/format.h>
#include <yaml-cpp/yaml.h>

namespace nhadiab {

const char* to_string(Product p) {
  switch (p) {
    case Product::Trajectory: return "trajectory";
    case Product::Populations: return "populations";
    case Product::Criteria: return "criteria";
    case Product::Landscape: return "landscape";
  }
  return "?";
}

const char* to_string(InitialKind k) {
  switch (k) {
    case InitialKind::Ground: return "ground";
    case InitialKind::Excited: return "excited";
    case InitialKind::PlusMode: return "plus_mode";
    case InitialKind::MinusMode: return "minus_mode";
    case InitialKind::Custom: return "custom";
  }
  return "?";
}

ProtocolSchedule ProtocolSpec::build() const {
  switch (kind) {
    case ProtocolKind::LandauZener: return ProtocolSchedule::landau_zener(chirp, omega0, t_f);
    case ProtocolKind::CoherentPopulationReturn:
      return ProtocolSchedule::cpr(delta0, omega_max, a, t_f);
    case ProtocolKind::Tabulated:
      return ProtocolSchedule::tabulated(table_t, table_delta, table_omega);
  }
  throw std::logic_error("unknown protocol kind");
}

BranchDefaults BranchOverrides::apply(BranchDefaults base) const {
  if (sqrt_interval) base.sqrt_interval = *sqrt_interval;
  if (atan_interval) base.atan_interval = *atan_interval;
  if (pi_offset) base.pi_offset = *pi_offset;
  if (auto_label) base.auto_label = *auto_label;
  return base;
}

bool Scenario::wants(Product p) const {
  return std::find(outputs.begin(), outputs.end(), p) != outputs.end();
}

IntegratorSettings Scenario::integrator() const {
  IntegratorSettings s;
  s.steps = steps;
  if (!branches.empty()) {
    s.branches = branches.apply(default_branches(protocol.build(), gamma));
  }
  return s;
}

StateVec Scenario::psi0(const ProtocolSchedule& schedule) const {
  switch (initial.kind) {
    case InitialKind::Ground: return StateVec(1.0, 0.0);
    case InitialKind::Excited: return StateVec(0.0, 1.0);
    case InitialKind::PlusMode:
      return initial_mode_state(schedule, model(), Mode::Plus, integrator());
    case InitialKind::MinusMode:
      return initial_mode_state(schedule, model(), Mode::Minus, integrator());
    case InitialKind::Custom: return initial.custom;
  }
  return StateVec(1.0, 0.0);
}

void check_scenario_name(const std::string& name) {
  if (name.empty() || name.find_first_of("/\\") != std::string::npos || name == "." || name == "..") {
    throw ScenarioError("name", "must be a non-empty plain directory name");
  }
}

double parse_number(const std::string& raw, const std::string& path) {
  std::string text;
  std::copy_if(raw.begin(), raw.end(), std::back_inserter(text),
               [](char c) { return c != ' ' && c != '\t'; });
  double factor = 1.0;
  for (const char* prefix : {"2pi*", "2*pi*"}) {
    const std::string p(prefix);
    if (text.rfind(p, 0) == 0) {
      factor = kTwoPi;
      text = text.substr(p.size());
      break;
    }
  }
  double value = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  if (!text.empty() && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (text.empty() || ec != std::errc() || ptr != last) {
    throw ScenarioError(path, "expected a number, got '" + raw + "'");
  }
  value *= factor;
  if (!std::isfinite(value)) throw ScenarioError(path, "value must be finite");
  return value;
}

double frequency_scale(const std::string& unit, const std::string& path) {
  if (unit == "rad/s") return 1.0;
  if (unit == "Hz") return 1.0;
  if (unit == "kHz") return 1e3;
  if (unit == "MHz") return 1e6;
  throw ScenarioError(path, "unknown frequency unit '" + unit + "' (rad/s, Hz, kHz, MHz)");
}

double time_scale(const std::string& unit, const std::string& path) {
  if (unit == "s") return 1.0;
  if (unit == "ms") return 1e-3;
  if (unit == "us") return 1e-6;
  throw ScenarioError(path, "unknown time unit '" + unit + "' (s, ms, us)");
}

namespace {

struct Reader {
  double freq = 1.0;
  double time = 1.0;

  static std::string join(const std::string& a, const std::string& b) {
    return a.empty() ? b : a + "." + b;
  }

  static void check_keys(const YAML::Node& node, const std::string& path,
                         std::initializer_list<const char*> allowed) {
    if (!node.IsMap()) throw ScenarioError(path.empty() ? "<root>" : path, "expected a mapping");
    const std::set<std::string> ok(allowed.begin(), allowed.end());
    for (const auto& kv : node) {
      const auto key = kv.first.as<std::string>();
      if (!ok.count(key)) throw ScenarioError(join(path, key), "unknown key");
    }
  }

  static std::string scalar(const YAML::Node& node, const std::string& path) {
    if (!node || !node.IsScalar()) throw ScenarioError(path, "expected a scalar");
    return node.as<std::string>();
  }

  static double number(const YAML::Node& node, const std::string& path) {
    return parse_number(scalar(node, path), path);
  }

  static double required(const YAML::Node& parent, const std::string& path, const char* key) {
    const auto node = parent[key];
    if (!node) throw ScenarioError(join(path, key), "missing required field");
    return number(node, join(path, key));
  }

  static bool boolean(const YAML::Node& node, const std::string& path) {
    const auto s = scalar(node, path);
    if (s == "true") return true;
    if (s == "false") return false;
    throw ScenarioError(path, "expected true or false");
  }

  static std::size_t count(const YAML::Node& node, const std::string& path) {
    const double v = number(node, path);
    if (v < 0 || v != std::floor(v) || v > 1e9) throw ScenarioError(path, "expected a count");
    return static_cast<std::size_t>(v);
  }

  std::vector<double> list(const YAML::Node& node, const std::string& path, double scale) const {
    if (!node || !node.IsSequence()) throw ScenarioError(path, "expected a list of numbers");
    std::vector<double> out;
    for (std::size_t i = 0; i < node.size(); ++i) {
      out.push_back(scale * number(node[i], fmt::format("{}[{}]", path, i)));
    }
    return out;
  }

  static ArgInterval interval(const YAML::Node& node, const std::string& path) {
    if (node.IsScalar()) {
      const auto s = node.as<std::string>();
      if (s == "minus_pi_to_pi") return ArgInterval::minus_pi_to_pi();
      if (s == "zero_to_two_pi") return ArgInterval::zero_to_two_pi();
      if (s == "principal_half") return ArgInterval::principal_half();
      if (s == "zero_to_pi") return ArgInterval::zero_to_pi();
      throw ScenarioError(path, "unknown interval '" + s + "'");
    }
    check_keys(node, path, {"lower", "width", "closed_at_lower"});
    ArgInterval a;
    a.lower = required(node, path, "lower");
    a.width = required(node, path, "width");
    if (!(a.width > 0.0)) throw ScenarioError(join(path, "width"), "must be positive");
    if (node["closed_at_lower"]) a.closed_at_lower = boolean(node["closed_at_lower"], join(path, "closed_at_lower"));
    return a;
  }

  ProtocolSpec protocol(const YAML::Node& node) const {
    const std::string path = "protocol";
    if (!node) throw ScenarioError(path, "missing required section");
    check_keys(node, path,
               {"kind", "t_f", "chirp", "omega0", "delta0", "omega_max", "a", "t", "delta", "omega"});
    ProtocolSpec p;
    const auto kind = scalar(node["kind"], "protocol.kind");
    if (kind == "lz") {
      p.kind = ProtocolKind::LandauZener;
      p.t_f = time * required(node, path, "t_f");
      p.chirp = required(node, path, "chirp");
      p.omega0 = freq * required(node, path, "omega0");
      if (!(p.chirp > 0.0)) throw ScenarioError("protocol.chirp", "must be positive");
    } else if (kind == "cpr") {
      p.kind = ProtocolKind::CoherentPopulationReturn;
      p.t_f = time * required(node, path, "t_f");
      p.delta0 = freq * required(node, path, "delta0");
      p.omega_max = freq * required(node, path, "omega_max");
      p.a = required(node, path, "a");
      if (!(p.delta0 > 0.0)) throw ScenarioError("protocol.delta0", "must be positive");
      if (!(p.a > 0.0)) throw ScenarioError("protocol.a", "must be positive");
    } else if (kind == "tabulated") {
      p.kind = ProtocolKind::Tabulated;
      p.table_t = list(node["t"], "protocol.t", time);
      p.table_delta = list(node["delta"], "protocol.delta", freq);
      p.table_omega = list(node["omega"], "protocol.omega", freq);
      if (p.table_t.empty()) throw ScenarioError("protocol.t", "must not be empty");
      p.t_f = p.table_t.back();
    } else {
      throw ScenarioError("protocol.kind", "expected lz, cpr or tabulated");
    }
    if (!(p.t_f > 0.0)) throw ScenarioError("protocol.t_f", "must be positive");
    try {
      (void)p.build();
    } catch (const std::invalid_argument& e) {
      throw ScenarioError(path, e.what());
    }
    return p;
  }

  static cplx complex_value(const YAML::Node& node, const std::string& path) {
    if (node.IsSequence() && node.size() == 2) {
      return {number(node[0], path + "[0]"), number(node[1], path + "[1]")};
    }
    return {number(node, path), 0.0};
  }

  static InitialState initial(const YAML::Node& node) {
    const std::string path = "initial_state";
    InitialState s;
    if (!node) return s;
    YAML::Node custom;
    if (node.IsScalar()) {
      const auto v = node.as<std::string>();
      if (v == "ground") s.kind = InitialKind::Ground;
      else if (v == "excited") s.kind = InitialKind::Excited;
      else if (v == "plus_mode") s.kind = InitialKind::PlusMode;
      else if (v == "minus_mode") s.kind = InitialKind::MinusMode;
      else throw ScenarioError(path, "expected ground, excited, plus_mode, minus_mode or custom");
      return s;
    }
    if (node.IsMap()) {
      check_keys(node, path, {"custom"});
      custom = node["custom"];
    } else {
      custom = node;
    }
    if (!custom.IsSequence() || custom.size() != 2) {
      throw ScenarioError(path + ".custom", "expected two amplitudes [g, e]");
    }
    s.kind = InitialKind::Custom;
    s.custom = StateVec(complex_value(custom[0], path + ".custom[0]"),
                        complex_value(custom[1], path + ".custom[1]"));
    if (s.custom.squaredNorm() == 0.0) throw ScenarioError(path + ".custom", "state must be non-zero");
    return s;
  }

  static std::vector<Product> outputs(const YAML::Node& node) {
    std::vector<Product> out;
    if (!node) return {Product::Trajectory, Product::Populations, Product::Criteria};
    if (!node.IsSequence()) throw ScenarioError("outputs", "expected a list");
    for (std::size_t i = 0; i < node.size(); ++i) {
      const auto path = fmt::format("outputs[{}]", i);
      const auto v = scalar(node[i], path);
      Product p;
      if (v == "trajectory") p = Product::Trajectory;
      else if (v == "populations") p = Product::Populations;
      else if (v == "criteria") p = Product::Criteria;
      else if (v == "landscape") p = Product::Landscape;
      else throw ScenarioError(path, "unknown product '" + v + "'");
      if (std::find(out.begin(), out.end(), p) == out.end()) out.push_back(p);
    }
    return out;
  }

  static BranchOverrides branches(const YAML::Node& node) {
    BranchOverrides b;
    if (!node) return b;
    const std::string path = "branches";
    check_keys(node, path, {"sqrt_interval", "atan_interval", "pi_offset", "auto_label"});
    if (node["sqrt_interval"]) b.sqrt_interval = interval(node["sqrt_interval"], "branches.sqrt_interval");
    if (node["atan_interval"]) b.atan_interval = interval(node["atan_interval"], "branches.atan_interval");
    if (node["pi_offset"]) b.pi_offset = boolean(node["pi_offset"], "branches.pi_offset");
    if (node["auto_label"]) b.auto_label = boolean(node["auto_label"], "branches.auto_label");
    return b;
  }

  std::optional<LandscapeSpec> landscape(const YAML::Node& node) const {
    if (!node) return std::nullopt;
    const std::string path = "landscape";
    check_keys(node, path, {"re_min", "re_max", "im_min", "im_max", "n_re", "n_im", "contour_steps"});
    LandscapeSpec l;
    l.rect.re_min = time * required(node, path, "re_min");
    l.rect.re_max = time * required(node, path, "re_max");
    l.rect.im_min = time * required(node, path, "im_min");
    l.rect.im_max = time * required(node, path, "im_max");
    if (node["n_re"]) l.rect.n_re = count(node["n_re"], "landscape.n_re");
    if (node["n_im"]) l.rect.n_im = count(node["n_im"], "landscape.n_im");
    if (node["contour_steps"]) l.contour_steps = count(node["contour_steps"], "landscape.contour_steps");
    if (!(l.rect.re_max >= l.rect.re_min)) throw ScenarioError("landscape.re_max", "must be >= re_min");
    if (!(l.rect.im_max >= l.rect.im_min)) throw ScenarioError("landscape.im_max", "must be >= im_min");
    if (l.rect.n_re < 1 || l.rect.n_im < 1) throw ScenarioError("landscape", "node counts must be >= 1");
    if (l.contour_steps < 1) throw ScenarioError("landscape.contour_steps", "must be >= 1");
    return l;
  }
};

}  // namespace

Scenario parse_scenario(const std::string& text) {
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::Exception& e) {
    throw ScenarioError("<root>", std::string("YAML syntax error: ") + e.what());
  }
  Reader::check_keys(root, "", {"name", "caption", "units", "gamma", "protocol", "initial_state",
                                "grid", "outputs", "branches", "landscape"});
  Reader r;
  if (const auto units = root["units"]) {
    Reader::check_keys(units, "units", {"frequency", "time"});
    if (units["frequency"]) r.freq = frequency_scale(Reader::scalar(units["frequency"], "units.frequency"), "units.frequency");
    if (units["time"]) r.time = time_scale(Reader::scalar(units["time"], "units.time"), "units.time");
  }
  Scenario s;
  if (!root["name"]) throw ScenarioError("name", "missing required field");
  s.name = Reader::scalar(root["name"], "name");
  check_scenario_name(s.name);
  if (root["caption"]) s.caption = Reader::scalar(root["caption"], "caption");
  if (!root["gamma"]) throw ScenarioError("gamma", "missing required field");
  s.gamma = r.freq * Reader::number(root["gamma"], "gamma");
  if (!(s.gamma >= 0.0)) throw ScenarioError("gamma", "must be >= 0");
  s.protocol = r.protocol(root["protocol"]);
  s.initial = Reader::initial(root["initial_state"]);
  if (const auto grid = root["grid"]) {
    Reader::check_keys(grid, "grid", {"steps", "output_every"});
    if (grid["steps"]) s.steps = Reader::count(grid["steps"], "grid.steps");
    if (grid["output_every"]) s.output_every = Reader::count(grid["output_every"], "grid.output_every");
  }
  if (s.steps < 4) throw ScenarioError("grid.steps", "must be >= 4");
  if (s.output_every < 1) throw ScenarioError("grid.output_every", "must be >= 1");
  s.outputs = Reader::outputs(root["outputs"]);
  s.branches = Reader::branches(root["branches"]);
  s.landscape = r.landscape(root["landscape"]);
  if ((s.wants(Product::Landscape) || s.landscape) && s.protocol.kind == ProtocolKind::Tabulated) {
    throw ScenarioError(s.landscape ? "landscape" : "outputs", "needs an analytic (lz or cpr) protocol");
  }
  return s;
}

Scenario load_scenario_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ScenarioError("<file>", "cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str());
}

namespace {

std::string num(double v) { return fmt::format("{:.17g}", v); }

std::string interval_text(const ArgInterval& a) {
  if (a == ArgInterval::minus_pi_to_pi()) return "minus_pi_to_pi";
  if (a == ArgInterval::zero_to_two_pi()) return "zero_to_two_pi";
  if (a == ArgInterval::principal_half()) return "principal_half";
  if (a == ArgInterval::zero_to_pi()) return "zero_to_pi";
  return fmt::format("{{lower: {}, width: {}, closed_at_lower: {}}}", num(a.lower), num(a.width),
                     a.closed_at_lower ? "true" : "false");
}

std::string list_text(const std::vector<double>& v) {
  std::string out = "[";
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + num(v[i]);
  return out + "]";
}

std::string quoted(const std::string& s) {
  YAML::Emitter e;
  e << YAML::DoubleQuoted << s;
  return e.c_str();
}

}  // namespace

std::string serialize_scenario(const Scenario& s) {
  std::string out;
  auto line = [&out](const std::string& l) { out += l + "\n"; };
  line("name: " + quoted(s.name));
  line("caption: " + quoted(s.caption));
  line("units: {frequency: rad/s, time: s}");
  line("gamma: " + num(s.gamma));
  line("protocol:");
  const auto& p = s.protocol;
  switch (p.kind) {
    case ProtocolKind::LandauZener:
      line("  kind: lz");
      line("  chirp: " + num(p.chirp));
      line("  omega0: " + num(p.omega0));
      line("  t_f: " + num(p.t_f));
      break;
    case ProtocolKind::CoherentPopulationReturn:
      line("  kind: cpr");
      line("  delta0: " + num(p.delta0));
      line("  omega_max: " + num(p.omega_max));
      line("  a: " + num(p.a));
      line("  t_f: " + num(p.t_f));
      break;
    case ProtocolKind::Tabulated:
      line("  kind: tabulated");
      line("  t: " + list_text(p.table_t));
      line("  delta: " + list_text(p.table_delta));
      line("  omega: " + list_text(p.table_omega));
      break;
  }
  if (s.initial.kind == InitialKind::Custom) {
    const auto& c = s.initial.custom;
    line(fmt::format("initial_state: {{custom: [[{}, {}], [{}, {}]]}}", num(c[0].real()),
                     num(c[0].imag()), num(c[1].real()), num(c[1].imag())));
  } else {
    line(std::string("initial_state: ") + to_string(s.initial.kind));
  }
  line(fmt::format("grid: {{steps: {}, output_every: {}}}", s.steps, s.output_every));
  std::string outs = "outputs: [";
  for (std::size_t i = 0; i < s.outputs.size(); ++i) outs += (i ? ", " : "") + std::string(to_string(s.outputs[i]));
  line(outs + "]");
  if (!s.branches.empty()) {
    line("branches:");
    const auto& b = s.branches;
    if (b.sqrt_interval) line("  sqrt_interval: " + interval_text(*b.sqrt_interval));
    if (b.atan_interval) line("  atan_interval: " + interval_text(*b.atan_interval));
    if (b.pi_offset) line(std::string("  pi_offset: ") + (*b.pi_offset ? "true" : "false"));
    if (b.auto_label) line(std::string("  auto_label: ") + (*b.auto_label ? "true" : "false"));
  }
  if (s.landscape) {
    const auto& r = s.landscape->rect;
    line("landscape:");
    line("  re_min: " + num(r.re_min));
    line("  re_max: " + num(r.re_max));
    line("  im_min: " + num(r.im_min));
    line("  im_max: " + num(r.im_max));
    line(fmt::format("  n_re: {}", r.n_re));
    line(fmt::format("  n_im: {}", r.n_im));
    line(fmt::format("  contour_steps: {}", s.landscape->contour_steps));
  }
  return out;
}

}  // namespace nhadiab

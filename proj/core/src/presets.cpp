#include "nhadiab/presets.hpp"

namespace nhadiab {

namespace {

struct Entry {
  const char* name;
  const char* yaml;
};

// Frequencies in 2pi*kHz and times in ms, as printed alongside the figures.
// Chirp b and Gaussian width a are in s^-2.
const Entry kPresets[] = {
    {"fig1a_lzi", R"yaml(name: fig1a_lzi
caption: "LZ Gamma < 2 Omega_0 trajectories of z and x; Gamma = 2pi*0.159 kHz, Omega_0 = 2pi*0.159 kHz, b = 2e6 s^-2, t_f = 3 ms"
units: {frequency: kHz, time: ms}
gamma: 2pi*0.159
protocol:
  kind: lz
  omega0: 2pi*0.159
  chirp: 2e6
  t_f: 3
initial_state: ground
)yaml"},
    {"fig1b_lzii", R"yaml(name: fig1b_lzii
caption: "LZ Gamma > 2 Omega_0 trajectories of z and x; Gamma = 2pi*1.910 kHz, Omega_0 = 2pi*0.796 kHz, b = 50e6 s^-2, t_f = 1 ms"
units: {frequency: kHz, time: ms}
gamma: 2pi*1.910
protocol:
  kind: lz
  omega0: 2pi*0.796
  chirp: 50e6
  t_f: 1
initial_state: ground
)yaml"},
    {"fig2_lzi", R"yaml(name: fig2_lzi
caption: "LZ Gamma < 2 Omega_0 energies; Gamma = 2pi*0.159 kHz, Omega_0 = 2pi*0.159 kHz, b = 2e6 s^-2, t_f = 3 ms"
units: {frequency: kHz, time: ms}
gamma: 2pi*0.159
protocol:
  kind: lz
  omega0: 2pi*0.159
  chirp: 2e6
  t_f: 3
initial_state: ground
)yaml"},
    {"fig2_lzii", R"yaml(name: fig2_lzii
caption: "LZ Gamma > 2 Omega_0 energies; Gamma = 2pi*1.910 kHz, Omega_0 = 2pi*0.796 kHz, b = 50e6 s^-2, t_f = 1 ms"
units: {frequency: kHz, time: ms}
gamma: 2pi*1.910
protocol:
  kind: lz
  omega0: 2pi*0.796
  chirp: 50e6
  t_f: 1
initial_state: ground
)yaml"},
    {"fig2_cpr", R"yaml(name: fig2_cpr
caption: "CPR energies; Gamma = 2pi*3.183 kHz, Omega_max = 2pi*1.592 kHz, a = 4e8 s^-2, Delta_0 = 2pi*0.159 kHz, t_f = 1 ms"
units: {frequency: kHz, time: ms}
gamma: 2pi*3.183
protocol:
  kind: cpr
  delta0: 2pi*0.159
  omega_max: 2pi*1.592
  a: 4e8
  t_f: 1
initial_state: ground
)yaml"},
    {"fig3_cpr", R"yaml(name: fig3_cpr
caption: "CPR trajectories of z and x; Gamma = 2pi*3.183 kHz, Omega_max = 2pi*1.592 kHz, a = 4e8 s^-2, Delta_0 = 2pi*0.159 kHz, t_f = 1 ms"
units: {frequency: kHz, time: ms}
gamma: 2pi*3.183
protocol:
  kind: cpr
  delta0: 2pi*0.159
  omega_max: 2pi*1.592
  a: 4e8
  t_f: 1
initial_state: ground
)yaml"},
    {"fig4a", R"yaml(name: fig4a
caption: "CPR |g|, |d|, |uv|, start in |g> = |-(0)>; Gamma = 2pi*3.183 kHz, Omega_max = 2pi*3.183 kHz, a = 4e8 s^-2, Delta_0 = 2pi*31.831 kHz, t_f = 1 ms"
units: {frequency: kHz, time: ms}
gamma: 2pi*3.183
protocol:
  kind: cpr
  delta0: 2pi*31.831
  omega_max: 2pi*3.183
  a: 4e8
  t_f: 1
initial_state: ground
)yaml"},
    {"fig4c", R"yaml(name: fig4c
caption: "CPR |g|, |d|, |uv|, start in |e> = |+(0)>; Gamma = 2pi*3.183 kHz, Omega_max = 2pi*3.183 kHz, a = 4e8 s^-2, Delta_0 = 2pi*31.831 kHz, t_f = 1 ms"
units: {frequency: kHz, time: ms}
gamma: 2pi*3.183
protocol:
  kind: cpr
  delta0: 2pi*31.831
  omega_max: 2pi*3.183
  a: 4e8
  t_f: 1
initial_state: excited
)yaml"},
    {"fig5a", R"yaml(name: fig5a
caption: "long CPR, start in |g> = |-(0)>; Gamma = 2pi*3.183 kHz, Omega_max = 2pi*3.183 kHz, a = 4e8 s^-2, Delta_0 = 2pi*31.831 kHz, t_f = 5 ms"
units: {frequency: kHz, time: ms}
gamma: 2pi*3.183
protocol:
  kind: cpr
  delta0: 2pi*31.831
  omega_max: 2pi*3.183
  a: 4e8
  t_f: 5
initial_state: ground
)yaml"},
    {"fig5b", R"yaml(name: fig5b
caption: "long CPR, start in |e> = |+(0)>; Gamma = 2pi*3.183 kHz, Omega_max = 2pi*3.183 kHz, a = 4e8 s^-2, Delta_0 = 2pi*31.831 kHz, t_f = 5 ms"
units: {frequency: kHz, time: ms}
gamma: 2pi*3.183
protocol:
  kind: cpr
  delta0: 2pi*31.831
  omega_max: 2pi*3.183
  a: 4e8
  t_f: 5
initial_state: excited
)yaml"},
    {"fig6a_lzi", R"yaml(name: fig6a_lzi
caption: "LZ Gamma < 2 Omega_0 |g| and |uv|, start in |e>; Gamma = 2pi*0.159 kHz, Omega_0 = 2pi*79.578 kHz, b = 4e10 s^-2, t_f = 3 ms"
units: {frequency: kHz, time: ms}
gamma: 2pi*0.159
protocol:
  kind: lz
  omega0: 2pi*79.578
  chirp: 4e10
  t_f: 3
initial_state: excited
grid: {steps: 1000000, output_every: 50}
)yaml"},
    {"fig6b_lzii", R"yaml(name: fig6b_lzii
caption: "LZ Gamma > 2 Omega_0 |g| and |uv|, start in |e>; Gamma = 2pi*799.775 kHz, Omega_0 = 2pi*79.578 kHz, b = 9e12 s^-2, t_f = 0.07 ms"
units: {frequency: kHz, time: ms}
gamma: 2pi*799.775
protocol:
  kind: lz
  omega0: 2pi*79.578
  chirp: 9e12
  t_f: 0.07
initial_state: excited
grid: {steps: 200000, output_every: 10}
)yaml"},
    {"fig6c_lzi", R"yaml(name: fig6c_lzi
caption: "LZ Gamma < 2 Omega_0 |g| and |uv|, start in |g>; Gamma = 2pi*0.159 kHz, Omega_0 = 2pi*79.578 kHz, b = 4e10 s^-2, t_f = 3 ms"
units: {frequency: kHz, time: ms}
gamma: 2pi*0.159
protocol:
  kind: lz
  omega0: 2pi*79.578
  chirp: 4e10
  t_f: 3
initial_state: ground
grid: {steps: 1000000, output_every: 50}
)yaml"},
    {"fig6d_lzii", R"yaml(name: fig6d_lzii
caption: "LZ Gamma > 2 Omega_0 |g| and |uv|, start in |g>; Gamma = 2pi*799.775 kHz, Omega_0 = 2pi*79.578 kHz, b = 9e12 s^-2, t_f = 0.07 ms"
units: {frequency: kHz, time: ms}
gamma: 2pi*799.775
protocol:
  kind: lz
  omega0: 2pi*79.578
  chirp: 9e12
  t_f: 0.07
initial_state: ground
grid: {steps: 200000, output_every: 10}
)yaml"},
    {"fig7a", R"yaml(name: fig7a
caption: "CPR where |uv| fails, start in |g>; Gamma = 2pi*3.183 kHz, Omega_max = 2pi*0.159 kHz, a = 4e8 s^-2, Delta_0 = 2pi*2 Hz, t_f = 1 ms"
units: {frequency: kHz, time: ms}
gamma: 2pi*3.183
protocol:
  kind: cpr
  delta0: 2pi*0.002
  omega_max: 2pi*0.159
  a: 4e8
  t_f: 1
initial_state: ground
)yaml"},
    {"fig7b", R"yaml(name: fig7b
caption: "CPR where |uv| fails, start in |e>; Gamma = 2pi*3.183 kHz, Omega_max = 2pi*0.159 kHz, a = 4e8 s^-2, Delta_0 = 2pi*2 Hz, t_f = 1 ms"
units: {frequency: kHz, time: ms}
gamma: 2pi*3.183
protocol:
  kind: cpr
  delta0: 2pi*0.002
  omega_max: 2pi*0.159
  a: 4e8
  t_f: 1
initial_state: excited
)yaml"},
    {"fig8a", R"yaml(name: fig8a
caption: "complex-time landscape of the fig4a process; Gamma = 2pi*3.183 kHz, Omega_max = 2pi*3.183 kHz, a = 4e8 s^-2, Delta_0 = 2pi*31.831 kHz, t_f = 1 ms"
units: {frequency: kHz, time: ms}
gamma: 2pi*3.183
protocol:
  kind: cpr
  delta0: 2pi*31.831
  omega_max: 2pi*3.183
  a: 4e8
  t_f: 1
initial_state: ground
outputs: [trajectory, populations, criteria, landscape]
landscape:
  re_min: 0
  re_max: 1
  im_min: -0.06
  im_max: 0.06
  n_re: 41
  n_im: 25
)yaml"},
    {"fig8b", R"yaml(name: fig8b
caption: "complex-time landscape of the fig7a process; Gamma = 2pi*3.183 kHz, Omega_max = 2pi*0.159 kHz, a = 4e8 s^-2, Delta_0 = 2pi*2 Hz, t_f = 1 ms"
units: {frequency: kHz, time: ms}
gamma: 2pi*3.183
protocol:
  kind: cpr
  delta0: 2pi*0.002
  omega_max: 2pi*0.159
  a: 4e8
  t_f: 1
initial_state: ground
outputs: [trajectory, populations, criteria, landscape]
landscape:
  re_min: 0
  re_max: 1
  im_min: -0.06
  im_max: 0.06
  n_re: 41
  n_im: 25
)yaml"},
    {"decay", R"yaml(name: decay
caption: "pure decay of |e>, no coupling; Gamma = 2pi*3.183 kHz, Omega_max = 2pi*0 kHz, a = 4e8 s^-2, Delta_0 = 2pi*1 kHz, t_f = 1 ms"
units: {frequency: kHz, time: ms}
gamma: 2pi*3.183
protocol:
  kind: cpr
  delta0: 2pi*1
  omega_max: 2pi*0
  a: 4e8
  t_f: 1
initial_state: excited
)yaml"},
};

const Entry* find(const std::string& name) {
  for (const auto& e : kPresets) {
    if (name == e.name) return &e;
  }
  return nullptr;
}

}  // namespace

std::vector<PresetInfo> list_presets() {
  std::vector<PresetInfo> out;
  for (const auto& e : kPresets) out.push_back({e.name, parse_scenario(e.yaml).caption});
  return out;
}

bool has_preset(const std::string& name) { return find(name) != nullptr; }

std::string preset_source(const std::string& name) {
  const Entry* e = find(name);
  if (!e) throw ScenarioError("preset", "unknown preset '" + name + "'");
  return e->yaml;
}

Scenario preset(const std::string& name) { return parse_scenario(preset_source(name)); }

}  // namespace nhadiab

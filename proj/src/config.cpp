#include "metasim/config.hpp"

#include <cctype>
#include <cmath>
#include <map>
#include <optional>
#include <sstream>
#include <vector>

namespace metasim {

namespace {

struct Entry {
  std::string section, key, value;
  int line = 0;
};

std::string trim(const std::string& s) {
  size_t a = 0, b = s.size();
  while (a < b && std::isspace((unsigned char)s[a])) ++a;
  while (b > a && std::isspace((unsigned char)s[b - 1])) --b;
  return s.substr(a, b - a);
}

std::vector<Entry> tokenize(const std::string& text) {
  std::vector<Entry> out;
  std::istringstream in(text);
  std::string line, section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw ConfigError(lineno, "malformed section header");
      section = trim(line.substr(1, line.size() - 2));
      if (section.empty()) throw ConfigError(lineno, "empty section name");
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError(lineno, "expected key = value");
    Entry e;
    e.section = section;
    e.key = trim(line.substr(0, eq));
    e.value = trim(line.substr(eq + 1));
    e.line = lineno;
    if (e.key.empty()) throw ConfigError(lineno, "empty key");
    if (e.section.empty())
      throw ConfigError(lineno, "key before any [section] header");
    out.push_back(std::move(e));
  }
  return out;
}

double parse_double(const Entry& e) {
  try {
    size_t pos = 0;
    const double v = std::stod(e.value, &pos);
    if (pos != e.value.size() || !std::isfinite(v)) throw std::exception();
    return v;
  } catch (...) {
    throw ConfigError(e.line, e.section + "." + e.key + ": not a number: '" +
                                  e.value + "'");
  }
}

int parse_int(const Entry& e) {
  const double v = parse_double(e);
  if (v != std::floor(v))
    throw ConfigError(e.line, e.section + "." + e.key + ": not an integer");
  return (int)v;
}

bool parse_bool(const Entry& e) {
  if (e.value == "true") return true;
  if (e.value == "false") return false;
  throw ConfigError(e.line, e.section + "." + e.key + ": expected true/false");
}

double positive(const Entry& e) {
  const double v = parse_double(e);
  if (!(v > 0))
    throw ConfigError(e.line, e.section + "." + e.key + ": must be > 0");
  return v;
}

double nonnegative(const Entry& e) {
  const double v = parse_double(e);
  if (v < 0)
    throw ConfigError(e.line, e.section + "." + e.key + ": must be >= 0");
  return v;
}

Material* material_by_name(ActuatorSpec& spec, const std::string& name) {
  if (name == "paper") return &spec.substrate;
  if (name == "adhesive") return &spec.adhesive;
  if (name == "cnt") return &spec.cnt;
  return nullptr;  // bopp handled per loop
}

// Ring geometry override accumulated per loop, seeded from the defaults.
struct RingOverride {
  double x0_mm, x1_mm, y0_mm, y1_mm, w_mm;
  bool touched = false;
};

struct ScheduleSettings {
  std::string mode = "step";
  std::string loop = "outer";
  double power_w = 0.75;
  double t_on = 300, t_off = 60;
  double t_outer = 50, t_inner = 30;
  int cycles = 5;
};

}  // namespace

RunConfig default_run_config() {
  RunConfig cfg;
  cfg.scenario.spec = default_actuator_spec();
  cfg.scenario.duration = 600;
  cfg.scenario.stride = 10;
  cfg.scenario.schedule.segments.push_back({0, 300, 0.75, 0});
  cfg.params = calibrated_parameters();
  apply_parameters(cfg.scenario, cfg.params);
  cfg.gripper.finger = cfg.scenario.spec;
  cfg.object = {ObjectSpec::Kind::solid, 16.0, 0.0, 0.0};
  return cfg;
}

RunConfig parse_config(const std::string& text, bool strict) {
  const auto entries = tokenize(text);
  RunConfig cfg = default_run_config();
  auto& spec = cfg.scenario.spec;

  // Device-level switches first: they rebuild the spec that later
  // sections override.
  double bopp_um = 51.0;
  bool meta = true;
  for (const auto& e : entries) {
    if (e.section != "run") continue;
    if (e.key == "bopp_thickness_um") {
      bopp_um = positive(e);
    } else if (e.key == "meta") {
      meta = parse_bool(e);
    }
  }
  spec = default_actuator_spec(bopp_um, meta);

  std::map<std::string, RingOverride> rings = {
      {"outer", {14, 94, 1.2, 33.8, 6.5, false}},
      {"inner", {7, 81, 1.2, 33.8, 6.5, false}},
  };
  ScheduleSettings sched;
  bool return_enabled = false;
  ForcedReturnPolicy policy;

  auto unknown = [&](const Entry& e) {
    if (strict)
      throw ConfigError(e.line, "unknown key " + e.section + "." + e.key);
  };

  for (const auto& e : entries) {
    if (e.section == "actuator") {
      if (e.key == "length_mm") spec.length = positive(e) * 1e-3;
      else if (e.key == "width_mm") spec.width = positive(e) * 1e-3;
      else if (e.key == "cells") spec.cells = parse_int(e);
      else if (e.key == "loop_gap_mm") spec.loop_gap = nonnegative(e) * 1e-3;
      else unknown(e);
    } else if (e.section.rfind("material.", 0) == 0) {
      const std::string name = e.section.substr(9);
      Material* m = material_by_name(spec, name);
      std::vector<Material*> targets;
      if (m) {
        targets.push_back(m);
      } else if (name == "bopp") {
        for (auto& loop : spec.loops) targets.push_back(&loop.bopp);
      } else {
        if (strict) throw ConfigError(e.line, "unknown section " + e.section);
        continue;
      }
      for (Material* t : targets) {
        if (e.key == "k") t->k = positive(e);
        else if (e.key == "rho") t->rho = positive(e);
        else if (e.key == "cp") t->cp = positive(e);
        else if (e.key == "E") t->E = positive(e);
        else if (e.key == "alpha_eff_ppm") t->alpha_eff = parse_double(e) * 1e-6;
        else if (e.key == "thickness_um") t->thickness = positive(e) * 1e-6;
        else { unknown(e); break; }
      }
    } else if (e.section.rfind("loop.", 0) == 0) {
      const std::string name = e.section.substr(5);
      auto it = rings.find(name);
      if (it == rings.end()) {
        if (strict) throw ConfigError(e.line, "unknown section " + e.section);
        continue;
      }
      auto& r = it->second;
      r.touched = true;
      if (e.key == "x0_mm") r.x0_mm = nonnegative(e);
      else if (e.key == "x1_mm") r.x1_mm = positive(e);
      else if (e.key == "y0_mm") r.y0_mm = nonnegative(e);
      else if (e.key == "y1_mm") r.y1_mm = positive(e);
      else if (e.key == "width_mm") r.w_mm = positive(e);
      else if (e.key == "resistance") {
        const int l = [&] {
          for (size_t i = 0; i < spec.loops.size(); ++i)
            if (spec.loops[i].name == name) return (int)i;
          return -1;
        }();
        if (l >= 0) spec.loops[l].resistance = positive(e);
        r.touched = false;
      } else { unknown(e); r.touched = false; }
    } else if (e.section == "thermal") {
      if (e.key == "h") cfg.params.h = positive(e);
      else if (e.key == "dt") cfg.scenario.thermal.dt = positive(e);
      else if (e.key == "scheme") {
        if (e.value == "implicit")
          cfg.scenario.thermal.scheme = Scheme::implicit;
        else if (e.value == "explicit")
          cfg.scenario.thermal.scheme = Scheme::explicit_euler;
        else
          throw ConfigError(e.line, "scheme must be implicit or explicit");
      } else unknown(e);
    } else if (e.section == "mechanics") {
      if (e.key == "tau_mech") cfg.params.tau_mech = nonnegative(e);
      else if (e.key == "t_ref_c") cfg.scenario.mech.t_ref = parse_double(e);
      else unknown(e);
    } else if (e.section == "schedule") {
      if (e.key == "mode") {
        if (e.value != "step" && e.value != "cyclic" &&
            e.value != "alternating" && e.value != "none")
          throw ConfigError(e.line, "unknown schedule mode: " + e.value);
        sched.mode = e.value;
      }
      else if (e.key == "loop") {
        if (e.value != "outer" && e.value != "inner")
          throw ConfigError(e.line, "loop must be outer or inner");
        sched.loop = e.value;
      }
      else if (e.key == "power_w") sched.power_w = nonnegative(e);
      else if (e.key == "t_on") sched.t_on = positive(e);
      else if (e.key == "t_off") sched.t_off = positive(e);
      else if (e.key == "t_outer") sched.t_outer = positive(e);
      else if (e.key == "t_inner") sched.t_inner = positive(e);
      else if (e.key == "cycles") sched.cycles = parse_int(e);
      else unknown(e);
    } else if (e.section == "return") {
      if (e.key == "enabled") return_enabled = parse_bool(e);
      else if (e.key == "drive_loop") {
        if (e.value != "outer" && e.value != "inner")
          throw ConfigError(e.line, "drive_loop must be outer or inner");
        policy.drive_loop = e.value;
      }
      else if (e.key == "drive_power_w") policy.drive_power_w = nonnegative(e);
      else if (e.key == "p_ret_w") policy.p_ret_w = nonnegative(e);
      else if (e.key == "t_act") policy.t_act = positive(e);
      else if (e.key == "eps_d_mm") policy.eps_d_mm = positive(e);
      else if (e.key == "max_return_s") policy.max_return_s = positive(e);
      else unknown(e);
    } else if (e.section == "gripper") {
      if (e.key == "base_separation_mm")
        cfg.gripper.base_separation_mm = positive(e);
      else if (e.key == "opening_loop") cfg.gripper.opening_loop = e.value;
      else if (e.key == "closing_loop") cfg.gripper.closing_loop = e.value;
      else if (e.key == "rated_power_w") cfg.gripper.rated_power_w = positive(e);
      else unknown(e);
    } else if (e.section == "object") {
      if (e.key == "kind") {
        if (e.value == "solid") cfg.object.kind = ObjectSpec::Kind::solid;
        else if (e.value == "hollow") cfg.object.kind = ObjectSpec::Kind::hollow;
        else throw ConfigError(e.line, "kind must be solid or hollow");
      }
      else if (e.key == "outer_width_mm") cfg.object.outer_width_mm = positive(e);
      else if (e.key == "cavity_width_mm")
        cfg.object.cavity_width_mm = positive(e);
      else if (e.key == "tube_diameter_mm")
        cfg.object.tube_diameter_mm = nonnegative(e);
      else unknown(e);
    } else if (e.section == "run") {
      if (e.key == "duration") cfg.scenario.duration = positive(e);
      else if (e.key == "stride") {
        cfg.scenario.stride = parse_int(e);
        if (cfg.scenario.stride < 1)
          throw ConfigError(e.line, "stride must be >= 1");
      }
      else if (e.key == "t_amb_c") cfg.scenario.T_amb = parse_double(e);
      else if (e.key == "bopp_thickness_um" || e.key == "meta") {
        // consumed in the pre-pass
      }
      else unknown(e);
    } else if (strict) {
      throw ConfigError(e.line, "unknown section " + e.section);
    }
  }

  // Rebuild touched loop footprints from their ring parameters.
  for (auto& loop : spec.loops) {
    const auto& r = rings.at(loop.name);
    if (!r.touched) continue;
    loop.width = r.w_mm * 1e-3;
    loop.footprint = ring_footprint(r.x0_mm * 1e-3, r.x1_mm * 1e-3,
                                    r.y0_mm * 1e-3, r.y1_mm * 1e-3,
                                    r.w_mm * 1e-3);
  }

  // Assemble the power command.
  cfg.scenario.schedule.segments.clear();
  cfg.scenario.policy.reset();
  if (return_enabled) {
    cfg.scenario.policy = policy;
  } else if (sched.mode == "step") {
    if (sched.power_w > 0) {
      Segment seg{0, sched.t_on, 0, 0};
      (sched.loop == "outer" ? seg.p_outer : seg.p_inner) = sched.power_w;
      cfg.scenario.schedule.segments.push_back(seg);
    }
  } else if (sched.mode == "cyclic") {
    cfg.scenario.schedule = cyclic_schedule(sched.loop, sched.power_w,
                                            sched.t_on, sched.t_off,
                                            sched.cycles);
  } else if (sched.mode == "alternating") {
    cfg.scenario.schedule = alternating_schedule(sched.power_w, sched.t_outer,
                                                 sched.t_inner, sched.cycles);
  }  // "none": empty schedule

  cfg.params.alpha_eff_paper = spec.substrate.alpha_eff;
  apply_parameters(cfg.scenario, cfg.params);
  try {
    validate_spec(spec);
  } catch (const SpecError& err) {
    throw ConfigError(0, err.what());
  }
  cfg.gripper.finger = spec;
  return cfg;
}

std::string default_config_text() {
  return R"(# Reference configuration (all values are the shipped defaults).
# SI units unless the key name carries a unit suffix.

[actuator]
length_mm = 100
width_mm = 35
cells = 200
loop_gap_mm = 3.3

[material.paper]
k = 0.05
rho = 750
cp = 1300
E = 2.0e9
alpha_eff_ppm = -85.7643508   # effective (thermal + hygro), calibrated
thickness_um = 100

[material.bopp]
k = 0.2
rho = 910
cp = 1900
E = 2.2e9
alpha_eff_ppm = 137
thickness_um = 51

[material.adhesive]
k = 0.2
rho = 1000
cp = 1500
E = 0.1e9
alpha_eff_ppm = 100
thickness_um = 16

[material.cnt]
k = 1
rho = 600
cp = 800
E = 1.0e9
alpha_eff_ppm = 0
thickness_um = 10

# Loop footprints default to the shipped staggered-rung layout. Setting
# any geometry key below replaces that loop's footprint with a plain
# rectangular ring built from x0/x1/y0/y1/width.
[loop.outer]            # top face
#x0_mm = 14
#x1_mm = 94
#y0_mm = 1.2
#y1_mm = 33.8
#width_mm = 6.5
resistance = 1500

[loop.inner]            # bottom face
#x0_mm = 7
#x1_mm = 81
#y0_mm = 1.2
#y1_mm = 33.8
#width_mm = 6.5
resistance = 1500

[thermal]
h = 5                   # calibrated
dt = 0.1
scheme = implicit

[mechanics]
tau_mech = 71.5918993   # calibrated
t_ref_c = 23

[schedule]
mode = step             # step | cyclic | alternating | none
loop = outer
power_w = 0.75
t_on = 300

[return]
enabled = false
drive_loop = inner
drive_power_w = 0.75
p_ret_w = 0
t_act = 300
eps_d_mm = 0.1
max_return_s = 600

[gripper]
base_separation_mm = 40
opening_loop = inner
closing_loop = outer
rated_power_w = 0.75

[object]
kind = solid
outer_width_mm = 16

[run]
duration = 600
stride = 10
t_amb_c = 23
bopp_thickness_um = 51
meta = true
)";
}

}  // namespace metasim

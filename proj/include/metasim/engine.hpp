#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "metasim/control.hpp"
#include "metasim/mechanics.hpp"
#include "metasim/model.hpp"
#include "metasim/thermal.hpp"

namespace metasim {

// The calibrated free physical parameters shared by every preset.
struct ParameterSet {
  double h = 10.0;                 // W m^-2 K^-1
  double alpha_eff_paper = -30e-6;  // K^-1
  double tau_mech = 40.0;          // s
};

// Values frozen from the shipped calibration run (see calibrate module).
ParameterSet calibrated_parameters();

struct ScenarioConfig {
  ActuatorSpec spec;
  ThermalParams thermal;
  MechParams mech;
  PowerSchedule schedule;                     // used when policy is absent
  std::optional<ForcedReturnPolicy> policy;   // overrides schedule
  double T_amb = 23.0;  // degC
  double duration = 600.0;
  int stride = 1;  // record every stride-th step (t = 0 always recorded)
};

struct TimeSeriesRecord {
  double t = 0;                 // s
  double dT_outer = 0;          // K, heater mean rise
  double dT_inner = 0;          // K
  double tip_disp_mm = 0;       // Euclidean vs straight rest shape
  double ref_disp_mm = 0;       // material point 1 cm from the tip
  double kappa_fit_per_cm = 0;  // three-point circle fit
  double p_outer_w = 0;
  double p_inner_w = 0;
  double tip_z_mm = 0;  // signed transverse tip position (not serialized)
};

// Applies (h, substrate alpha_eff, tau_mech) onto a config in place.
void apply_parameters(ScenarioConfig& cfg, const ParameterSet& p);

// Step/observe loop: schedule or controller -> thermal -> curvature ->
// lag -> shape -> measurements. Deterministic.
std::vector<TimeSeriesRecord> run_scenario(const ScenarioConfig& cfg);

// Each ref_disp divided by ref_disp at the record nearest t_norm; throws
// std::invalid_argument if the series does not cover t_norm or the
// normalizer is zero.
std::vector<double> normalize_displacement(
    const std::vector<TimeSeriesRecord>& series, double t_norm = 300.0);

// Least-squares slope through the origin of kappa_fit (per cm) vs
// ambient rise (K); needs >= 3 points. Units: cm^-1 K^-1.
double sensitivity_fit(const std::vector<std::pair<double, double>>& points);

// Convenience: step scenario driving one loop at power P for t_on seconds
// (then off until `duration`), with parameters applied.
ScenarioConfig step_scenario(const std::string& loop, double P, double t_on,
                             double duration, const ParameterSet& params,
                             double bopp_um = 51.0, bool meta = true);

// First time ref_disp reaches `frac` of its value at t_ref; -1 if never.
double rise_time(const std::vector<TimeSeriesRecord>& series, double frac,
                 double t_ref);

struct ScenarioRun {
  std::string label;
  std::vector<TimeSeriesRecord> records;
};

struct PresetOutput {
  std::string name;
  std::vector<ScenarioRun> runs;
  std::vector<std::pair<std::string, double>> summary;
};

std::vector<std::string> preset_names();

// Named experiment batches: power_sweep, step_response, cyclic,
// ambient_sweep, forced_return, alternating. Throws
// std::invalid_argument on an unknown name.
PresetOutput run_preset(const std::string& name, const ParameterSet& params);

}  // namespace metasim

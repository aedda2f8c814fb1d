#pragma once

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "metasim/engine.hpp"

namespace metasim {

struct CalibrationTarget {
  std::string name;  // observable: disp_outer_mm, disp_inner_mm,
                     // dT_ratio, rise_time_s
  double value = 0;
  std::string unit;
  double weight = 1.0;
};

std::vector<CalibrationTarget> default_targets();

struct Bounds {
  double lo = 0, hi = 0;
};

// Box bounds for (h, alpha_eff_paper, tau_mech).
std::array<Bounds, 3> parameter_bounds();

// Simulated values of the calibration observables for one parameter set.
struct CalibrationObservables {
  double disp_outer_mm = 0;  // reference displacement at t = 300 s
  double disp_inner_mm = 0;
  double dT_ratio = 0;       // inner/outer heater mean rise at 300 s
  double rise_time_s = 0;    // first t with disp >= 0.9 * disp(300 s)
};
CalibrationObservables simulate_observables(const ParameterSet& p);

// Sum of weight * ((simulated - target)/target)^2 over the targets.
double objective(const ParameterSet& p,
                 const std::vector<CalibrationTarget>& targets);

// Derivative-free bounded Nelder-Mead simplex (reflection 1, expansion 2,
// contraction 0.5, shrink 0.5; candidates projected onto the box).
struct NelderMeadResult {
  std::vector<double> x;
  double f = 0;
  std::vector<double> trace;  // best value per iteration, non-increasing
  int iterations = 0;
};
NelderMeadResult nelder_mead(
    const std::function<double(const std::vector<double>&)>& f,
    const std::vector<double>& init, const std::vector<Bounds>& bounds,
    int max_iterations = 500, double tolerance = 1e-4);

struct FitResult {
  ParameterSet params;
  double objective = 0;
  std::vector<double> trace;
  int iterations = 0;
};

FitResult fit(const std::vector<CalibrationTarget>& targets,
              const ParameterSet& init, const std::array<Bounds, 3>& bounds);

// Targets CSV: header name,value,unit,weight.
std::vector<CalibrationTarget> parse_targets_csv(const std::string& text);
std::string targets_to_csv(const std::vector<CalibrationTarget>& targets);

// Fitted parameters as a config fragment ([thermal]/[material.paper]/
// [mechanics] keys) reusable by every preset.
std::string params_to_config_fragment(const ParameterSet& p);

}  // namespace metasim

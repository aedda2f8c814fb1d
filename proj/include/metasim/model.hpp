#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace metasim {

// Thermophysical + mechanical property record for one film layer.
// alpha_eff folds hygroexpansion into a single effective coefficient,
// so it may be negative (paper substrate shrinks as it heats).
struct Material {
  std::string name;
  double k = 0;          // thermal conductivity, W m^-1 K^-1
  double rho = 0;        // density, kg m^-3
  double cp = 0;         // specific heat, J kg^-1 K^-1
  double E = 0;          // Young's modulus, Pa
  double alpha_eff = 0;  // effective linear expansion, K^-1 (sign free)
  double thickness = 0;  // m
};

// Plan-view axis-aligned rectangle, meters.
struct Rect {
  double x0 = 0, x1 = 0, y0 = 0, y1 = 0;
  double area() const { return (x1 - x0) * (y1 - y0); }
};

enum class Side { top, bottom };

// One printed heater loop: two longitudinal rails plus two transverse
// rungs, covered by a BOPP strip over the full footprint.
struct HeaterLoopSpec {
  std::string name;
  Side side = Side::top;
  std::vector<Rect> footprint;
  double width = 0;       // rail/rung width w, m
  double resistance = 0;  // ohm (device diagnostic; power is commanded)
  Material bopp;          // covering strip material
};

struct ActuatorSpec {
  double length = 0;  // m
  double width = 0;   // m
  Material substrate;
  Material adhesive;  // BOPP tape adhesive, present wherever a loop is
  Material cnt;       // printed heater film
  std::vector<HeaterLoopSpec> loops;
  int cells = 200;
  double loop_gap = 0;  // plan gap between loops, m (diagnostic only)
};

class SpecError : public std::runtime_error {
 public:
  SpecError(std::string field, const std::string& what)
      : std::runtime_error(field + ": " + what), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

// Rectangular ring: rungs at both x ends spanning [y0,y1], rails between
// them along the two y edges. All strips have width w.
std::vector<Rect> ring_footprint(double x0, double x1, double y0, double y1,
                                 double w);

// Throws SpecError on any violated invariant; returns its argument.
const ActuatorSpec& validate_spec(const ActuatorSpec& spec);

// Center-to-center heater spacing diagnostic, Delta_d = w + gap.
double center_spacing(const ActuatorSpec& spec);

// 1-D reduction of the plan-view design: uniform length-wise cells with
// per-loop width-coverage fractions and lumped thermal properties.
struct DiscretizedActuator {
  ActuatorSpec spec;
  int n = 0;
  double dx = 0;
  std::vector<double> x_center;               // m
  std::vector<std::vector<double>> coverage;  // [loop][cell], fraction of W
  std::vector<std::vector<double>> power_weight;  // q_i, sums to 1 per loop
  std::vector<double> f_top, f_bot;  // per-cell coverage summed per side
  int top_loop = -1, bottom_loop = -1;  // index into spec.loops, -1 if none
  std::vector<double> heat_capacity;    // C_i, J/K
  std::vector<double> conv_area;        // A_i, m^2 (both faces)
  double axial_conductance = 0;         // G between neighbours, W/K

  double loop_area(int loop) const;  // plan footprint area, m^2
  int loop_index(const std::string& name) const;
};

// Exact fractional overlap of one loop's rectangles with each cell's
// x-band, weighted by y-extent / W.
std::vector<double> coverage_profile(const HeaterLoopSpec& loop,
                                     const ActuatorSpec& spec, int cells);

DiscretizedActuator discretize(const ActuatorSpec& spec);

// Reference device: 35 x 100 mm paper substrate, nested CNT loops with
// BOPP strips. bopp_um selects the strip thickness variant; meta=false
// keeps only the outer loop (moved to the bottom face), giving the
// conventional one-sided baseline.
ActuatorSpec default_actuator_spec(double bopp_um = 51.0, bool meta = true);

}  // namespace metasim

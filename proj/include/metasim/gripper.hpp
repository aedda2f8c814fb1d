#pragma once

#include <string>

#include "metasim/engine.hpp"

namespace metasim {

// Two identical fingers mounted straight and parallel, base tips
// separated by S; each finger's opening loop bends its tip outward.
struct GripperSpec {
  ActuatorSpec finger;
  double base_separation_mm = 40.0;
  std::string opening_loop = "inner";
  std::string closing_loop = "outer";
  double rated_power_w = 0.75;
  // Mount orientation: +1 if the finger's +z face points out of the jaw.
  int orientation_a = 1;
  int orientation_b = 1;
};

struct ObjectSpec {
  enum class Kind { solid, hollow };
  Kind kind = Kind::solid;
  double outer_width_mm = 0;
  double cavity_width_mm = 0;   // hollow only
  double tube_diameter_mm = 0;  // 0 = free context
};

const ObjectSpec& validate_object(const ObjectSpec& o);

// S plus each tip's signed outward transverse deflection.
double jaw_opening(const Shape& finger_a, const Shape& finger_b,
                   const GripperSpec& spec);

struct JawRange {
  double min_mm = 0;   // closing loop at rated power, both fingers
  double rest_mm = 0;  // = S
  double max_mm = 0;   // opening loop at rated power, both fingers
};

// Runs the calibrated finger model symmetrically at rated power for
// 300 s in each direction.
JawRange jaw_range(const GripperSpec& spec, const ParameterSet& params);

enum class GraspMode {
  close_grip,
  wall_press,
  pre_open_grip,
  insert_expand,
  infeasible,
};

std::string to_string(GraspMode m);

// Geometric feasibility classification of one (jaw, object) pair.
GraspMode grasp_mode(const JawRange& jaw, const ObjectSpec& object);

}  // namespace metasim

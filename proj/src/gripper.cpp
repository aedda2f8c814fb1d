#include "metasim/gripper.hpp"

#include <algorithm>

namespace metasim {

const ObjectSpec& validate_object(const ObjectSpec& o) {
  if (!(o.outer_width_mm > 0))
    throw std::invalid_argument("object outer width must be > 0");
  if (o.kind == ObjectSpec::Kind::hollow &&
      !(o.cavity_width_mm > 0 && o.cavity_width_mm < o.outer_width_mm))
    throw std::invalid_argument("hollow object needs 0 < cavity < outer width");
  return o;
}

double jaw_opening(const Shape& finger_a, const Shape& finger_b,
                   const GripperSpec& spec) {
  if (!(spec.base_separation_mm > 0))
    throw std::invalid_argument("base separation must be > 0");
  return spec.base_separation_mm +
         spec.orientation_a * finger_a.tip_z() * 1e3 +
         spec.orientation_b * finger_b.tip_z() * 1e3;
}

namespace {

// Signed tip z (mm) of one finger driven at rated power for 300 s.
double driven_tip_z(const GripperSpec& spec, const std::string& loop,
                    const ParameterSet& params) {
  ScenarioConfig cfg;
  cfg.spec = spec.finger;
  cfg.duration = 300;
  cfg.stride = 10;
  Segment seg{0, 300, 0, 0};
  (loop == "outer" ? seg.p_outer : seg.p_inner) = spec.rated_power_w;
  cfg.schedule.segments.push_back(seg);
  apply_parameters(cfg, params);
  return run_scenario(cfg).back().tip_z_mm;
}

}  // namespace

JawRange jaw_range(const GripperSpec& spec, const ParameterSet& params) {
  const double open_z = driven_tip_z(spec, spec.opening_loop, params);
  const double close_z = driven_tip_z(spec, spec.closing_loop, params);
  JawRange r;
  r.rest_mm = spec.base_separation_mm;
  // Both fingers move symmetrically; tips meeting floors the opening at 0.
  r.max_mm = spec.base_separation_mm +
             (spec.orientation_a + spec.orientation_b) * open_z;
  r.min_mm = std::max(
      0.0, spec.base_separation_mm +
               (spec.orientation_a + spec.orientation_b) * close_z);
  return r;
}

std::string to_string(GraspMode m) {
  switch (m) {
    case GraspMode::close_grip: return "close_grip";
    case GraspMode::wall_press: return "wall_press";
    case GraspMode::pre_open_grip: return "pre_open_grip";
    case GraspMode::insert_expand: return "insert_expand";
    case GraspMode::infeasible: return "infeasible";
  }
  return "infeasible";
}

GraspMode grasp_mode(const JawRange& jaw, const ObjectSpec& object) {
  validate_object(object);
  // Insertion is checked first: a graspable hollow object is handled by
  // expanding inside the cavity rather than squeezing the outside.
  if (object.kind == ObjectSpec::Kind::hollow &&
      jaw.rest_mm < object.cavity_width_mm &&
      jaw.max_mm > object.cavity_width_mm)
    return GraspMode::insert_expand;
  // A tube is grasped from the inside by pressing against its wall, so the
  // squeeze rule below must not capture it.
  if (object.tube_diameter_mm > 0)
    return jaw.max_mm >= object.tube_diameter_mm - object.outer_width_mm
               ? GraspMode::wall_press
               : GraspMode::infeasible;
  if (jaw.min_mm < object.outer_width_mm &&
      object.outer_width_mm < jaw.rest_mm)
    return GraspMode::close_grip;
  if (jaw.rest_mm < object.outer_width_mm &&
      object.outer_width_mm <= jaw.max_mm)
    return GraspMode::pre_open_grip;
  return GraspMode::infeasible;
}

}  // namespace metasim

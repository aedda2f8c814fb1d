#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "metasim/gripper.hpp"
#include "metasim/mechanics.hpp"

using namespace metasim;

namespace {

Shape straight(double L = 0.1) {
  return shape_from_curvature(std::vector<double>(200, 0.0), L);
}

Shape bent(double kappa, double L = 0.1) {
  return shape_from_curvature(std::vector<double>(200, kappa), L);
}

GripperSpec default_gripper() {
  GripperSpec g;
  g.finger = default_actuator_spec();
  return g;
}

}  // namespace

TEST_CASE("rest jaw opening equals the base separation") {
  const auto g = default_gripper();
  CHECK(jaw_opening(straight(), straight(), g) == doctest::Approx(40.0));
}

TEST_CASE("outward tip deflection widens the jaw symmetrically") {
  const auto g = default_gripper();
  const auto b = bent(15.0);
  const double one = jaw_opening(b, straight(), g);
  const double both = jaw_opening(b, b, g);
  CHECK(one > 40.0);
  CHECK(both - 40.0 == doctest::Approx(2.0 * (one - 40.0)).epsilon(1e-9));
}

TEST_CASE("orientation flips the sign of a finger's contribution") {
  GripperSpec g = default_gripper();
  g.orientation_b = -1;
  // Identical deflections cancel when the fingers face opposite ways.
  const auto b = bent(15.0);
  CHECK(jaw_opening(b, b, g) == doctest::Approx(40.0).epsilon(1e-9));
}

TEST_CASE("jaw_opening rejects nonpositive separation") {
  GripperSpec g = default_gripper();
  g.base_separation_mm = 0.0;
  CHECK_THROWS_AS(jaw_opening(straight(), straight(), g),
                  std::invalid_argument);
}

TEST_CASE("calibrated jaw range opens well past the grasp threshold") {
  const auto jaw = jaw_range(default_gripper(), calibrated_parameters());
  CHECK(jaw.rest_mm == doctest::Approx(40.0));
  CHECK(jaw.max_mm >= 74.0);
  CHECK(jaw.min_mm >= 0.0);
  CHECK(jaw.min_mm < jaw.rest_mm);
}

TEST_CASE("zero rated power leaves the jaw at rest") {
  GripperSpec g = default_gripper();
  g.rated_power_w = 0.0;
  const auto jaw = jaw_range(g, calibrated_parameters());
  CHECK(jaw.min_mm == doctest::Approx(40.0).epsilon(1e-9));
  CHECK(jaw.max_mm == doctest::Approx(40.0).epsilon(1e-9));
}

TEST_CASE("validate_object enforces geometric sanity") {
  ObjectSpec o;
  o.outer_width_mm = 0.0;
  CHECK_THROWS_AS(validate_object(o), std::invalid_argument);
  o.kind = ObjectSpec::Kind::hollow;
  o.outer_width_mm = 50.0;
  o.cavity_width_mm = 60.0;  // cavity wider than the object
  CHECK_THROWS_AS(validate_object(o), std::invalid_argument);
  o.cavity_width_mm = 30.0;
  CHECK_NOTHROW(validate_object(o));
}

TEST_CASE("grasp_mode classifies the reference objects") {
  const JawRange jaw{0.0, 40.0, 120.0};

  ObjectSpec sphere;  // 16 mm solid
  sphere.outer_width_mm = 16.0;
  CHECK(grasp_mode(jaw, sphere) == GraspMode::close_grip);

  ObjectSpec wide;  // 65 mm solid, wider than the rest opening
  wide.outer_width_mm = 65.0;
  CHECK(grasp_mode(jaw, wide) == GraspMode::pre_open_grip);

  ObjectSpec ring;  // hollow with a 54 mm cavity
  ring.kind = ObjectSpec::Kind::hollow;
  ring.outer_width_mm = 70.0;
  ring.cavity_width_mm = 54.0;
  CHECK(grasp_mode(jaw, ring) == GraspMode::insert_expand);

  ObjectSpec tube;  // grasped by pressing against the inner wall
  tube.outer_width_mm = 16.0;
  tube.tube_diameter_mm = 120.0;
  CHECK(grasp_mode(jaw, tube) == GraspMode::wall_press);

  ObjectSpec huge;  // beyond the jaw entirely
  huge.outer_width_mm = 300.0;
  CHECK(grasp_mode(jaw, huge) == GraspMode::infeasible);

  ObjectSpec far_tube;
  far_tube.outer_width_mm = 16.0;
  far_tube.tube_diameter_mm = 400.0;
  CHECK(grasp_mode(jaw, far_tube) == GraspMode::infeasible);
}

TEST_CASE("grasp mode names round-trip to strings") {
  CHECK(to_string(GraspMode::close_grip) == "close_grip");
  CHECK(to_string(GraspMode::wall_press) == "wall_press");
  CHECK(to_string(GraspMode::pre_open_grip) == "pre_open_grip");
  CHECK(to_string(GraspMode::insert_expand) == "insert_expand");
  CHECK(to_string(GraspMode::infeasible) == "infeasible");
}

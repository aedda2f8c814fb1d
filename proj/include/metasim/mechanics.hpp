#pragma once

#include <vector>

#include "metasim/model.hpp"

namespace metasim {

// One layer of a laminated cross-section. z is measured from the substrate
// mid-plane, +z toward the top face; b is the width fraction actually
// covered by the layer.
struct SectionLayer {
  double E = 0;      // Pa
  double alpha = 0;  // K^-1
  double z0 = 0, z1 = 0;
  double b = 1.0;  // width fraction in (0, 1]
};

struct CrossSection {
  std::vector<SectionLayer> layers;
};

struct MechParams {
  double tau_mech = 40.0;  // s; 0 disables the first-order lag
  double t_ref = 23.0;     // degC, curvature-free reference temperature
};

class MechanicsError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Curvature of a laminated section under uniform temperature offset dT,
// from the classical force/moment balance with exact per-layer polynomial
// integrals. Geometric sign convention: positive curvature bends the tip
// toward +z, so heating a high-expansion layer on the top face gives a
// negative result (the beam curls away from that face).
// Throws MechanicsError on a singular (zero-stiffness) section.
double cell_curvature(const CrossSection& section, double dT);

// Width-weighted stack of cell i: bottom BOPP/adhesive/CNT (coverage
// f_bot), full-width substrate, top CNT/adhesive/BOPP (coverage f_top).
CrossSection build_cell_section(const DiscretizedActuator& d, int cell);

// Curvature per kelvin of uniform heating, one value per cell. Curvature
// is linear in dT, so fields are assembled by scaling these.
std::vector<double> curvature_units(const DiscretizedActuator& d);

struct CurvatureField {
  std::vector<double> kappa;  // m^-1, per cell
};

// kappa_i from the local Joule rise (T_i - T_amb) plus a uniform ambient
// offset dT_amb, both applied to cell i's section.
CurvatureField curvature_field(const DiscretizedActuator& d,
                               const std::vector<double>& T, double T_amb,
                               double dT_amb);

// Clamped-root planar elastica polyline: n+1 points over arc length L.
struct Shape {
  std::vector<double> x, z;      // m, size n+1
  std::vector<double> theta;     // rad, tangent angle at each point
  double ds = 0;                 // m
  double length = 0;             // m
  double tip_x() const { return x.back(); }
  double tip_z() const { return z.back(); }
};

// Midpoint-rule integration of theta' = kappa, x' = cos theta,
// z' = sin theta from a clamped root (origin, zero slope).
Shape shape_from_curvature(const std::vector<double>& kappa, double L);

// Material point at arc length s by linear interpolation on the polyline.
void point_at(const Shape& shape, double s, double& x, double& z);

// Euclidean displacement (m) of the material point at arc length
// L - 0.01 m between the current and rest shapes.
double reference_displacement(const Shape& shape, const Shape& rest);

// Euclidean tip displacement (m) between shapes.
double tip_displacement(const Shape& shape, const Shape& rest);

// Signed curvature (m^-1) of the circle through the material points at
// s = L/4, L/2, 3L/4; 0 for collinear points. Sign follows the geometric
// convention above.
double three_point_curvature(const Shape& shape);

// Exact exponential first-order relaxation toward kappa_qs over one step.
double mech_lag(double kappa_prev, double kappa_qs, double dt,
                double tau_mech);
std::vector<double> mech_lag(const std::vector<double>& kappa_prev,
                             const std::vector<double>& kappa_qs, double dt,
                             double tau_mech);

}  // namespace metasim

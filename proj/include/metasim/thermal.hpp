#pragma once

#include <stdexcept>
#include <vector>

#include "metasim/model.hpp"

namespace metasim {

enum class Scheme { implicit, explicit_euler };

struct ThermalParams {
  double h = 10.0;  // W m^-2 K^-1
  double dt = 0.1;  // s
  Scheme scheme = Scheme::implicit;
};

struct ThermalState {
  std::vector<double> T;  // degC, per cell
  double T_amb = 23.0;    // degC
  double t = 0.0;         // s
};

class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

ThermalState make_thermal_state(const DiscretizedActuator& d, double T_amb);

// hw*dd/(k*t): conductive cross-talk suppression figure of merit.
// Throws std::invalid_argument on nonpositive input.
double crosstalk_ratio(double h, double w, double dd, double k, double t);

// G_z/G_x with G_z = k*A_footprint/t under the first loop's footprint and
// G_x = k*W*t/dd across the gap. Order-of-magnitude diagnostic only.
double out_of_plane_ratio(const DiscretizedActuator& d, double dd);

// Saturation temperature rise of a lumped body: P/(h*A_conv).
double lumped_saturation(double P, double h, double A_conv);

// Advance one dt of C_i dT_i/dt = G(T_{i-1}-T_i) + G(T_{i+1}-T_i) + Q_i
// - h*A_i*(T_i - T_amb), adiabatic ends, Q_i apportioned by each loop's
// power weights. Implicit scheme solves the tridiagonal system directly;
// the explicit scheme throws NumericalError when dt exceeds its stability
// bound.
void step_thermal(ThermalState& state, double P_outer, double P_inner,
                  const ThermalParams& params, const DiscretizedActuator& d);

// Footprint-area-weighted mean of T - T_amb over the loop's cells
// (emulates averaging several camera readings over the heater).
double heater_mean_temp(const ThermalState& state, int loop,
                        const DiscretizedActuator& d);

}  // namespace metasim

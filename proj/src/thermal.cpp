#include "metasim/thermal.hpp"

#include <cmath>

namespace metasim {

ThermalState make_thermal_state(const DiscretizedActuator& d, double T_amb) {
  ThermalState s;
  s.T.assign(d.n, T_amb);
  s.T_amb = T_amb;
  s.t = 0;
  return s;
}

double crosstalk_ratio(double h, double w, double dd, double k, double t) {
  if (!(h > 0) || !(w > 0) || !(dd > 0) || !(k > 0) || !(t > 0))
    throw std::invalid_argument("crosstalk_ratio: all inputs must be > 0");
  return h * w * dd / (k * t);
}

double out_of_plane_ratio(const DiscretizedActuator& d, double dd) {
  if (d.spec.loops.empty()) throw std::invalid_argument("no loops");
  const double area = d.loop_area(0);
  if (!(area > 0)) throw std::invalid_argument("zero footprint");
  const double t = d.spec.substrate.thickness;
  const double gz = d.spec.substrate.k * area / t;
  const double gx = d.spec.substrate.k * d.spec.width * t / dd;
  return gz / gx;
}

double lumped_saturation(double P, double h, double A_conv) {
  if (!(h > 0) || !(A_conv > 0))
    throw std::invalid_argument("lumped_saturation: h, A must be > 0");
  if (P < 0) throw std::invalid_argument("lumped_saturation: P must be >= 0");
  return P / (h * A_conv);
}

namespace {

// Q_i (W) for the commanded loop powers.
std::vector<double> cell_sources(double P_outer, double P_inner,
                                 const DiscretizedActuator& d) {
  std::vector<double> Q(d.n, 0.0);
  auto add = [&](const char* name, double P) {
    if (P == 0) return;
    const int l = d.loop_index(name);
    if (l < 0)
      throw std::invalid_argument(std::string("power commanded on absent loop ") +
                                  name);
    for (int i = 0; i < d.n; ++i) Q[i] += P * d.power_weight[l][i];
  };
  add("outer", P_outer);
  add("inner", P_inner);
  return Q;
}

}  // namespace

void step_thermal(ThermalState& state, double P_outer, double P_inner,
                  const ThermalParams& params, const DiscretizedActuator& d) {
  if (P_outer < 0 || P_inner < 0)
    throw std::invalid_argument("negative loop power");
  const int n = d.n;
  const double dt = params.dt;
  const double G = d.axial_conductance;
  const auto Q = cell_sources(P_outer, P_inner, d);

  if (params.scheme == Scheme::explicit_euler) {
    // Forward Euler; stable only while dt*(G_left+G_right+hA)/C <= 1.
    for (int i = 0; i < n; ++i) {
      const double gsum = G * ((i > 0 ? 1 : 0) + (i < n - 1 ? 1 : 0));
      if (dt * (gsum + params.h * d.conv_area[i]) > d.heat_capacity[i])
        throw NumericalError("explicit scheme unstable at this dt");
    }
    std::vector<double> T(n);
    for (int i = 0; i < n; ++i) {
      double flux = Q[i] - params.h * d.conv_area[i] * (state.T[i] - state.T_amb);
      if (i > 0) flux += G * (state.T[i - 1] - state.T[i]);
      if (i < n - 1) flux += G * (state.T[i + 1] - state.T[i]);
      T[i] = state.T[i] + dt * flux / d.heat_capacity[i];
    }
    state.T.swap(T);
  } else {
    // Backward Euler, Thomas algorithm. Adiabatic ends: the boundary rows
    // just lack one conduction term.
    std::vector<double> a(n), b(n), c(n), r(n);
    for (int i = 0; i < n; ++i) {
      const double gl = i > 0 ? G : 0.0;
      const double gr = i < n - 1 ? G : 0.0;
      a[i] = -gl;
      c[i] = -gr;
      b[i] = d.heat_capacity[i] / dt + gl + gr + params.h * d.conv_area[i];
      r[i] = d.heat_capacity[i] / dt * state.T[i] + Q[i] +
             params.h * d.conv_area[i] * state.T_amb;
    }
    for (int i = 1; i < n; ++i) {
      const double m = a[i] / b[i - 1];
      b[i] -= m * c[i - 1];
      r[i] -= m * r[i - 1];
    }
    state.T[n - 1] = r[n - 1] / b[n - 1];
    for (int i = n - 2; i >= 0; --i)
      state.T[i] = (r[i] - c[i] * state.T[i + 1]) / b[i];
  }
  for (double v : state.T)
    if (!std::isfinite(v)) throw NumericalError("non-finite temperature");
  state.t += dt;
}

double heater_mean_temp(const ThermalState& state, int loop,
                        const DiscretizedActuator& d) {
  const auto& f = d.coverage.at(loop);
  double num = 0, den = 0;
  for (int i = 0; i < d.n; ++i) {
    num += f[i] * (state.T[i] - state.T_amb);
    den += f[i];
  }
  if (!(den > 0)) throw std::invalid_argument("empty loop footprint");
  return num / den;
}

}  // namespace metasim

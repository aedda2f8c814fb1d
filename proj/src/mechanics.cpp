#include "metasim/mechanics.hpp"

#include <cmath>

namespace metasim {

double cell_curvature(const CrossSection& section, double dT) {
  // Extensional/coupling/bending stiffness and thermal force/moment of
  // the laminate, with strain measured as eps(z) = eps0 + kappa_s * z.
  double A = 0, B = 0, D = 0, Nth = 0, Mth = 0;
  for (const auto& l : section.layers) {
    const double Eb = l.E * l.b;
    const double d1 = l.z1 - l.z0;
    const double d2 = (l.z1 * l.z1 - l.z0 * l.z0) / 2.0;
    const double d3 = (l.z1 * l.z1 * l.z1 - l.z0 * l.z0 * l.z0) / 3.0;
    A += Eb * d1;
    B += Eb * d2;
    D += Eb * d3;
    Nth += Eb * l.alpha * dT * d1;
    Mth += Eb * l.alpha * dT * d2;
  }
  const double det = A * D - B * B;
  if (!(A > 0) || !(det > 0))
    throw MechanicsError("singular cross-section (zero stiffness)");
  const double kappa_strain = (A * Mth - B * Nth) / det;
  // Strain convention eps = eps0 + kappa_s*z corresponds to geometric
  // curvature -kappa_s (tip-toward-+z positive).
  return -kappa_strain;
}

CrossSection build_cell_section(const DiscretizedActuator& d, int cell) {
  const auto& s = d.spec;
  CrossSection cs;
  const double half = s.substrate.thickness / 2.0;
  auto push = [&](const Material& m, double z0, double z1, double b) {
    cs.layers.push_back({m.E, m.alpha_eff, z0, z1, b});
  };

  // Bottom side, outward from the substrate face: CNT, adhesive, BOPP.
  if (d.bottom_loop >= 0) {
    const double f = d.coverage[d.bottom_loop][cell];
    if (f > 0) {
      const auto& bopp = s.loops[d.bottom_loop].bopp;
      double z = -half;
      push(s.cnt, z - s.cnt.thickness, z, f);
      z -= s.cnt.thickness;
      push(s.adhesive, z - s.adhesive.thickness, z, f);
      z -= s.adhesive.thickness;
      push(bopp, z - bopp.thickness, z, f);
    }
  }
  push(s.substrate, -half, half, 1.0);
  if (d.top_loop >= 0) {
    const double f = d.coverage[d.top_loop][cell];
    if (f > 0) {
      const auto& bopp = s.loops[d.top_loop].bopp;
      double z = half;
      push(s.cnt, z, z + s.cnt.thickness, f);
      z += s.cnt.thickness;
      push(s.adhesive, z, z + s.adhesive.thickness, f);
      z += s.adhesive.thickness;
      push(bopp, z, z + bopp.thickness, f);
    }
  }
  return cs;
}

std::vector<double> curvature_units(const DiscretizedActuator& d) {
  std::vector<double> u(d.n);
  for (int i = 0; i < d.n; ++i)
    u[i] = cell_curvature(build_cell_section(d, i), 1.0);
  return u;
}

CurvatureField curvature_field(const DiscretizedActuator& d,
                               const std::vector<double>& T, double T_amb,
                               double dT_amb) {
  const auto units = curvature_units(d);
  CurvatureField f;
  f.kappa.resize(d.n);
  for (int i = 0; i < d.n; ++i)
    f.kappa[i] = units[i] * ((T[i] - T_amb) + dT_amb);
  return f;
}

Shape shape_from_curvature(const std::vector<double>& kappa, double L) {
  const int n = (int)kappa.size();
  Shape s;
  s.length = L;
  s.ds = L / n;
  s.x.assign(n + 1, 0.0);
  s.z.assign(n + 1, 0.0);
  s.theta.assign(n + 1, 0.0);
  for (int k = 0; k < n; ++k) {
    const double th_mid = s.theta[k] + kappa[k] * s.ds / 2.0;
    s.x[k + 1] = s.x[k] + s.ds * std::cos(th_mid);
    s.z[k + 1] = s.z[k] + s.ds * std::sin(th_mid);
    s.theta[k + 1] = s.theta[k] + kappa[k] * s.ds;
  }
  return s;
}

void point_at(const Shape& shape, double s, double& x, double& z) {
  const int n = (int)shape.x.size() - 1;
  double u = s / shape.ds;
  if (u <= 0) {
    x = shape.x.front();
    z = shape.z.front();
    return;
  }
  if (u >= n) {
    x = shape.x.back();
    z = shape.z.back();
    return;
  }
  const int k = (int)u;
  const double w = u - k;
  x = shape.x[k] + w * (shape.x[k + 1] - shape.x[k]);
  z = shape.z[k] + w * (shape.z[k + 1] - shape.z[k]);
}

double reference_displacement(const Shape& shape, const Shape& rest) {
  const double s = shape.length - 0.01;
  double x0, z0, x1, z1;
  point_at(rest, s, x0, z0);
  point_at(shape, s, x1, z1);
  return std::hypot(x1 - x0, z1 - z0);
}

double tip_displacement(const Shape& shape, const Shape& rest) {
  return std::hypot(shape.tip_x() - rest.tip_x(), shape.tip_z() - rest.tip_z());
}

double three_point_curvature(const Shape& shape) {
  const double L = shape.length;
  double x1, z1, x2, z2, x3, z3;
  point_at(shape, L / 4, x1, z1);
  point_at(shape, L / 2, x2, z2);
  point_at(shape, 3 * L / 4, x3, z3);
  const double ax = x2 - x1, az = z2 - z1;
  const double bx = x3 - x2, bz = z3 - z2;
  const double cross = ax * bz - az * bx;
  const double la = std::hypot(ax, az);
  const double lb = std::hypot(bx, bz);
  const double lc = std::hypot(x3 - x1, z3 - z1);
  if (la == 0 || lb == 0 || lc == 0) return 0.0;
  return 2.0 * cross / (la * lb * lc);
}

double mech_lag(double kappa_prev, double kappa_qs, double dt,
                double tau_mech) {
  if (tau_mech <= 0) return kappa_qs;
  const double decay = std::exp(-dt / tau_mech);
  return kappa_qs + (kappa_prev - kappa_qs) * decay;
}

std::vector<double> mech_lag(const std::vector<double>& kappa_prev,
                             const std::vector<double>& kappa_qs, double dt,
                             double tau_mech) {
  std::vector<double> out(kappa_qs.size());
  for (size_t i = 0; i < out.size(); ++i)
    out[i] = mech_lag(kappa_prev[i], kappa_qs[i], dt, tau_mech);
  return out;
}

}  // namespace metasim

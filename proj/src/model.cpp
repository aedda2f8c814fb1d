#include "metasim/model.hpp"

#include <algorithm>
#include <cmath>

namespace metasim {

namespace {

void check_material(const Material& m, const std::string& prefix) {
  auto bad = [&](const std::string& f, const std::string& msg) {
    throw SpecError(prefix + "." + f, msg);
  };
  if (!(m.k > 0)) bad("k", "must be > 0");
  if (!(m.rho > 0)) bad("rho", "must be > 0");
  if (!(m.cp > 0)) bad("cp", "must be > 0");
  if (!(m.E > 0)) bad("E", "must be > 0");
  if (!(m.thickness > 0)) bad("thickness", "must be > 0");
  if (!std::isfinite(m.alpha_eff)) bad("alpha_eff", "must be finite");
}

bool overlaps(const Rect& a, const Rect& b) {
  return a.x0 < b.x1 && b.x0 < a.x1 && a.y0 < b.y1 && b.y0 < a.y1;
}

}  // namespace

std::vector<Rect> ring_footprint(double x0, double x1, double y0, double y1,
                                 double w) {
  // Degenerate rings (shorter than two rungs) collapse to a single block.
  if (x1 - x0 <= 2 * w || y1 - y0 <= 2 * w) return {{x0, x1, y0, y1}};
  return {
      {x0, x0 + w, y0, y1},       // root-side rung
      {x1 - w, x1, y0, y1},       // tip-side rung
      {x0 + w, x1 - w, y0, y0 + w},  // rail
      {x0 + w, x1 - w, y1 - w, y1},  // rail
  };
}

const ActuatorSpec& validate_spec(const ActuatorSpec& spec) {
  if (!(spec.length > 0)) throw SpecError("actuator.length", "must be > 0");
  if (!(spec.width > 0)) throw SpecError("actuator.width", "must be > 0");
  if (spec.cells < 10) throw SpecError("actuator.cells", "must be >= 10");
  check_material(spec.substrate, "substrate");
  check_material(spec.adhesive, "adhesive");
  check_material(spec.cnt, "cnt");

  int top = 0, bot = 0;
  for (const auto& loop : spec.loops) {
    const std::string p = "loop." + loop.name;
    (loop.side == Side::top ? top : bot) += 1;
    if (!(loop.width > 0)) throw SpecError(p + ".width", "must be > 0");
    if (!(loop.resistance > 0))
      throw SpecError(p + ".resistance", "must be > 0");
    check_material(loop.bopp, p + ".bopp");
    const double tol = 1e-12;
    for (const auto& r : loop.footprint) {
      if (!(r.x1 > r.x0) || !(r.y1 > r.y0))
        throw SpecError(p + ".footprint", "degenerate rectangle");
      if (r.x0 < -tol || r.x1 > spec.length + tol || r.y0 < -tol ||
          r.y1 > spec.width + tol)
        throw SpecError(p + ".footprint", "rectangle outside actuator plan");
    }
    for (size_t i = 0; i < loop.footprint.size(); ++i)
      for (size_t j = i + 1; j < loop.footprint.size(); ++j)
        if (overlaps(loop.footprint[i], loop.footprint[j]))
          throw SpecError(p + ".footprint", "same-side rectangles overlap");
  }
  // Both loops of a dual-sided device share the plan; only same-side overlap
  // is forbidden.
  for (size_t a = 0; a < spec.loops.size(); ++a)
    for (size_t b = a + 1; b < spec.loops.size(); ++b)
      if (spec.loops[a].side == spec.loops[b].side)
        for (const auto& ra : spec.loops[a].footprint)
          for (const auto& rb : spec.loops[b].footprint)
            if (overlaps(ra, rb))
              throw SpecError("loops", "same-side loops overlap");
  if (top > 1) throw SpecError("loops", "more than one loop on top side");
  if (bot > 1) throw SpecError("loops", "more than one loop on bottom side");
  return spec;
}

double center_spacing(const ActuatorSpec& spec) {
  double w = spec.loops.empty() ? 0.0 : spec.loops.front().width;
  return w + spec.loop_gap;
}

std::vector<double> coverage_profile(const HeaterLoopSpec& loop,
                                     const ActuatorSpec& spec, int cells) {
  std::vector<double> f(cells, 0.0);
  const double dx = spec.length / cells;
  for (const auto& r : loop.footprint) {
    const double yfrac = (r.y1 - r.y0) / spec.width;
    int i0 = std::max(0, (int)std::floor(r.x0 / dx));
    int i1 = std::min(cells - 1, (int)std::floor((r.x1 - 1e-15) / dx));
    for (int i = i0; i <= i1; ++i) {
      const double lo = std::max(r.x0, i * dx);
      const double hi = std::min(r.x1, (i + 1) * dx);
      if (hi > lo) f[i] += (hi - lo) / dx * yfrac;
    }
  }
  return f;
}

DiscretizedActuator discretize(const ActuatorSpec& spec) {
  validate_spec(spec);
  DiscretizedActuator d;
  d.spec = spec;
  d.n = spec.cells;
  d.dx = spec.length / spec.cells;
  d.x_center.resize(d.n);
  for (int i = 0; i < d.n; ++i) d.x_center[i] = (i + 0.5) * d.dx;

  d.f_top.assign(d.n, 0.0);
  d.f_bot.assign(d.n, 0.0);
  for (size_t l = 0; l < spec.loops.size(); ++l) {
    const auto& loop = spec.loops[l];
    auto f = coverage_profile(loop, spec, d.n);
    // q_i proportional to the cell footprint area of this loop.
    double total = 0;
    for (double v : f) total += v;
    std::vector<double> q(d.n, 0.0);
    if (total > 0)
      for (int i = 0; i < d.n; ++i) q[i] = f[i] / total;
    for (int i = 0; i < d.n; ++i)
      (loop.side == Side::top ? d.f_top : d.f_bot)[i] += f[i];
    if (loop.side == Side::top)
      d.top_loop = (int)l;
    else
      d.bottom_loop = (int)l;
    d.coverage.push_back(std::move(f));
    d.power_weight.push_back(std::move(q));
  }

  const double cell_area = d.dx * spec.width;
  const auto& sub = spec.substrate;
  d.heat_capacity.resize(d.n);
  d.conv_area.resize(d.n);
  for (int i = 0; i < d.n; ++i) {
    double c = sub.rho * sub.cp * sub.thickness;  // J m^-2 K^-1
    for (size_t l = 0; l < spec.loops.size(); ++l) {
      const auto& loop = spec.loops[l];
      const double f = d.coverage[l][i];
      c += f * (spec.cnt.rho * spec.cnt.cp * spec.cnt.thickness +
                spec.adhesive.rho * spec.adhesive.cp * spec.adhesive.thickness +
                loop.bopp.rho * loop.bopp.cp * loop.bopp.thickness);
    }
    d.heat_capacity[i] = c * cell_area;
    d.conv_area[i] = 2.0 * cell_area;  // both faces
  }
  // In-plane conduction through the substrate only.
  d.axial_conductance = sub.k * spec.width * sub.thickness / d.dx;
  return d;
}

double DiscretizedActuator::loop_area(int loop) const {
  double a = 0;
  for (const auto& r : spec.loops.at(loop).footprint) a += r.area();
  return a;
}

int DiscretizedActuator::loop_index(const std::string& name) const {
  for (size_t l = 0; l < spec.loops.size(); ++l)
    if (spec.loops[l].name == name) return (int)l;
  return -1;
}

ActuatorSpec default_actuator_spec(double bopp_um, bool meta) {
  ActuatorSpec s;
  s.length = 100e-3;
  s.width = 35e-3;
  s.cells = 200;
  s.loop_gap = 3.3e-3;
  s.substrate = {"paper", 0.05, 750, 1300, 2.0e9, -85.7643508e-6, 100e-6};
  s.adhesive = {"adhesive", 0.2, 1000, 1500, 0.1e9, 100e-6, 16e-6};
  s.cnt = {"cnt", 1.0, 600, 800, 1.0e9, 0.0, 10e-6};
  Material bopp{"bopp", 0.2, 910, 1900, 2.2e9, 137e-6, bopp_um * 1e-6};

  // Footprints in mm. Both loops keep equal rail coverage over the
  // central 25-75 mm band (so uniform ambient heating bends that band
  // nowhere), while each loop's wide transverse rung -- the part that
  // actually drives bending -- sits outside that band. The outer loop
  // carries an extra far-end rung past the reference point, which heats
  // without bending it, spreading its power over a longer footprint
  // (lower mean rise) than the inner loop.
  const double y0 = 1.2, y1 = 33.8;  // mm
  const double wr = 9.0;             // wide rail strip width, mm
  const double nr = 2.0;             // narrow feed strip width, mm
  auto R = [](double x0, double x1, double ya, double yb) {
    return Rect{x0 * 1e-3, x1 * 1e-3, ya * 1e-3, yb * 1e-3};
  };

  HeaterLoopSpec outer;
  outer.name = "outer";
  outer.side = meta ? Side::top : Side::bottom;
  outer.footprint = {
      R(14, 21, y0, y1),           // drive rung
      R(88, 94, y0, y1),           // far-end rung
      R(21, 88, y0, y0 + wr),      // rails
      R(21, 88, y1 - wr, y1),
  };
  outer.width = 6.5e-3;  // nominal printed trace width (diagnostic)
  outer.resistance = 1500;
  outer.bopp = bopp;
  s.loops.push_back(outer);

  if (meta) {
    HeaterLoopSpec inner;
    inner.name = "inner";
    inner.side = Side::bottom;
    inner.footprint = {
        R(7, 14, y0, y1),            // drive rung
        R(75, 81, y0, y1),           // far rung
        R(14, 25, y0, y0 + nr),      // narrow feeds to the rail band
        R(14, 25, y1 - nr, y1),
        R(25, 75, y0, y0 + wr),      // rails, matching the outer band
        R(25, 75, y1 - wr, y1),
    };
    inner.width = 6.5e-3;
    inner.resistance = 1500;
    inner.bopp = bopp;
    s.loops.push_back(inner);
  }
  return s;
}

}  // namespace metasim

#include "metasim/engine.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace metasim {

ParameterSet calibrated_parameters() {
  // Frozen from the shipped calibration run (tools: `calibrate`).
  return {5.0, -85.7643508e-6, 71.5918993};
}

void apply_parameters(ScenarioConfig& cfg, const ParameterSet& p) {
  cfg.thermal.h = p.h;
  cfg.spec.substrate.alpha_eff = p.alpha_eff_paper;
  cfg.mech.tau_mech = p.tau_mech;
}

std::vector<TimeSeriesRecord> run_scenario(const ScenarioConfig& cfg) {
  if (!(cfg.duration > 0)) throw std::invalid_argument("duration must be > 0");
  if (cfg.stride < 1) throw std::invalid_argument("stride must be >= 1");
  cfg.schedule.validate();

  const auto d = discretize(cfg.spec);
  const auto units = curvature_units(d);
  const Shape rest =
      shape_from_curvature(std::vector<double>(d.n, 0.0), cfg.spec.length);
  const double dT_amb = cfg.T_amb - cfg.mech.t_ref;

  ThermalState state = make_thermal_state(d, cfg.T_amb);
  std::optional<ForcedReturnController> controller;
  if (cfg.policy) controller.emplace(*cfg.policy);

  // The device is assumed equilibrated at ambient before t = 0, so the
  // effective curvature starts at its ambient quasi-static value.
  std::vector<double> kappa_eff(d.n), kappa_qs(d.n);
  for (int i = 0; i < d.n; ++i) kappa_eff[i] = units[i] * dT_amb;

  const int steps = (int)std::llround(cfg.duration / cfg.thermal.dt);
  std::vector<TimeSeriesRecord> out;
  out.reserve((size_t)steps / cfg.stride + 2);

  double p_outer = 0, p_inner = 0, last_ref_mm = 0;
  auto observe = [&](double t) {
    const Shape shape = shape_from_curvature(kappa_eff, cfg.spec.length);
    TimeSeriesRecord r;
    r.t = t;
    if (d.loop_index("outer") >= 0)
      r.dT_outer = heater_mean_temp(state, d.loop_index("outer"), d);
    if (d.loop_index("inner") >= 0)
      r.dT_inner = heater_mean_temp(state, d.loop_index("inner"), d);
    r.tip_disp_mm = tip_displacement(shape, rest) * 1e3;
    r.ref_disp_mm = reference_displacement(shape, rest) * 1e3;
    r.kappa_fit_per_cm = three_point_curvature(shape) / 100.0;
    r.p_outer_w = p_outer;
    r.p_inner_w = p_inner;
    r.tip_z_mm = shape.tip_z() * 1e3;
    last_ref_mm = r.ref_disp_mm;
    return r;
  };

  out.push_back(observe(0.0));
  for (int k = 1; k <= steps; ++k) {
    const double t_prev = (k - 1) * cfg.thermal.dt;
    if (controller) {
      const auto cmd = controller->step(t_prev, last_ref_mm);
      p_outer = cmd.p_outer;
      p_inner = cmd.p_inner;
    } else {
      std::tie(p_outer, p_inner) = cfg.schedule.power_at(t_prev);
    }
    step_thermal(state, p_outer, p_inner, cfg.thermal, d);
    for (int i = 0; i < d.n; ++i)
      kappa_qs[i] = units[i] * ((state.T[i] - state.T_amb) + dT_amb);
    kappa_eff = mech_lag(kappa_eff, kappa_qs, cfg.thermal.dt, cfg.mech.tau_mech);
    if (controller) {
      // The controller senses displacement every step, not just at
      // recorded samples, so it cannot jump across the rest band.
      const Shape s = shape_from_curvature(kappa_eff, cfg.spec.length);
      last_ref_mm = reference_displacement(s, rest) * 1e3;
    }
    if (k % cfg.stride == 0 || k == steps) out.push_back(observe(state.t));
  }
  return out;
}

namespace {

const TimeSeriesRecord& record_nearest(
    const std::vector<TimeSeriesRecord>& series, double t) {
  if (series.empty()) throw std::invalid_argument("empty series");
  size_t best = 0;
  for (size_t i = 1; i < series.size(); ++i)
    if (std::abs(series[i].t - t) < std::abs(series[best].t - t)) best = i;
  return series[best];
}

std::string fmt(const char* pattern, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, pattern, v);
  return buf;
}

}  // namespace

std::vector<double> normalize_displacement(
    const std::vector<TimeSeriesRecord>& series, double t_norm) {
  if (series.empty() || series.back().t < t_norm)
    throw std::invalid_argument("series does not cover the normalization time");
  const double denom = record_nearest(series, t_norm).ref_disp_mm;
  if (denom == 0) throw std::invalid_argument("zero displacement at t_norm");
  std::vector<double> out(series.size());
  for (size_t i = 0; i < series.size(); ++i)
    out[i] = series[i].ref_disp_mm / denom;
  return out;
}

double sensitivity_fit(const std::vector<std::pair<double, double>>& points) {
  if (points.size() < 3)
    throw std::invalid_argument("sensitivity_fit needs >= 3 points");
  double sxx = 0, sxy = 0;
  for (const auto& [x, y] : points) {
    sxx += x * x;
    sxy += x * y;
  }
  if (!(sxx > 0)) throw std::invalid_argument("degenerate abscissae");
  return sxy / sxx;
}

ScenarioConfig step_scenario(const std::string& loop, double P, double t_on,
                             double duration, const ParameterSet& params,
                             double bopp_um, bool meta) {
  ScenarioConfig cfg;
  cfg.spec = default_actuator_spec(bopp_um, meta);
  cfg.duration = duration;
  cfg.stride = 10;
  if (P > 0) {
    Segment seg{0, t_on, 0, 0};
    (loop == "outer" ? seg.p_outer : seg.p_inner) = P;
    cfg.schedule.segments.push_back(seg);
  }
  apply_parameters(cfg, params);
  return cfg;
}

double rise_time(const std::vector<TimeSeriesRecord>& series, double frac,
                 double t_ref) {
  const double target = frac * record_nearest(series, t_ref).ref_disp_mm;
  for (const auto& r : series)
    if (r.ref_disp_mm >= target && target > 0) return r.t;
  return -1.0;
}

std::vector<std::string> preset_names() {
  return {"power_sweep", "step_response", "cyclic",
          "ambient_sweep", "forced_return", "alternating"};
}

namespace {

// Ordinary least squares y = a + b*x; returns (slope, r2).
std::pair<double, double> linear_fit(const std::vector<double>& x,
                                     const std::vector<double>& y) {
  const double n = (double)x.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
  for (size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
    syy += y[i] * y[i];
  }
  const double cov = sxy - sx * sy / n;
  const double vx = sxx - sx * sx / n;
  const double vy = syy - sy * sy / n;
  const double slope = cov / vx;
  const double r2 = vy > 0 ? cov * cov / (vx * vy) : 1.0;
  return {slope, r2};
}

PresetOutput preset_power_sweep(const ParameterSet& params) {
  PresetOutput out{"power_sweep", {}, {}};
  for (double bopp : {25.0, 38.0, 51.0}) {
    std::vector<double> P, disp;
    for (int k = 0; k <= 6; ++k) {
      const double p = 0.75 * k / 6.0;
      auto cfg = step_scenario("outer", p, 300, 300, params, bopp);
      auto rec = run_scenario(cfg);
      const double d300 = record_nearest(rec, 300).ref_disp_mm;
      P.push_back(p);
      disp.push_back(d300);
      out.runs.push_back({"bopp" + fmt("%.0f", bopp) + "_p" + fmt("%.3f", p),
                          std::move(rec)});
    }
    const auto [slope, r2] = linear_fit(P, disp);
    const std::string suffix = "_bopp" + fmt("%.0f", bopp) + "um";
    out.summary.emplace_back("slope_mm_per_w" + suffix, slope);
    out.summary.emplace_back("r2" + suffix, r2);
    out.summary.emplace_back("disp_0p75w_mm" + suffix, disp.back());
  }
  return out;
}

PresetOutput preset_step_response(const ParameterSet& params) {
  PresetOutput out{"step_response", {}, {}};
  for (const std::string loop : {"outer", "inner"}) {
    auto cfg = step_scenario(loop, 0.75, 600, 1200, params);
    auto rec = run_scenario(cfg);
    out.summary.emplace_back("disp_300s_mm_" + loop,
                             record_nearest(rec, 300).ref_disp_mm);
    out.summary.emplace_back("dT_300s_K_" + loop,
                             loop == "outer" ? record_nearest(rec, 300).dT_outer
                                             : record_nearest(rec, 300).dT_inner);
    out.summary.emplace_back("rise_time_90pct_s_" + loop,
                             rise_time(rec, 0.9, 300));
    out.runs.push_back({loop, std::move(rec)});
  }
  return out;
}

PresetOutput preset_cyclic(const ParameterSet& params) {
  PresetOutput out{"cyclic", {}, {}};
  ScenarioConfig cfg;
  cfg.spec = default_actuator_spec();
  cfg.schedule = cyclic_schedule("outer", 0.75, 60, 60, 5);
  cfg.duration = cfg.schedule.segments.back().t0 + 120;
  cfg.stride = 10;
  apply_parameters(cfg, params);
  auto rec = run_scenario(cfg);
  for (int c = 0; c < 5; ++c) {
    double lo = 1e300, hi = -1e300;
    for (const auto& r : rec)
      if (r.t >= c * 120.0 && r.t < (c + 1) * 120.0) {
        lo = std::min(lo, r.ref_disp_mm);
        hi = std::max(hi, r.ref_disp_mm);
      }
    out.summary.emplace_back("peak_to_peak_mm_cycle" + std::to_string(c + 1),
                             hi - lo);
  }
  out.runs.push_back({"outer_cyclic", std::move(rec)});
  // Bidirectionality companion runs: signed transverse tip positions.
  for (const std::string loop : {"outer", "inner"}) {
    auto scfg = step_scenario(loop, 0.75, 300, 300, params);
    auto srec = run_scenario(scfg);
    out.summary.emplace_back("tip_z_300s_mm_" + loop,
                             record_nearest(srec, 300).tip_z_mm);
    out.runs.push_back({loop + "_step", std::move(srec)});
  }
  return out;
}

PresetOutput preset_ambient_sweep(const ParameterSet& params) {
  PresetOutput out{"ambient_sweep", {}, {}};
  for (const bool meta : {true, false}) {
    std::vector<std::pair<double, double>> pts;
    for (int dT = 0; dT <= 20; dT += 2) {
      ScenarioConfig cfg;
      cfg.spec = default_actuator_spec(51.0, meta);
      cfg.duration = 1.0;
      apply_parameters(cfg, params);
      cfg.T_amb = cfg.mech.t_ref + dT;
      auto rec = run_scenario(cfg);
      if (dT <= 10) pts.emplace_back(dT, rec.back().kappa_fit_per_cm);
      out.runs.push_back({std::string(meta ? "meta" : "conv") + "_dT" +
                              std::to_string(dT),
                          std::move(rec)});
    }
    out.summary.emplace_back(meta ? "c_meta_per_cm_K" : "c_conv_per_cm_K",
                             sensitivity_fit(pts));
  }
  // Powered runs across ambient (displacement vs ambient temperature).
  for (int dT : {0, 10, 20}) {
    auto cfg = step_scenario("outer", 0.75, 300, 300, params);
    cfg.T_amb = cfg.mech.t_ref + dT;
    auto rec = run_scenario(cfg);
    out.summary.emplace_back("disp_0p75w_dT" + std::to_string(dT) + "_mm",
                             record_nearest(rec, 300).ref_disp_mm);
    out.runs.push_back({"meta_powered_dT" + std::to_string(dT), std::move(rec)});
  }
  return out;
}

PresetOutput preset_forced_return(const ParameterSet& params) {
  PresetOutput out{"forced_return", {}, {}};
  for (const std::string drive : {"outer", "inner"}) {
    for (double p_ret : {0.0, 0.25, 0.5, 0.75}) {
      ScenarioConfig cfg;
      cfg.spec = default_actuator_spec();
      cfg.policy = ForcedReturnPolicy{drive, 0.75, p_ret, 300, 0.1, 600};
      cfg.duration = 900;
      cfg.stride = 10;
      apply_parameters(cfg, params);
      auto rec = run_scenario(cfg);
      const double d300 = record_nearest(rec, 300).ref_disp_mm;
      double t10 = -1;
      for (const auto& r : rec)
        if (r.t >= 300 && r.ref_disp_mm <= 0.1 * d300) {
          t10 = r.t - 300;
          break;
        }
      const std::string label = drive + "_ret" + fmt("%.2f", p_ret);
      out.summary.emplace_back("t10_s_" + label, t10);
      if (p_ret == 0)
        out.summary.emplace_back(
            "norm_30s_after_cutoff_" + drive,
            record_nearest(rec, 330).ref_disp_mm / d300);
      out.runs.push_back({label, std::move(rec)});
    }
  }
  return out;
}

PresetOutput preset_alternating(const ParameterSet& params) {
  PresetOutput out{"alternating", {}, {}};
  ScenarioConfig cfg;
  cfg.spec = default_actuator_spec();
  cfg.schedule = alternating_schedule(0.75, 50, 30, 5);
  cfg.duration = cfg.schedule.duration();
  cfg.stride = 10;
  apply_parameters(cfg, params);
  auto rec = run_scenario(cfg);
  double lo = 1e300, hi = -1e300;
  for (const auto& r : rec) {
    lo = std::min(lo, r.tip_z_mm);
    hi = std::max(hi, r.tip_z_mm);
  }
  out.summary.emplace_back("tip_z_min_mm", lo);
  out.summary.emplace_back("tip_z_max_mm", hi);
  out.runs.push_back({"alternating", std::move(rec)});
  return out;
}

}  // namespace

PresetOutput run_preset(const std::string& name, const ParameterSet& params) {
  if (name == "power_sweep") return preset_power_sweep(params);
  if (name == "step_response") return preset_step_response(params);
  if (name == "cyclic") return preset_cyclic(params);
  if (name == "ambient_sweep") return preset_ambient_sweep(params);
  if (name == "forced_return") return preset_forced_return(params);
  if (name == "alternating") return preset_alternating(params);
  throw std::invalid_argument("unknown preset: " + name);
}

}  // namespace metasim

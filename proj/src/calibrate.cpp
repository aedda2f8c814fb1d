#include "metasim/calibrate.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace metasim {

std::vector<CalibrationTarget> default_targets() {
  return {
      {"disp_outer_mm", 28.0, "mm", 1.0},
      {"disp_inner_mm", 37.0, "mm", 1.0},
      {"dT_ratio", 1.32, "1", 1.0},
      {"rise_time_s", 175.0, "s", 1.0},
  };
}

std::array<Bounds, 3> parameter_bounds() {
  return {{{5.0, 30.0}, {-200e-6, 4e-6}, {0.0, 200.0}}};
}

CalibrationObservables simulate_observables(const ParameterSet& p) {
  CalibrationObservables obs;
  auto outer = run_scenario(step_scenario("outer", 0.75, 300, 300, p));
  auto inner = run_scenario(step_scenario("inner", 0.75, 300, 300, p));
  const auto& ro = outer.back();
  const auto& ri = inner.back();
  obs.disp_outer_mm = ro.ref_disp_mm;
  obs.disp_inner_mm = ri.ref_disp_mm;
  obs.dT_ratio = ro.dT_outer > 0 ? ri.dT_inner / ro.dT_outer : 0.0;
  obs.rise_time_s = rise_time(outer, 0.9, 300);
  return obs;
}

double objective(const ParameterSet& p,
                 const std::vector<CalibrationTarget>& targets) {
  const auto obs = simulate_observables(p);
  auto value_of = [&](const std::string& name) {
    if (name == "disp_outer_mm") return obs.disp_outer_mm;
    if (name == "disp_inner_mm") return obs.disp_inner_mm;
    if (name == "dT_ratio") return obs.dT_ratio;
    if (name == "rise_time_s") return obs.rise_time_s;
    throw std::invalid_argument("unknown calibration observable: " + name);
  };
  double sum = 0;
  for (const auto& t : targets) {
    if (!(t.weight > 0)) throw std::invalid_argument("nonpositive weight");
    if (t.value == 0) throw std::invalid_argument("zero calibration target");
    const double rel = (value_of(t.name) - t.value) / t.value;
    sum += t.weight * rel * rel;
  }
  return sum;
}

namespace {

std::vector<double> clamp_to(const std::vector<double>& x,
                             const std::vector<Bounds>& b) {
  std::vector<double> y = x;
  for (size_t i = 0; i < y.size(); ++i)
    y[i] = std::clamp(y[i], b[i].lo, b[i].hi);
  return y;
}

}  // namespace

NelderMeadResult nelder_mead(
    const std::function<double(const std::vector<double>&)>& f,
    const std::vector<double>& init, const std::vector<Bounds>& bounds,
    int max_iterations, double tolerance) {
  const size_t n = init.size();
  if (bounds.size() != n) throw std::invalid_argument("bounds/init mismatch");
  for (size_t i = 0; i < n; ++i)
    if (init[i] < bounds[i].lo || init[i] > bounds[i].hi)
      throw std::invalid_argument("initial point outside bounds");

  // Initial simplex: init plus one vertex per axis, offset by 5% of the
  // bound range (flipped if that would leave the box).
  std::vector<std::vector<double>> X;
  X.push_back(init);
  for (size_t i = 0; i < n; ++i) {
    auto v = init;
    const double step = 0.05 * (bounds[i].hi - bounds[i].lo);
    v[i] = (v[i] + step <= bounds[i].hi) ? v[i] + step : v[i] - step;
    X.push_back(v);
  }
  std::vector<double> F(X.size());
  for (size_t i = 0; i < X.size(); ++i) {
    F[i] = f(X[i]);
    if (!std::isfinite(F[i]))
      throw std::invalid_argument("non-finite objective");
  }

  NelderMeadResult res;
  int it = 0;
  for (; it < max_iterations; ++it) {
    // Order vertices best -> worst.
    std::vector<size_t> order(X.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](size_t a, size_t b) { return F[a] < F[b]; });
    std::vector<std::vector<double>> Xs;
    std::vector<double> Fs;
    for (size_t idx : order) {
      Xs.push_back(X[idx]);
      Fs.push_back(F[idx]);
    }
    X.swap(Xs);
    F.swap(Fs);
    res.trace.push_back(F[0]);

    // Convergence: simplex diameter relative to the bound ranges.
    double diam = 0;
    for (size_t i = 1; i < X.size(); ++i)
      for (size_t j = 0; j < n; ++j) {
        const double range = bounds[j].hi - bounds[j].lo;
        if (range > 0)
          diam = std::max(diam, std::abs(X[i][j] - X[0][j]) / range);
      }
    if (diam < tolerance) break;

    std::vector<double> centroid(n, 0.0);
    for (size_t i = 0; i + 1 < X.size(); ++i)
      for (size_t j = 0; j < n; ++j) centroid[j] += X[i][j] / (double)n;

    auto along = [&](double coeff) {
      std::vector<double> x(n);
      for (size_t j = 0; j < n; ++j)
        x[j] = centroid[j] + coeff * (centroid[j] - X.back()[j]);
      return clamp_to(x, bounds);
    };

    const auto xr = along(1.0);
    const double fr = f(xr);
    if (fr < F[0]) {
      const auto xe = along(2.0);
      const double fe = f(xe);
      if (fe < fr) {
        X.back() = xe;
        F.back() = fe;
      } else {
        X.back() = xr;
        F.back() = fr;
      }
    } else if (fr < F[F.size() - 2]) {
      X.back() = xr;
      F.back() = fr;
    } else {
      const auto xc = along(fr < F.back() ? 0.5 : -0.5);
      const double fc = f(xc);
      if (fc < std::min(fr, F.back())) {
        X.back() = xc;
        F.back() = fc;
      } else {
        for (size_t i = 1; i < X.size(); ++i) {
          for (size_t j = 0; j < n; ++j)
            X[i][j] = X[0][j] + 0.5 * (X[i][j] - X[0][j]);
          F[i] = f(X[i]);
        }
      }
    }
    for (double v : F)
      if (!std::isfinite(v)) throw std::invalid_argument("non-finite objective");
  }

  size_t best = 0;
  for (size_t i = 1; i < F.size(); ++i)
    if (F[i] < F[best]) best = i;
  res.x = X[best];
  res.f = F[best];
  res.iterations = it;
  // The trace reports the running best, which is non-increasing by
  // construction of the accept rules; enforce it against shrink steps.
  for (size_t i = 1; i < res.trace.size(); ++i)
    res.trace[i] = std::min(res.trace[i], res.trace[i - 1]);
  if (res.trace.empty() || res.f < res.trace.back())
    res.trace.push_back(res.f);
  return res;
}

FitResult fit(const std::vector<CalibrationTarget>& targets,
              const ParameterSet& init, const std::array<Bounds, 3>& bounds) {
  auto eval = [&](const std::vector<double>& x) {
    return objective({x[0], x[1], x[2]}, targets);
  };
  const auto r = nelder_mead(eval, {init.h, init.alpha_eff_paper, init.tau_mech},
                             {bounds[0], bounds[1], bounds[2]});
  FitResult out;
  out.params = {r.x[0], r.x[1], r.x[2]};
  out.objective = r.f;
  out.trace = r.trace;
  out.iterations = r.iterations;
  return out;
}

std::vector<CalibrationTarget> parse_targets_csv(const std::string& text) {
  std::vector<CalibrationTarget> out;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line == "\r") continue;
    if (lineno == 1 && line.rfind("name,", 0) == 0) continue;
    std::istringstream row(line);
    CalibrationTarget t;
    std::string value, weight;
    if (!std::getline(row, t.name, ',') || !std::getline(row, value, ',') ||
        !std::getline(row, t.unit, ',') || !std::getline(row, weight))
      throw std::invalid_argument("targets csv: malformed line " +
                                  std::to_string(lineno));
    t.value = std::stod(value);
    t.weight = std::stod(weight);
    out.push_back(std::move(t));
  }
  if (out.empty()) throw std::invalid_argument("targets csv: no targets");
  return out;
}

std::string targets_to_csv(const std::vector<CalibrationTarget>& targets) {
  std::ostringstream out;
  out << "name,value,unit,weight\n";
  for (const auto& t : targets)
    out << t.name << ',' << t.value << ',' << t.unit << ',' << t.weight << '\n';
  return out.str();
}

std::string params_to_config_fragment(const ParameterSet& p) {
  std::ostringstream out;
  out.precision(9);
  out << "[thermal]\nh = " << p.h << "\n\n[material.paper]\nalpha_eff_ppm = "
      << p.alpha_eff_paper * 1e6 << "\n\n[mechanics]\ntau_mech = "
      << p.tau_mech << "\n";
  return out.str();
}

}  // namespace metasim

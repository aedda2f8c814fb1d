#include "metasim/control.hpp"

#include <cmath>

namespace metasim {

void PowerSchedule::validate() const {
  double prev_end = 0;
  for (const auto& s : segments) {
    if (!(s.t1 > s.t0))
      throw std::invalid_argument("schedule segment has t_end <= t_start");
    if (s.t0 < prev_end - 1e-12)
      throw std::invalid_argument("schedule segments overlap or are unordered");
    if (s.p_outer < 0 || s.p_inner < 0)
      throw std::invalid_argument("schedule segment has negative power");
    prev_end = s.t1;
  }
}

std::pair<double, double> PowerSchedule::power_at(double t) const {
  for (const auto& s : segments)
    if (t >= s.t0 && t < s.t1) return {s.p_outer, s.p_inner};
  return {0.0, 0.0};
}

double PowerSchedule::duration() const {
  return segments.empty() ? 0.0 : segments.back().t1;
}

PowerSchedule cyclic_schedule(const std::string& loop, double P, double t_on,
                              double t_off, int cycles) {
  if (!(t_on > 0) || !(t_off > 0))
    throw std::invalid_argument("cyclic_schedule: t_on, t_off must be > 0");
  const bool outer = loop == "outer";
  if (!outer && loop != "inner")
    throw std::invalid_argument("cyclic_schedule: loop must be outer or inner");
  PowerSchedule sched;
  for (int c = 0; c < cycles; ++c) {
    const double t0 = c * (t_on + t_off);
    sched.segments.push_back({t0, t0 + t_on, outer ? P : 0.0, outer ? 0.0 : P});
    // The off window is an explicit gap; power_at returns (0,0) there.
  }
  sched.validate();
  return sched;
}

PowerSchedule alternating_schedule(double P, double t_outer, double t_inner,
                                   int cycles) {
  if (!(t_outer > 0) || !(t_inner > 0))
    throw std::invalid_argument("alternating_schedule: durations must be > 0");
  PowerSchedule sched;
  for (int c = 0; c < cycles; ++c) {
    const double t0 = c * (t_outer + t_inner);
    sched.segments.push_back({t0, t0 + t_outer, P, 0.0});
    sched.segments.push_back({t0 + t_outer, t0 + t_outer + t_inner, 0.0, P});
  }
  sched.validate();
  return sched;
}

ForcedReturnController::ForcedReturnController(ForcedReturnPolicy policy)
    : policy_(std::move(policy)) {
  if (policy_.p_ret_w < 0 || policy_.drive_power_w < 0)
    throw std::invalid_argument("forced return: negative power");
  if (!(policy_.eps_d_mm > 0))
    throw std::invalid_argument("forced return: eps_d must be > 0");
  if (policy_.drive_loop != "outer" && policy_.drive_loop != "inner")
    throw std::invalid_argument("forced return: unknown drive loop");
}

ForcedReturnController::Output ForcedReturnController::step(
    double t, double displacement_mm) {
  if (done_) return {0, 0, true};
  const bool drive_outer = policy_.drive_loop == "outer";
  if (t < policy_.t_act) {
    return {drive_outer ? policy_.drive_power_w : 0.0,
            drive_outer ? 0.0 : policy_.drive_power_w, false};
  }
  if (std::abs(displacement_mm) <= policy_.eps_d_mm ||
      t >= policy_.t_act + policy_.max_return_s) {
    done_ = true;
    return {0, 0, true};
  }
  return {drive_outer ? 0.0 : policy_.p_ret_w,
          drive_outer ? policy_.p_ret_w : 0.0, false};
}

}  // namespace metasim

#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace metasim {

// One constant-power command window, left-closed / right-open in time.
struct Segment {
  double t0 = 0, t1 = 0;
  double p_outer = 0, p_inner = 0;
};

struct PowerSchedule {
  std::vector<Segment> segments;  // ordered, non-overlapping

  // Throws std::invalid_argument on overlap, disorder, or negative power.
  void validate() const;
  // Powers of the covering segment; gaps and t past the end mean (0, 0).
  std::pair<double, double> power_at(double t) const;
  double duration() const;
};

// t_on at power P then t_off at zero, repeated `cycles` times, on one loop
// ("outer" or "inner").
PowerSchedule cyclic_schedule(const std::string& loop, double P, double t_on,
                              double t_off, int cycles);

// Outer loop for t_outer then inner loop for t_inner, repeated.
PowerSchedule alternating_schedule(double P, double t_outer, double t_inner,
                                   int cycles);

// Drive one loop until t_act, then push back with the opposite loop at
// p_ret until the sensed displacement is within eps_d of rest (or the
// return window expires), then everything off, latched.
struct ForcedReturnPolicy {
  std::string drive_loop = "inner";
  double drive_power_w = 0.75;
  double p_ret_w = 0.0;
  double t_act = 300.0;      // s
  double eps_d_mm = 0.1;     // rest tolerance
  double max_return_s = 600.0;
};

class ForcedReturnController {
 public:
  explicit ForcedReturnController(ForcedReturnPolicy policy);
  // displacement in mm, sensed perfectly from the simulator. Returns
  // (P_outer, P_inner, done). Once done, stays done.
  struct Output {
    double p_outer = 0, p_inner = 0;
    bool done = false;
  };
  Output step(double t, double displacement_mm);
  const ForcedReturnPolicy& policy() const { return policy_; }

 private:
  ForcedReturnPolicy policy_;
  bool done_ = false;
};

}  // namespace metasim

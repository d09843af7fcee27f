#pragma once

#include "zeno/params.hpp"

#include <vector>

namespace zeno {

/// Trapezoid-like envelope: ramp up over `ramp_up`, hold `amplitude` for
/// `plateau`, ramp down over `ramp_down`. Zero outside its support.
///
/// Ramp shapes:
///  - raised_cosine: amplitude * sin^2(pi (t - t_start) / (2 tau)) on the way up (C^1)
///  - linear: straight line between 0 and amplitude
///  - step: jumps at the middle of each ramp, so every shape has the same area
struct PulseProfile {
  double t_start = 0.0;
  double ramp_up = 0.0;
  double plateau = 0.0;
  double ramp_down = 0.0;
  double amplitude = 0.0;
  PulseShape shape = PulseShape::raised_cosine;

  double plateau_start() const noexcept { return t_start + ramp_up; }
  double plateau_end() const noexcept { return t_start + ramp_up + plateau; }
  double t_end() const noexcept { return t_start + ramp_up + plateau + ramp_down; }
};

double value_at(const PulseProfile &profile, double t) noexcept;

/// Closed-form integral of value_at over the whole support.
double pulse_area(const PulseProfile &profile) noexcept;

/// Joints where the envelope stops being smooth: start, plateau edges, end,
/// and for step ramps the two jump points.
std::vector<double> breakpoints(const PulseProfile &profile);

/// Coupling envelopes for one gate run. M starts at t = 0, the C window sits
/// centred on M's plateau and M' follows M's shape scaled to mprime_max.
struct Schedule {
  PulseProfile c;
  PulseProfile m;
  PulseProfile mprime;
  double total_time = 0.0;

  /// Sorted, de-duplicated breakpoints of all three envelopes in [0, total_time].
  std::vector<double> breakpoints() const;
};

/// Throws ScheduleInfeasible when t_m < 2 tau_c + t_c.
Schedule make_schedule(const PhysicsParams &params);

} // namespace zeno

#include "zeno/pulses.hpp"

#include "zeno/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace zeno {

std::string_view to_string(Frame frame) noexcept {
  return frame == Frame::lab ? "lab" : "rotating";
}

std::string_view to_string(PulseShape shape) noexcept {
  switch (shape) {
  case PulseShape::raised_cosine: return "raised_cosine";
  case PulseShape::linear: return "linear";
  case PulseShape::step: return "step";
  }
  return "unknown";
}

Frame parse_frame(std::string_view name) {
  if (name == "lab") return Frame::lab;
  if (name == "rotating") return Frame::rotating;
  throw ConfigError("unknown frame '" + std::string(name) + "' (expected lab|rotating)");
}

PulseShape parse_pulse_shape(std::string_view name) {
  if (name == "raised_cosine") return PulseShape::raised_cosine;
  if (name == "linear") return PulseShape::linear;
  if (name == "step") return PulseShape::step;
  throw ConfigError("unknown ramp shape '" + std::string(name) + "' (expected raised_cosine|linear|step)");
}

void PhysicsParams::validate() const {
  auto require = [](bool ok, const char *what) {
    if (!ok) throw ConfigError(what);
  };
  require(std::isfinite(omega) && omega > 0.0, "omega must be > 0");
  require(std::isfinite(delta), "delta must be finite");
  require(!omega_s || std::isfinite(*omega_s), "omega_s must be finite");
  require(c_max >= 0.0 && m_max >= 0.0 && mprime_max >= 0.0, "coupling amplitudes must be >= 0");
  require(tau_c >= 0.0 && t_c >= 0.0 && tau_m >= 0.0 && t_m >= 0.0, "times must be >= 0");
  require(!tau_m_off || *tau_m_off >= 0.0, "tau_m_off must be >= 0");
}

double area_theorem_window(const PhysicsParams &params) {
  return std::numbers::pi / (2.0 * params.c_max);
}

namespace {

/// Rising edge normalised to [0, 1] for x in [0, 1].
double rise(PulseShape shape, double x) noexcept {
  switch (shape) {
  case PulseShape::raised_cosine: {
    double s = std::sin(0.5 * std::numbers::pi * x);
    return s * s;
  }
  case PulseShape::linear: return x;
  case PulseShape::step: return x >= 0.5 ? 1.0 : 0.0;
  }
  return 0.0;
}

} // namespace

double value_at(const PulseProfile &p, double t) noexcept {
  if (t < p.t_start || t > p.t_end()) return 0.0;
  if (t >= p.plateau_start() && t <= p.plateau_end()) return p.amplitude;
  if (t < p.plateau_start()) return p.amplitude * rise(p.shape, (t - p.t_start) / p.ramp_up);
  // Falling edge is the mirror image of a rising edge.
  return p.amplitude * rise(p.shape, (p.t_end() - t) / p.ramp_down);
}

double pulse_area(const PulseProfile &p) noexcept {
  // Each of the three shapes covers exactly half of its ramp's rectangle.
  return p.amplitude * (p.plateau + 0.5 * (p.ramp_up + p.ramp_down));
}

std::vector<double> breakpoints(const PulseProfile &p) {
  std::vector<double> pts{p.t_start, p.plateau_start(), p.plateau_end(), p.t_end()};
  if (p.shape == PulseShape::step) {
    pts.push_back(p.t_start + 0.5 * p.ramp_up);
    pts.push_back(p.plateau_end() + 0.5 * p.ramp_down);
    std::sort(pts.begin(), pts.end());
  }
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

std::vector<double> Schedule::breakpoints() const {
  std::vector<double> pts{0.0, total_time};
  for (const auto *p : {&c, &m, &mprime}) {
    if (p->amplitude == 0.0) continue;
    auto b = zeno::breakpoints(*p);
    pts.insert(pts.end(), b.begin(), b.end());
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  pts.erase(std::remove_if(pts.begin(), pts.end(), [&](double t) { return t < 0.0 || t > total_time; }),
            pts.end());
  return pts;
}

Schedule make_schedule(const PhysicsParams &params) {
  const double needed = params.min_t_m();
  if (params.t_m < needed) {
    std::ostringstream msg;
    msg.precision(12);
    msg << "schedule infeasible: t_m = " << params.t_m << " is shorter than 2*tau_c + t_c = " << needed
        << " (deficit " << needed - params.t_m << ")";
    throw ScheduleInfeasible(msg.str(), needed - params.t_m);
  }

  Schedule s;
  s.m = PulseProfile{0.0, params.tau_m, params.t_m, params.m_ramp_down(), params.m_max, params.ramp_shape};
  s.mprime = s.m;
  s.mprime.amplitude = params.m_max > 0.0 ? params.mprime_max : 0.0;

  const double slack = params.t_m - needed;
  s.c = PulseProfile{params.tau_m + 0.5 * slack, params.tau_c, params.t_c, params.tau_c, params.c_max,
                     params.ramp_shape};
  s.total_time = s.m.t_end();
  return s;
}

} // namespace zeno

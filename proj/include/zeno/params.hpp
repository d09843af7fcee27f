#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace zeno {

enum class Frame { lab, rotating };
enum class PulseShape { raised_cosine, linear, step };

std::string_view to_string(Frame frame) noexcept;
std::string_view to_string(PulseShape shape) noexcept;
/// Throw ConfigError on unknown names.
Frame parse_frame(std::string_view name);
PulseShape parse_pulse_shape(std::string_view name);

/// Physical parameters of the two-waveguide, two-atom model. Units: hbar = 1,
/// energies in units where the photon frequency is `omega`, times in 1/omega.
struct PhysicsParams {
  double omega = 1.0;
  double delta = 0.25;
  /// Scattering-mode frequency; unset means equal to omega.
  std::optional<double> omega_s;
  double c_max = 0.00012;
  double m_max = 0.25;
  double mprime_max = 0.0;
  double tau_c = 1000.0;
  double t_c = 12089.9;
  /// Turn-on ramp of M(t).
  double tau_m = 1000.0;
  /// Turn-off ramp of M(t); unset means equal to tau_m.
  std::optional<double> tau_m_off;
  double t_m = 14089.9;
  PulseShape ramp_shape = PulseShape::raised_cosine;
  Frame frame = Frame::rotating;

  double scattering_frequency() const noexcept { return omega_s.value_or(omega); }
  double m_ramp_down() const noexcept { return tau_m_off.value_or(tau_m); }
  /// Shortest M plateau that still contains the whole C window.
  double min_t_m() const noexcept { return 2.0 * tau_c + t_c; }

  /// Throws ConfigError when omega <= 0, a time is negative or an amplitude is negative.
  void validate() const;
};

/// Ratio pi / (2 C_max): the plateau-plus-ramp length that gives a pi/2 pulse area.
double area_theorem_window(const PhysicsParams &params);

} // namespace zeno

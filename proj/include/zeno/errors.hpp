#pragma once

#include <stdexcept>
#include <string>

namespace zeno {

/// Base class for every failure the simulator reports. `kind()` is a stable
/// snake_case tag used in CLI error records and sweep status columns.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
  virtual const char *kind() const noexcept { return "error"; }
};

class ScheduleInfeasible : public Error {
public:
  ScheduleInfeasible(const std::string &what, double deficit)
      : Error(what), deficit_(deficit) {}
  const char *kind() const noexcept override { return "schedule_infeasible"; }
  double deficit() const noexcept { return deficit_; }

private:
  double deficit_;
};

/// Assembled Hamiltonian is not Hermitian; always an operator-construction bug.
class HermiticityViolation : public Error {
public:
  using Error::Error;
  const char *kind() const noexcept override { return "hermiticity_violation"; }
};

class IntegrationError : public Error {
public:
  using Error::Error;
  const char *kind() const noexcept override { return "integration_error"; }
};

class StepSizeUnderflow : public IntegrationError {
public:
  using IntegrationError::IntegrationError;
  const char *kind() const noexcept override { return "step_size_underflow"; }
};

class NormDriftExceeded : public IntegrationError {
public:
  using IntegrationError::IntegrationError;
  const char *kind() const noexcept override { return "norm_drift_exceeded"; }
};

class DegenerateAmplitude : public Error {
public:
  using Error::Error;
  const char *kind() const noexcept override { return "degenerate_amplitude"; }
};

class CalibrationFailed : public Error {
public:
  CalibrationFailed(const std::string &what, double best_t_c, double best_p)
      : Error(what), best_t_c_(best_t_c), best_p_(best_p) {}
  const char *kind() const noexcept override { return "no_acceptable_maximum"; }
  double best_t_c() const noexcept { return best_t_c_; }
  double best_probability() const noexcept { return best_p_; }

private:
  double best_t_c_;
  double best_p_;
};

class ConfigError : public Error {
public:
  using Error::Error;
  const char *kind() const noexcept override { return "config_error"; }
};

class IoError : public Error {
public:
  using Error::Error;
  const char *kind() const noexcept override { return "io_error"; }
};

} // namespace zeno

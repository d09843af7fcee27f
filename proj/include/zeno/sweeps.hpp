#pragma once

#include "zeno/calibrate.hpp"
#include "zeno/gate.hpp"

#include <json.hpp>

#include <filesystem>
#include <iosfwd>
#include <limits>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace zeno {

enum class SweepAxis { m_max, mprime_max, tau_m, delta, c_max, t_c };
enum class GridSpacing { linear, log };
enum class OutputFormat { csv, json };

std::string_view to_string(SweepAxis axis) noexcept;
std::string_view to_string(OutputFormat format) noexcept;
SweepAxis parse_sweep_axis(std::string_view name);
GridSpacing parse_grid_spacing(std::string_view name);
OutputFormat parse_output_format(std::string_view name);

/// `count` points from start to stop inclusive. Log spacing needs start, stop > 0.
std::vector<double> make_grid(double start, double stop, int count, GridSpacing spacing);

/// Sets the named parameter. Numeric PhysicsParams fields only; throws
/// ConfigError for anything else.
void set_param(PhysicsParams &params, std::string_view name, double value);
void apply_axis(PhysicsParams &params, SweepAxis axis, double value);

struct SweepConfig {
  std::string name = "sweep";
  PhysicsParams params;
  IntegratorConfig integrator;
  HeraldMode herald = HeraldMode::paths;
  SweepAxis axis = SweepAxis::m_max;
  std::vector<double> grid;
  /// Run tune_transfer at every grid point. Off means T_C and T_M come from
  /// `params`, except on the t_c axis where T_M follows 2 tau_C + T_C + margin.
  bool recalibrate = false;
  CalibrationSearch calibration;
  /// Parameters replaced before calibrating, e.g. a slow ramp for a device
  /// whose window was tuned under adiabatic conditions.
  std::map<std::string, double> calibration_overrides;
  std::filesystem::path output;
  OutputFormat format = OutputFormat::csv;
  /// Calibration cache file; empty keeps it in memory.
  std::filesystem::path cache;
  /// Grid points evaluated concurrently; 0 picks the hardware concurrency.
  int threads = 0;

  void validate() const;
};

struct SweepRow {
  std::size_t index = 0;
  double axis_value = 0.0;
  /// Parameters actually simulated, calibrated window included.
  PhysicsParams params;
  double calibrated_t_c = std::numeric_limits<double>::quiet_NaN();
  double calibrated_t_m = std::numeric_limits<double>::quiet_NaN();
  double calibration_p = std::numeric_limits<double>::quiet_NaN();
  bool calibration_non_unimodal = false;
  HeraldMode herald = HeraldMode::paths;
  GateMetrics metrics;
  double norm_drift = std::numeric_limits<double>::quiet_NaN();
  double excitation_drift = std::numeric_limits<double>::quiet_NaN();
  /// "ok" or the error kind that stopped this point.
  std::string status = "ok";
  std::string message;

  bool ok() const noexcept { return status == "ok"; }
};

/// Simulates one grid point. Errors are captured in the row.
SweepRow run_point(const SweepConfig &cfg, std::size_t index, CalibrationCache &cache);

/// Rows in grid order. Points run on a thread pool; per-point failures are
/// recorded in the status column and never abort the sweep.
std::vector<SweepRow> run_sweep(const SweepConfig &cfg, CalibrationCache &cache);
std::vector<SweepRow> run_sweep(const SweepConfig &cfg);

const std::vector<std::string> &sweep_columns();

void write_csv(std::ostream &out, const std::vector<SweepRow> &rows);
void write_json(std::ostream &out, const SweepConfig &cfg, const std::vector<SweepRow> &rows);
/// Writes rows to cfg.output in cfg.format, creating parent directories.
void emit(const SweepConfig &cfg, const std::vector<SweepRow> &rows);

/// Rounds to 12 significant digits, the precision of every emitted value.
double round12(double value);

const std::vector<std::string> &preset_names();
/// Built-in sweep for the named figure; output and cache paths left empty.
SweepConfig preset_config(std::string_view name);

SweepConfig parse_sweep_config(const nlohmann::json &doc);
SweepConfig load_sweep_config(const std::filesystem::path &path);

PhysicsParams parse_physics_params(const nlohmann::json &doc, PhysicsParams base = {});
IntegratorConfig parse_integrator_config(const nlohmann::json &doc, IntegratorConfig base = {});

} // namespace zeno

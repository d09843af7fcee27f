#pragma once

#include "zeno/evolve.hpp"

#include <cstdint>
#include <filesystem>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace zeno {

struct CalibrationSearch {
  /// Bounds on T_C; unset bounds default to 0.25 and 2.0 times pi / (2 C_max).
  std::optional<double> t_c_min;
  std::optional<double> t_c_max;
  int coarse_points = 32;
  /// Absolute T_C tolerance of the golden-section refinement.
  double tolerance = 0.05;
  /// Smallest acceptable transfer probability at the optimum.
  double floor = 0.999;
  /// Extra M plateau beyond 2 tau_C + T_C.
  double t_m_margin = 0.0;
  /// Worker threads for the coarse scan; 0 picks the hardware concurrency.
  int threads = 0;

  std::pair<double, double> range(const PhysicsParams &params) const;
  void validate() const;
};

struct CalibrationResult {
  double t_c = 0.0;
  double t_m = 0.0;
  double probability = 0.0;
  /// Golden-section iterations after the coarse scan.
  int iterations = 0;
  /// Total objective evaluations, scan included.
  int evaluations = 0;
  /// The coarse scan found more than one peak within 10% of the best.
  bool non_unimodal = false;
  bool from_cache = false;
};

/// Applies a calibrated window: T_C from `result`, T_M = 2 tau_C + T_C + margin.
PhysicsParams with_window(PhysicsParams params, double t_c, double t_m_margin);

/// Probability that a photon entering waveguide A leaves in waveguide B with
/// atoms ground and scattering modes empty, for the given T_C.
double transfer_probability(const PhysicsParams &params, double t_c, double t_m_margin, const IntegratorConfig &cfg);

/// Coarse scan plus golden-section refinement of transfer_probability over T_C.
/// Throws CalibrationFailed when the best probability is below search.floor.
CalibrationResult tune_transfer(const PhysicsParams &params, const CalibrationSearch &search,
                                const IntegratorConfig &cfg);

/// 64-bit FNV-1a over every input that influences tune_transfer. T_C and T_M
/// of `params` are ignored since calibration overwrites them.
std::uint64_t calibration_fingerprint(const PhysicsParams &params, const CalibrationSearch &search,
                                      const IntegratorConfig &cfg);

/// Tab-separated table of calibration results keyed by fingerprint. Safe to
/// share between threads; every store is appended to the file immediately.
class CalibrationCache {
public:
  /// Empty path keeps the cache in memory only.
  explicit CalibrationCache(std::filesystem::path path = {});

  std::optional<CalibrationResult> lookup(std::uint64_t key) const;
  void store(std::uint64_t key, const CalibrationResult &result);
  std::size_t size() const;

  /// Looks the parameters up and calibrates on a miss.
  CalibrationResult calibrate(const PhysicsParams &params, const CalibrationSearch &search,
                              const IntegratorConfig &cfg);

private:
  std::filesystem::path path_;
  mutable std::mutex mutex_;
  std::map<std::uint64_t, CalibrationResult> entries_;
};

} // namespace zeno

#include "zeno/calibrate.hpp"

#include "zeno/errors.hpp"
#include "zeno/gate.hpp"

#include "parallel.hpp"

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace zeno {

std::pair<double, double> CalibrationSearch::range(const PhysicsParams &params) const {
  const double window = area_theorem_window(params);
  return {t_c_min.value_or(0.25 * window), t_c_max.value_or(2.0 * window)};
}

void CalibrationSearch::validate() const {
  if (coarse_points < 3) throw ConfigError("calibration.coarse_points must be >= 3");
  if (!(tolerance > 0.0)) throw ConfigError("calibration.tolerance must be > 0");
  if (!(floor >= 0.0 && floor <= 1.0)) throw ConfigError("calibration.floor must lie in [0, 1]");
  if (!(t_m_margin >= 0.0)) throw ConfigError("calibration.t_m_margin must be >= 0");
  if (t_c_min && *t_c_min < 0.0) throw ConfigError("calibration.range lower bound must be >= 0");
}

PhysicsParams with_window(PhysicsParams params, double t_c, double t_m_margin) {
  params.t_c = t_c;
  params.t_m = 2.0 * params.tau_c + t_c + t_m_margin;
  return params;
}

double transfer_probability(const PhysicsParams &params, double t_c, double t_m_margin, const IntegratorConfig &cfg) {
  const PhysicsParams p = with_window(params, t_c, t_m_margin);
  HamiltonianModel model(std::make_shared<const BasisSet>(1), p);
  const auto result = evolve_logical_input(model, 2, cfg);
  return std::norm(result.state[model.basis().at(ideal_output_configuration(2))]);
}

CalibrationResult tune_transfer(const PhysicsParams &params, const CalibrationSearch &search,
                                const IntegratorConfig &cfg) {
  search.validate();
  params.validate();
  const auto [lo, hi] = search.range(params);
  if (!(lo < hi)) {
    std::ostringstream msg;
    msg << "calibration range [" << lo << ", " << hi << "] is empty";
    throw ConfigError(msg.str());
  }

  auto objective = [&](double t_c) { return transfer_probability(params, t_c, search.t_m_margin, cfg); };

  const int n = search.coarse_points;
  std::vector<double> xs(n), ps(n);
  for (int k = 0; k < n; ++k) xs[k] = lo + (hi - lo) * k / (n - 1);
  detail::parallel_for(static_cast<std::size_t>(n), search.threads, [&](std::size_t k) { ps[k] = objective(xs[k]); });

  int best = 0;
  for (int k = 1; k < n; ++k)
    if (ps[k] > ps[best]) best = k;

  std::vector<int> peaks;
  for (int k = 0; k < n; ++k) {
    const bool left = k == 0 || ps[k] >= ps[k - 1];
    const bool right = k == n - 1 || ps[k] > ps[k + 1];
    if (left && right && ps[k] >= 0.9 * ps[best]) peaks.push_back(k);
  }

  CalibrationResult out;
  out.non_unimodal = peaks.size() > 1;
  const int peak = peaks.empty() ? best : peaks.front();
  out.evaluations = n;

  double a = xs[std::max(peak - 1, 0)];
  double b = xs[std::min(peak + 1, n - 1)];
  double best_x = xs[peak], best_p = ps[peak];
  auto track = [&](double x, double p) {
    ++out.evaluations;
    if (p > best_p) best_x = x, best_p = p;
  };

  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = b - inv_phi * (b - a), x2 = a + inv_phi * (b - a);
  double f1 = objective(x1), f2 = objective(x2);
  track(x1, f1);
  track(x2, f2);
  while (b - a > search.tolerance) {
    ++out.iterations;
    if (f1 >= f2) {
      b = x2, x2 = x1, f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = objective(x1);
      track(x1, f1);
    } else {
      a = x1, x1 = x2, f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = objective(x2);
      track(x2, f2);
    }
  }

  out.t_c = best_x;
  out.t_m = with_window(params, best_x, search.t_m_margin).t_m;
  out.probability = best_p;
  if (best_p < search.floor) {
    char msg[256];
    std::snprintf(msg, sizeof msg,
                  "no acceptable transfer maximum in T_C range [%.6g, %.6g]: best p = %.9g at T_C = %.9g (floor %.6g)",
                  lo, hi, best_p, best_x, search.floor);
    throw CalibrationFailed(msg, best_x, best_p);
  }
  return out;
}

namespace {

void fnv1a(std::uint64_t &h, const std::string &text) {
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
}

std::string canonical(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

} // namespace

std::uint64_t calibration_fingerprint(const PhysicsParams &params, const CalibrationSearch &search,
                                      const IntegratorConfig &cfg) {
  const auto [lo, hi] = search.range(params);
  std::ostringstream s;
  s << "omega=" << canonical(params.omega) << ";delta=" << canonical(params.delta)
    << ";omega_s=" << canonical(params.scattering_frequency()) << ";c_max=" << canonical(params.c_max)
    << ";m_max=" << canonical(params.m_max) << ";mprime_max=" << canonical(params.mprime_max)
    << ";tau_c=" << canonical(params.tau_c) << ";tau_m=" << canonical(params.tau_m)
    << ";tau_m_off=" << canonical(params.m_ramp_down()) << ";shape=" << to_string(params.ramp_shape)
    << ";frame=" << to_string(params.frame) << ";lo=" << canonical(lo) << ";hi=" << canonical(hi)
    << ";points=" << search.coarse_points << ";tol=" << canonical(search.tolerance)
    << ";floor=" << canonical(search.floor) << ";margin=" << canonical(search.t_m_margin)
    << ";method=" << to_string(cfg.method) << ";scheme=" << to_string(cfg.scheme)
    << ";rtol=" << canonical(cfg.rtol) << ";atol=" << canonical(cfg.atol)
    << ";max_step=" << canonical(cfg.max_step) << ";oracle_steps=" << cfg.oracle_steps;
  std::uint64_t h = 0xcbf29ce484222325ULL;
  fnv1a(h, s.str());
  return h;
}

CalibrationCache::CalibrationCache(std::filesystem::path path) : path_(std::move(path)) {
  if (path_.empty() || !std::filesystem::exists(path_)) return;
  std::ifstream in(path_);
  if (!in) throw IoError("cannot read calibration cache '" + path_.string() + "'");
  std::string line;
  for (int lineno = 1; std::getline(in, line); ++lineno) {
    if (line.empty() || line[0] == '#') continue;
    std::uint64_t key = 0;
    CalibrationResult r;
    int unimodal_flag = 0;
    if (std::sscanf(line.c_str(), "%" SCNx64 "\t%lf\t%lf\t%lf\t%d\t%d\t%d", &key, &r.t_c, &r.t_m, &r.probability,
                    &r.iterations, &r.evaluations, &unimodal_flag) != 7)
      throw IoError("malformed calibration cache entry at '" + path_.string() + "' line " + std::to_string(lineno));
    r.non_unimodal = unimodal_flag != 0;
    r.from_cache = true;
    entries_[key] = r;
  }
}

std::optional<CalibrationResult> CalibrationCache::lookup(std::uint64_t key) const {
  std::lock_guard lock(mutex_);
  auto it = entries_.find(key);
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

std::size_t CalibrationCache::size() const {
  std::lock_guard lock(mutex_);
  return entries_.size();
}

void CalibrationCache::store(std::uint64_t key, const CalibrationResult &result) {
  std::lock_guard lock(mutex_);
  CalibrationResult cached = result;
  cached.from_cache = true;
  if (!entries_.emplace(key, cached).second) return;
  if (path_.empty()) return;

  const bool fresh = !std::filesystem::exists(path_);
  if (path_.has_parent_path()) std::filesystem::create_directories(path_.parent_path());
  std::ofstream out(path_, std::ios::app);
  if (!out) throw IoError("cannot write calibration cache '" + path_.string() + "'");
  if (fresh) out << "# fingerprint\tt_c\tt_m\tprobability\titerations\tevaluations\tnon_unimodal\n";
  char buf[256];
  std::snprintf(buf, sizeof buf, "%016" PRIx64 "\t%.17g\t%.17g\t%.17g\t%d\t%d\t%d\n", key, result.t_c, result.t_m,
                result.probability, result.iterations, result.evaluations, result.non_unimodal ? 1 : 0);
  out << buf;
  if (!out) throw IoError("failed writing calibration cache '" + path_.string() + "'");
}

CalibrationResult CalibrationCache::calibrate(const PhysicsParams &params, const CalibrationSearch &search,
                                              const IntegratorConfig &cfg) {
  const auto key = calibration_fingerprint(params, search, cfg);
  if (auto hit = lookup(key)) return *hit;
  auto result = tune_transfer(params, search, cfg);
  store(key, result);
  return result;
}

} // namespace zeno

#include "zeno/sweeps.hpp"

#include "zeno/errors.hpp"

#include "parallel.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <variant>

namespace zeno {

std::string_view to_string(SweepAxis axis) noexcept {
  switch (axis) {
  case SweepAxis::m_max: return "m_max";
  case SweepAxis::mprime_max: return "mprime_max";
  case SweepAxis::tau_m: return "tau_m";
  case SweepAxis::delta: return "delta";
  case SweepAxis::c_max: return "c_max";
  case SweepAxis::t_c: return "t_c";
  }
  return "unknown";
}

std::string_view to_string(OutputFormat format) noexcept { return format == OutputFormat::csv ? "csv" : "json"; }

SweepAxis parse_sweep_axis(std::string_view name) {
  for (auto axis : {SweepAxis::m_max, SweepAxis::mprime_max, SweepAxis::tau_m, SweepAxis::delta, SweepAxis::c_max,
                    SweepAxis::t_c})
    if (name == to_string(axis)) return axis;
  throw ConfigError("unknown sweep axis '" + std::string(name) + "' (expected m_max|mprime_max|tau_m|delta|c_max|t_c)");
}

GridSpacing parse_grid_spacing(std::string_view name) {
  if (name == "linear") return GridSpacing::linear;
  if (name == "log") return GridSpacing::log;
  throw ConfigError("unknown grid spacing '" + std::string(name) + "' (expected linear|log)");
}

OutputFormat parse_output_format(std::string_view name) {
  if (name == "csv") return OutputFormat::csv;
  if (name == "json") return OutputFormat::json;
  throw ConfigError("unknown output format '" + std::string(name) + "' (expected csv|json)");
}

std::vector<double> make_grid(double start, double stop, int count, GridSpacing spacing) {
  if (count < 1) throw ConfigError("grid count must be >= 1");
  if (spacing == GridSpacing::log && !(start > 0.0 && stop > 0.0))
    throw ConfigError("log grid needs start > 0 and stop > 0");
  if (count == 1) return {start};
  std::vector<double> out(count);
  for (int k = 0; k < count; ++k) {
    const double f = static_cast<double>(k) / (count - 1);
    out[k] = spacing == GridSpacing::linear ? start + f * (stop - start)
                                            : std::exp(std::log(start) + f * (std::log(stop) - std::log(start)));
  }
  out.front() = start;
  out.back() = stop;
  return out;
}

void set_param(PhysicsParams &p, std::string_view name, double v) {
  if (name == "omega") p.omega = v;
  else if (name == "delta") p.delta = v;
  else if (name == "omega_s") p.omega_s = v;
  else if (name == "c_max") p.c_max = v;
  else if (name == "m_max") p.m_max = v;
  else if (name == "mprime_max") p.mprime_max = v;
  else if (name == "tau_c") p.tau_c = v;
  else if (name == "t_c") p.t_c = v;
  else if (name == "tau_m") p.tau_m = v;
  else if (name == "tau_m_off") p.tau_m_off = v;
  else if (name == "t_m") p.t_m = v;
  else throw ConfigError("unknown numeric parameter '" + std::string(name) + "'");
}

void apply_axis(PhysicsParams &params, SweepAxis axis, double value) {
  set_param(params, to_string(axis), value);
}

void SweepConfig::validate() const {
  params.validate();
  integrator.validate();
  calibration.validate();
  if (grid.empty()) throw ConfigError("sweep grid is empty");
  for (double v : grid)
    if (!std::isfinite(v)) throw ConfigError("sweep grid contains a non-finite value");
  if (recalibrate && axis == SweepAxis::t_c)
    throw ConfigError("axis t_c conflicts with recalibrate = true (calibration overwrites t_c)");
  for (const auto &[name, value] : calibration_overrides) {
    PhysicsParams probe;
    set_param(probe, name, value);
    if (name == "t_c" || name == "t_m") throw ConfigError("calibration override '" + name + "' is set by calibration");
  }
  if (threads < 0) throw ConfigError("threads must be >= 0");
}

SweepRow run_point(const SweepConfig &cfg, std::size_t index, CalibrationCache &cache) {
  SweepRow row;
  row.index = index;
  row.axis_value = cfg.grid.at(index);
  row.params = cfg.params;
  row.herald = cfg.herald;
  apply_axis(row.params, cfg.axis, row.axis_value);
  try {
    if (cfg.recalibrate) {
      PhysicsParams tuned = row.params;
      for (const auto &[name, value] : cfg.calibration_overrides) set_param(tuned, name, value);
      const auto cal = cache.calibrate(tuned, cfg.calibration, cfg.integrator);
      row.calibrated_t_c = cal.t_c;
      row.calibrated_t_m = with_window(row.params, cal.t_c, cfg.calibration.t_m_margin).t_m;
      row.calibration_p = cal.probability;
      row.calibration_non_unimodal = cal.non_unimodal;
      row.params = with_window(row.params, cal.t_c, cfg.calibration.t_m_margin);
    } else if (cfg.axis == SweepAxis::t_c) {
      row.params = with_window(row.params, row.axis_value, cfg.calibration.t_m_margin);
    }
    const GateRun run = run_gate(row.params, cfg.integrator);
    row.metrics = compute_metrics(run, cfg.herald);
    row.norm_drift = 0.0;
    row.excitation_drift = 0.0;
    for (int i = 0; i < 4; ++i) {
      row.norm_drift = std::max(row.norm_drift, run.norm_drift[i]);
      row.excitation_drift = std::max(row.excitation_drift, run.excitation_drift[i]);
    }
  } catch (const Error &e) {
    row.status = e.kind();
    row.message = e.what();
  } catch (const std::exception &e) {
    row.status = "internal_error";
    row.message = e.what();
  }
  return row;
}

std::vector<SweepRow> run_sweep(const SweepConfig &cfg, CalibrationCache &cache) {
  cfg.validate();
  std::vector<SweepRow> rows(cfg.grid.size());
  detail::parallel_for(rows.size(), cfg.threads, [&](std::size_t i) { rows[i] = run_point(cfg, i, cache); });
  return rows;
}

std::vector<SweepRow> run_sweep(const SweepConfig &cfg) {
  CalibrationCache cache(cfg.cache);
  return run_sweep(cfg, cache);
}

namespace {

using Field = std::variant<double, std::string>;

double metric_or_nan(const SweepRow &row, double value) {
  return row.ok() ? value : std::numeric_limits<double>::quiet_NaN();
}

std::vector<Field> row_fields(const SweepRow &r) {
  const auto &p = r.params;
  const auto &m = r.metrics;
  auto v = [&](double x) { return Field{metric_or_nan(r, x)}; };
  return {
      r.axis_value, p.omega, p.delta, p.scattering_frequency(), p.c_max, p.m_max, p.mprime_max, p.tau_c, p.t_c,
      p.tau_m, p.m_ramp_down(), p.t_m, std::string(to_string(p.ramp_shape)), std::string(to_string(p.frame)),
      r.calibrated_t_c, r.calibrated_t_m, r.calibration_p, std::string(to_string(r.herald)), v(m.phases.phi_a),
      v(m.phases.phi_b), v(m.phases.phi_ab), v(m.delta_phi_n), v(m.f_basis_unheralded), v(m.f_basis_heralded),
      v(m.f_phase_unheralded), v(m.f_phase_heralded), v(m.success[0]), v(m.success[1]), v(m.success[2]),
      v(m.success[3]), v(m.mean_success), r.norm_drift, r.excitation_drift,
      r.calibration_non_unimodal ? 1.0 : 0.0, r.status};
}

std::string format12(double x) {
  if (std::isnan(x)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

std::string csv_escape(const std::string &s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

} // namespace

const std::vector<std::string> &sweep_columns() {
  static const std::vector<std::string> columns{
      "axis_value",    "omega",          "delta",         "omega_s",       "c_max",         "m_max",
      "mprime_max",    "tau_c",          "t_c",           "tau_m",         "tau_m_off",     "t_m",
      "ramp_shape",    "frame",          "calibrated_t_c", "calibrated_t_m", "calibration_p", "herald",
      "phi_a",         "phi_b",          "phi_ab",        "delta_phi_n",   "f_basis_unher", "f_basis_her",
      "f_phase_unher", "f_phase_her",    "p_00",          "p_01",          "p_10",          "p_11",
      "p_mean",        "norm_drift",     "excitation_drift", "calibration_non_unimodal", "status"};
  return columns;
}

double round12(double value) {
  if (!std::isfinite(value)) return value;
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  return std::strtod(buf, nullptr);
}

void write_csv(std::ostream &out, const std::vector<SweepRow> &rows) {
  const auto &cols = sweep_columns();
  for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << cols[i];
  out << '\n';
  for (const auto &row : rows) {
    const auto fields = row_fields(row);
    for (std::size_t i = 0; i < fields.size(); ++i) {
      if (i) out << ',';
      if (const auto *d = std::get_if<double>(&fields[i])) out << format12(*d);
      else out << csv_escape(std::get<std::string>(fields[i]));
    }
    out << '\n';
  }
}

void write_json(std::ostream &out, const SweepConfig &cfg, const std::vector<SweepRow> &rows) {
  nlohmann::ordered_json doc;
  doc["name"] = cfg.name;
  doc["axis"] = std::string(to_string(cfg.axis));
  doc["herald"] = std::string(to_string(cfg.herald));
  doc["recalibrate"] = cfg.recalibrate;
  auto &list = doc["rows"] = nlohmann::ordered_json::array();
  const auto &cols = sweep_columns();
  for (const auto &row : rows) {
    const auto fields = row_fields(row);
    nlohmann::ordered_json obj;
    for (std::size_t i = 0; i < fields.size(); ++i) {
      if (const auto *d = std::get_if<double>(&fields[i])) {
        if (std::isfinite(*d)) obj[cols[i]] = round12(*d);
        else obj[cols[i]] = nullptr;
      } else {
        obj[cols[i]] = std::get<std::string>(fields[i]);
      }
    }
    if (!row.message.empty()) obj["message"] = row.message;
    list.push_back(std::move(obj));
  }
  out << doc.dump(2) << '\n';
}

void emit(const SweepConfig &cfg, const std::vector<SweepRow> &rows) {
  if (cfg.output.empty()) throw ConfigError("sweep output path is empty");
  std::error_code ec;
  if (cfg.output.has_parent_path()) std::filesystem::create_directories(cfg.output.parent_path(), ec);
  if (ec) throw IoError("cannot create directory '" + cfg.output.parent_path().string() + "': " + ec.message());
  std::ofstream out(cfg.output, std::ios::binary);
  if (!out) throw IoError("cannot open '" + cfg.output.string() + "' for writing");
  if (cfg.format == OutputFormat::csv) write_csv(out, rows);
  else write_json(out, cfg, rows);
  out.flush();
  if (!out) throw IoError("failed writing '" + cfg.output.string() + "'");
}

const std::vector<std::string> &preset_names() {
  static const std::vector<std::string> names{"fig4", "fig5", "fig7", "fig8"};
  return names;
}

SweepConfig preset_config(std::string_view name) {
  SweepConfig cfg;
  cfg.name = std::string(name);
  cfg.params = PhysicsParams{};
  cfg.params.mprime_max = 0.0;
  cfg.recalibrate = true;
  const auto fig4_grid = make_grid(0.01, 0.5, 16, GridSpacing::log);
  if (name == "fig4") {
    cfg.axis = SweepAxis::m_max;
    cfg.grid = fig4_grid;
    cfg.herald = HeraldMode::atoms_ground;
  } else if (name == "fig5") {
    cfg.axis = SweepAxis::mprime_max;
    cfg.grid = make_grid(0.0, 0.2, 16, GridSpacing::linear);
    cfg.params.m_max = 0.25;
    cfg.herald = HeraldMode::paths;
    cfg.calibration_overrides = {{"mprime_max", 0.0}};
  } else if (name == "fig7") {
    cfg.axis = SweepAxis::m_max;
    cfg.grid = fig4_grid;
    cfg.params.tau_m = 1.0;
    cfg.herald = HeraldMode::paths;
    cfg.calibration_overrides = {{"tau_m", 1000.0}};
  } else if (name == "fig8") {
    cfg.axis = SweepAxis::tau_m;
    cfg.grid = make_grid(1.0, 1000.0, 12, GridSpacing::log);
    cfg.params.m_max = 0.25;
    cfg.herald = HeraldMode::paths;
    cfg.calibration_overrides = {{"tau_m", 1000.0}};
  } else {
    throw ConfigError("unknown preset '" + std::string(name) + "' (expected fig4|fig5|fig7|fig8)");
  }
  return cfg;
}

} // namespace zeno

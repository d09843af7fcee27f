#include "zeno/errors.hpp"
#include "zeno/sweeps.hpp"

#include <fstream>
#include <set>

namespace zeno {

namespace {

using nlohmann::json;

std::string type_name(const json &v) { return v.type_name(); }

/// Walks one JSON object, tracking the dotted path for error messages and
/// rejecting keys nobody asked for.
class Section {
public:
  Section(const json &node, std::string path) : node_(node), path_(std::move(path)) {
    if (!node_.is_object()) fail("expected an object, got " + type_name(node_));
  }

  [[noreturn]] void fail(const std::string &what) const {
    throw ConfigError("sweep config: " + (path_.empty() ? std::string("<root>") : path_) + ": " + what);
  }

  std::string child_path(const std::string &key) const { return path_.empty() ? key : path_ + "." + key; }

  const json *find(const std::string &key) {
    seen_.insert(key);
    auto it = node_.find(key);
    return it == node_.end() ? nullptr : &*it;
  }

  void number(const std::string &key, double &out) {
    if (const json *v = find(key)) out = as_number(*v, child_path(key));
  }
  void number(const std::string &key, std::optional<double> &out) {
    if (const json *v = find(key)) out = as_number(*v, child_path(key));
  }
  void integer(const std::string &key, int &out) {
    if (const json *v = find(key)) {
      if (!v->is_number_integer()) throw ConfigError("sweep config: " + child_path(key) + ": expected an integer, got " + type_name(*v));
      out = v->get<int>();
    }
  }
  void boolean(const std::string &key, bool &out) {
    if (const json *v = find(key)) {
      if (!v->is_boolean()) throw ConfigError("sweep config: " + child_path(key) + ": expected true or false, got " + type_name(*v));
      out = v->get<bool>();
    }
  }
  template <class Parse, class T> void keyword(const std::string &key, T &out, Parse parse) {
    if (const json *v = find(key)) {
      if (!v->is_string()) throw ConfigError("sweep config: " + child_path(key) + ": expected a string, got " + type_name(*v));
      try {
        out = parse(v->get<std::string>());
      } catch (const ConfigError &e) {
        throw ConfigError("sweep config: " + child_path(key) + ": " + e.what());
      }
    }
  }

  void finish() const {
    for (auto it = node_.begin(); it != node_.end(); ++it)
      if (!seen_.count(it.key())) throw ConfigError("sweep config: unknown key '" + child_path(it.key()) + "'");
  }

  static double as_number(const json &v, const std::string &path) {
    if (!v.is_number()) throw ConfigError("sweep config: " + path + ": expected a number, got " + type_name(v));
    return v.get<double>();
  }

private:
  const json &node_;
  std::string path_;
  std::set<std::string> seen_;
};

PhysicsParams read_params(const json &doc, const std::string &path, PhysicsParams p) {
  Section s(doc, path);
  s.number("omega", p.omega);
  s.number("delta", p.delta);
  s.number("omega_s", p.omega_s);
  s.number("c_max", p.c_max);
  s.number("m_max", p.m_max);
  s.number("mprime_max", p.mprime_max);
  s.number("tau_c", p.tau_c);
  s.number("t_c", p.t_c);
  s.number("tau_m", p.tau_m);
  s.number("tau_m_off", p.tau_m_off);
  s.number("t_m", p.t_m);
  s.keyword("ramp_shape", p.ramp_shape, parse_pulse_shape);
  s.keyword("frame", p.frame, parse_frame);
  s.finish();
  return p;
}

IntegratorConfig read_integrator(const json &doc, const std::string &path, IntegratorConfig c) {
  Section s(doc, path);
  s.number("rtol", c.rtol);
  s.number("atol", c.atol);
  s.number("max_step", c.max_step);
  s.keyword("method", c.method, parse_method);
  s.keyword("scheme", c.scheme, parse_rk_scheme);
  s.number("norm_drift_bound", c.norm_drift_bound);
  s.integer("oracle_steps", c.oracle_steps);
  s.finish();
  return c;
}

std::vector<double> read_grid(const json &doc, const std::string &path) {
  auto values_of = [](const json &arr, const std::string &where) {
    std::vector<double> out;
    for (std::size_t i = 0; i < arr.size(); ++i)
      out.push_back(Section::as_number(arr[i], where + "[" + std::to_string(i) + "]"));
    return out;
  };
  if (doc.is_array()) return values_of(doc, path);
  Section s(doc, path);
  if (const json *values = s.find("values")) {
    if (!values->is_array()) s.fail("'values' must be an array of numbers");
    if (s.find("start") || s.find("stop") || s.find("count") || s.find("spacing"))
      s.fail("give either 'values' or start/stop/count/spacing, not both");
    s.finish();
    return values_of(*values, s.child_path("values"));
  }
  std::optional<double> start, stop;
  int count = 0;
  GridSpacing spacing = GridSpacing::linear;
  s.number("start", start);
  s.number("stop", stop);
  s.integer("count", count);
  s.keyword("spacing", spacing, parse_grid_spacing);
  s.finish();
  if (!start || !stop || count == 0) s.fail("needs 'values' or all of start, stop, count");
  try {
    return make_grid(*start, *stop, count, spacing);
  } catch (const ConfigError &e) {
    s.fail(e.what());
  }
}

void read_calibration(const json &doc, const std::string &path, SweepConfig &cfg) {
  Section s(doc, path);
  if (const json *range = s.find("range")) {
    if (!range->is_array() || range->size() != 2) s.fail("'range' must be [t_c_min, t_c_max]");
    cfg.calibration.t_c_min = Section::as_number((*range)[0], s.child_path("range[0]"));
    cfg.calibration.t_c_max = Section::as_number((*range)[1], s.child_path("range[1]"));
  }
  s.integer("coarse_points", cfg.calibration.coarse_points);
  s.number("tolerance", cfg.calibration.tolerance);
  s.number("floor", cfg.calibration.floor);
  s.number("t_m_margin", cfg.calibration.t_m_margin);
  s.integer("threads", cfg.calibration.threads);
  if (const json *ov = s.find("overrides")) {
    Section o(*ov, s.child_path("overrides"));
    for (auto it = ov->begin(); it != ov->end(); ++it) {
      const double value = Section::as_number(it.value(), o.child_path(it.key()));
      PhysicsParams probe;
      try {
        set_param(probe, it.key(), value);
      } catch (const ConfigError &) {
        o.fail("unknown parameter '" + it.key() + "'");
      }
      cfg.calibration_overrides[it.key()] = value;
      o.find(it.key());
    }
    o.finish();
  }
  s.finish();
}

void read_output(const json &doc, SweepConfig &cfg) {
  auto infer_format = [&](const std::string &path) {
    if (path.size() >= 5 && path.compare(path.size() - 5, 5, ".json") == 0) cfg.format = OutputFormat::json;
  };
  if (doc.is_string()) {
    cfg.output = doc.get<std::string>();
    infer_format(doc.get<std::string>());
    return;
  }
  Section s(doc, "output");
  if (const json *p = s.find("path")) {
    if (!p->is_string()) s.fail("'path' must be a string");
    cfg.output = p->get<std::string>();
    infer_format(p->get<std::string>());
  }
  s.keyword("format", cfg.format, parse_output_format);
  s.finish();
}

} // namespace

PhysicsParams parse_physics_params(const nlohmann::json &doc, PhysicsParams base) {
  return read_params(doc, "params", std::move(base));
}

IntegratorConfig parse_integrator_config(const nlohmann::json &doc, IntegratorConfig base) {
  return read_integrator(doc, "integrator", base);
}

SweepConfig parse_sweep_config(const nlohmann::json &doc) {
  Section root(doc, "");
  SweepConfig cfg;
  if (const json *preset = root.find("preset")) {
    if (!preset->is_string()) root.fail("'preset' must be a string");
    try {
      cfg = preset_config(preset->get<std::string>());
    } catch (const ConfigError &e) {
      throw ConfigError(std::string("sweep config: preset: ") + e.what());
    }
  }
  if (const json *name = root.find("name")) {
    if (!name->is_string()) root.fail("'name' must be a string");
    cfg.name = name->get<std::string>();
  }
  if (const json *p = root.find("params")) cfg.params = read_params(*p, "params", cfg.params);
  if (const json *i = root.find("integrator")) cfg.integrator = read_integrator(*i, "integrator", cfg.integrator);
  root.keyword("herald", cfg.herald, parse_herald_mode);
  root.keyword("axis", cfg.axis, parse_sweep_axis);
  if (const json *g = root.find("grid")) cfg.grid = read_grid(*g, "grid");
  root.boolean("recalibrate", cfg.recalibrate);
  if (const json *c = root.find("calibration")) read_calibration(*c, "calibration", cfg);
  root.integer("threads", cfg.threads);
  if (const json *o = root.find("output")) read_output(*o, cfg);
  if (const json *c = root.find("cache")) {
    if (!c->is_string()) root.fail("'cache' must be a path string");
    cfg.cache = c->get<std::string>();
  }
  root.finish();
  if (cfg.grid.empty()) throw ConfigError("sweep config: grid: missing or empty");
  try {
    cfg.validate();
  } catch (const ConfigError &e) {
    throw ConfigError(std::string("sweep config: ") + e.what());
  }
  return cfg;
}

SweepConfig load_sweep_config(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open sweep config '" + path.string() + "'");
  json doc;
  try {
    doc = json::parse(in, nullptr, true, /*ignore_comments=*/true);
  } catch (const json::parse_error &e) {
    throw ConfigError("sweep config '" + path.string() + "': " + e.what());
  }
  return parse_sweep_config(doc);
}

} // namespace zeno

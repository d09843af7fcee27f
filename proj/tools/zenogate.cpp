// zenogate: command-line front end for the heralded Zeno gate simulator.

#include "zeno/calibrate.hpp"
#include "zeno/errors.hpp"
#include "zeno/gate.hpp"
#include "zeno/sweeps.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>

namespace {

using namespace zeno;
using nlohmann::ordered_json;

struct ParamOptions {
  PhysicsParams params;
  double omega_s = 0.0, tau_m_off = 0.0;
  std::string ramp_shape = "raised_cosine", frame = "rotating";
  CLI::Option *omega_s_opt = nullptr, *tau_m_off_opt = nullptr;

  void attach(CLI::App *app) {
    app->add_option("--omega", params.omega, "photon frequency")->capture_default_str();
    app->add_option("--delta", params.delta, "intermediate-level detuning")->capture_default_str();
    omega_s_opt = app->add_option("--omega-s", omega_s, "scattering-mode frequency (default: omega)");
    app->add_option("--c-max", params.c_max, "waveguide coupling amplitude")->capture_default_str();
    app->add_option("--m-max", params.m_max, "photon-atom matrix element")->capture_default_str();
    app->add_option("--mprime-max", params.mprime_max, "scattering matrix element")->capture_default_str();
    app->add_option("--tau-c", params.tau_c, "C ramp duration")->capture_default_str();
    app->add_option("--t-c", params.t_c, "C plateau duration")->capture_default_str();
    app->add_option("--tau-m", params.tau_m, "M turn-on ramp duration")->capture_default_str();
    tau_m_off_opt = app->add_option("--tau-m-off", tau_m_off, "M turn-off ramp duration (default: tau-m)");
    app->add_option("--t-m", params.t_m, "M plateau duration")->capture_default_str();
    app->add_option("--ramp-shape", ramp_shape, "raised_cosine|linear|step")->capture_default_str();
    app->add_option("--frame", frame, "rotating|lab")->capture_default_str();
  }

  PhysicsParams resolve() const {
    PhysicsParams p = params;
    if (omega_s_opt->count()) p.omega_s = omega_s;
    if (tau_m_off_opt->count()) p.tau_m_off = tau_m_off;
    p.ramp_shape = parse_pulse_shape(ramp_shape);
    p.frame = parse_frame(frame);
    p.validate();
    return p;
  }
};

struct IntegratorOptions {
  IntegratorConfig cfg;
  std::string method = "adaptive_rk", scheme = "dop853";

  void attach(CLI::App *app) {
    app->add_option("--rtol", cfg.rtol, "relative tolerance")->capture_default_str();
    app->add_option("--atol", cfg.atol, "absolute tolerance")->capture_default_str();
    app->add_option("--max-step", cfg.max_step, "step cap, 0 for none")->capture_default_str();
    app->add_option("--method", method, "adaptive_rk|expm_oracle")->capture_default_str();
    app->add_option("--scheme", scheme, "dop853|dopri5")->capture_default_str();
    app->add_option("--oracle-steps", cfg.oracle_steps, "steps for expm_oracle")->capture_default_str();
    app->add_option("--norm-drift-bound", cfg.norm_drift_bound, "abort above this norm drift")->capture_default_str();
  }

  IntegratorConfig resolve() const {
    IntegratorConfig c = cfg;
    c.method = parse_method(method);
    c.scheme = parse_rk_scheme(scheme);
    c.validate();
    return c;
  }
};

struct SearchOptions {
  CalibrationSearch search;
  double t_c_min = 0.0, t_c_max = 0.0;
  CLI::Option *min_opt = nullptr, *max_opt = nullptr;
  std::string cache;

  void attach(CLI::App *app) {
    min_opt = app->add_option("--t-c-min", t_c_min, "lower T_C bound (default 0.25 pi/(2 C_max))");
    max_opt = app->add_option("--t-c-max", t_c_max, "upper T_C bound (default 2 pi/(2 C_max))");
    app->add_option("--coarse-points", search.coarse_points, "coarse scan size")->capture_default_str();
    app->add_option("--tolerance", search.tolerance, "golden-section T_C tolerance")->capture_default_str();
    app->add_option("--floor", search.floor, "minimum acceptable transfer probability")->capture_default_str();
    app->add_option("--t-m-margin", search.t_m_margin, "T_M beyond 2 tau_C + T_C")->capture_default_str();
    app->add_option("--cache", cache, "calibration cache file");
  }

  CalibrationSearch resolve() const {
    CalibrationSearch s = search;
    if (min_opt->count()) s.t_c_min = t_c_min;
    if (max_opt->count()) s.t_c_max = t_c_max;
    s.validate();
    return s;
  }
};

double json_number(double v) { return round12(v); }

ordered_json metrics_json(const PhysicsParams &p, const GateRun &run, const GateMetrics &m) {
  ordered_json out;
  out["t_c"] = json_number(p.t_c);
  out["t_m"] = json_number(p.t_m);
  out["total_time"] = json_number(run.total_time);
  out["herald"] = std::string(to_string(m.herald_mode));
  out["phi_a"] = json_number(m.phases.phi_a);
  out["phi_b"] = json_number(m.phases.phi_b);
  out["phi_ab"] = json_number(m.phases.phi_ab);
  out["delta_phi_n"] = json_number(m.delta_phi_n);
  out["f_basis_unher"] = json_number(m.f_basis_unheralded);
  out["f_basis_her"] = std::isfinite(m.f_basis_heralded) ? ordered_json(json_number(m.f_basis_heralded)) : nullptr;
  out["f_phase_unher"] = json_number(m.f_phase_unheralded);
  out["f_phase_her"] = std::isfinite(m.f_phase_heralded) ? ordered_json(json_number(m.f_phase_heralded)) : nullptr;
  const char *names[] = {"p_00", "p_01", "p_10", "p_11"};
  for (int i = 0; i < 4; ++i) out[names[i]] = json_number(m.success[i]);
  out["p_mean"] = json_number(m.mean_success);
  double drift = 0.0, ex = 0.0;
  for (int i = 0; i < 4; ++i) drift = std::max(drift, run.norm_drift[i]), ex = std::max(ex, run.excitation_drift[i]);
  out["norm_drift"] = drift;
  out["excitation_drift"] = ex;
  return out;
}

std::ofstream open_output(const std::string &path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  return out;
}

int report_error(const std::string &kind, const std::string &message) {
  ordered_json err;
  err["error"] = kind;
  err["message"] = message;
  std::cerr << err.dump() << '\n';
  return kind == "usage_error" ? 64 : 1;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Heralded quantum Zeno gate simulator"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "zenogate 1.0");

  // simulate
  auto *sim = app.add_subcommand("simulate", "run the four logical inputs once and print gate metrics");
  ParamOptions sim_params;
  IntegratorOptions sim_integ;
  SearchOptions sim_search;
  std::string sim_herald = "paths", sim_trajectory;
  int sim_traj_input = 3, sim_traj_samples = 201;
  bool sim_calibrate = false;
  sim_params.attach(sim);
  sim_integ.attach(sim);
  sim->add_option("--herald", sim_herald, "paths|atoms_ground")->capture_default_str();
  sim->add_flag("--calibrate", sim_calibrate, "tune T_C (and T_M) before simulating");
  sim->add_option("--trajectory", sim_trajectory, "write |amplitude|^2 samples of one input to this CSV");
  sim->add_option("--trajectory-input", sim_traj_input, "logical input 0..3 for --trajectory")
      ->check(CLI::Range(0, 3))
      ->capture_default_str();
  sim->add_option("--trajectory-samples", sim_traj_samples, "samples for --trajectory")
      ->check(CLI::Range(2, 1000000))
      ->capture_default_str();
  auto *sim_cal_group = sim->add_option_group("calibration", "used with --calibrate");
  sim_search.attach(sim_cal_group);

  // calibrate
  auto *cal = app.add_subcommand("calibrate", "tune the coupling window for complete single-photon transfer");
  ParamOptions cal_params;
  IntegratorOptions cal_integ;
  SearchOptions cal_search;
  cal_params.attach(cal);
  cal_integ.attach(cal);
  cal_search.attach(cal);

  // sweep
  auto *sweep = app.add_subcommand("sweep", "run a parameter sweep described by a JSON config");
  std::string sweep_config, sweep_out;
  int sweep_threads = -1;
  sweep->add_option("--config", sweep_config, "sweep config file")->required()->check(CLI::ExistingFile);
  sweep->add_option("--out", sweep_out, "override the output path");
  sweep->add_option("--threads", sweep_threads, "worker threads (0 = hardware concurrency)");

  // preset
  auto *preset = app.add_subcommand("preset", "run a built-in figure sweep");
  std::string preset_name, preset_dir = ".", preset_format = "csv", preset_cache;
  int preset_threads = 0;
  bool preset_no_cache = false;
  preset->add_option("name", preset_name, "fig4|fig5|fig7|fig8")->required()->check(CLI::IsMember(preset_names()));
  preset->add_option("--out", preset_dir, "output directory")->capture_default_str();
  preset->add_option("--format", preset_format, "csv|json")->capture_default_str();
  preset->add_option("--threads", preset_threads, "worker threads (0 = hardware concurrency)");
  preset->add_option("--cache", preset_cache, "calibration cache file (default <out>/calibration_cache.tsv)");
  preset->add_flag("--no-cache", preset_no_cache, "keep calibrations in memory only");

  // dump-envelopes
  auto *env = app.add_subcommand("dump-envelopes", "print C(t), M(t), M'(t) as CSV");
  ParamOptions env_params;
  int env_samples = 1001;
  std::string env_out;
  env_params.attach(env);
  env->add_option("--samples", env_samples, "number of sample times")->check(CLI::Range(2, 10000000))->capture_default_str();
  env->add_option("--out", env_out, "write to file instead of stdout");

  // dump-basis
  auto *basis_cmd = app.add_subcommand("dump-basis", "list the truncated Fock basis");
  int basis_n = 2;
  basis_cmd->add_option("--n-max", basis_n, "excitation cutoff")->check(CLI::Range(0, 6))->capture_default_str();

  // dump-hamiltonian
  auto *ham = app.add_subcommand("dump-hamiltonian", "print the nonzero pattern of H(t) per excitation block");
  ParamOptions ham_params;
  double ham_time = -1.0;
  ham_params.attach(ham);
  ham->add_option("--time", ham_time, "evaluation time (default: middle of the schedule)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp &e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    return report_error("usage_error", e.what());
  }

  try {
    if (*sim) {
      PhysicsParams p = sim_params.resolve();
      const IntegratorConfig cfg = sim_integ.resolve();
      const HeraldMode herald = parse_herald_mode(sim_herald);
      ordered_json out;
      if (sim_calibrate) {
        const auto search = sim_search.resolve();
        CalibrationCache cache(sim_search.cache);
        const auto r = cache.calibrate(p, search, cfg);
        p = with_window(p, r.t_c, search.t_m_margin);
        out["calibration_p"] = json_number(r.probability);
        if (r.non_unimodal) std::cerr << "warning: transfer probability scan has several comparable peaks\n";
      }
      const GateRun run = run_gate(p, cfg);
      const GateMetrics m = compute_metrics(run, herald);
      out.update(metrics_json(p, run, m));
      if (!sim_trajectory.empty()) {
        HamiltonianModel model(run.basis, p);
        const auto psi0 = StateVector::basis_state(*run.basis, input_configuration(sim_traj_input));
        const auto traj = sample_trajectory(model, psi0, 0.0, run.total_time, sim_traj_samples, cfg);
        auto file = open_output(sim_trajectory);
        write_trajectory_csv(file, traj);
        if (!file) throw IoError("failed writing '" + sim_trajectory + "'");
      }
      std::cout << out.dump(2) << '\n';
    } else if (*cal) {
      const PhysicsParams p = cal_params.resolve();
      const IntegratorConfig cfg = cal_integ.resolve();
      const auto search = cal_search.resolve();
      CalibrationCache cache(cal_search.cache);
      const auto r = cache.calibrate(p, search, cfg);
      if (r.non_unimodal) std::cerr << "warning: transfer probability scan has several comparable peaks\n";
      ordered_json out;
      out["t_c"] = r.t_c;
      out["t_m"] = r.t_m;
      out["probability"] = r.probability;
      out["iterations"] = r.iterations;
      out["evaluations"] = r.evaluations;
      out["non_unimodal"] = r.non_unimodal;
      out["from_cache"] = r.from_cache;
      out["area_theorem_t_c"] = area_theorem_window(p) - p.tau_c;
      std::cout << out.dump(2) << '\n';
    } else if (*sweep) {
      SweepConfig cfg = load_sweep_config(sweep_config);
      if (!sweep_out.empty()) cfg.output = sweep_out;
      if (sweep_threads >= 0) cfg.threads = sweep_threads;
      if (cfg.output.empty()) throw ConfigError("sweep config: output: missing (or pass --out)");
      const auto rows = run_sweep(cfg);
      emit(cfg, rows);
      int failed = 0;
      for (const auto &row : rows) failed += row.ok() ? 0 : 1;
      std::cerr << "wrote " << rows.size() << " rows to " << cfg.output.string();
      if (failed) std::cerr << " (" << failed << " points failed; see status column)";
      std::cerr << '\n';
    } else if (*preset) {
      SweepConfig cfg = preset_config(preset_name);
      cfg.format = parse_output_format(preset_format);
      cfg.threads = preset_threads;
      const std::filesystem::path dir = preset_dir;
      cfg.output = dir / (preset_name + (cfg.format == OutputFormat::csv ? ".csv" : ".json"));
      if (!preset_no_cache) cfg.cache = preset_cache.empty() ? dir / "calibration_cache.tsv" : std::filesystem::path(preset_cache);
      const auto rows = run_sweep(cfg);
      emit(cfg, rows);
      std::cerr << "wrote " << rows.size() << " rows to " << cfg.output.string() << '\n';
    } else if (*env) {
      const PhysicsParams p = env_params.resolve();
      const Schedule s = make_schedule(p);
      std::ofstream file;
      if (!env_out.empty()) file = open_output(env_out);
      std::ostream &out = env_out.empty() ? std::cout : file;
      out << "t,c,m,mprime\n";
      char buf[128];
      for (int k = 0; k < env_samples; ++k) {
        const double t = s.total_time * k / (env_samples - 1);
        std::snprintf(buf, sizeof buf, "%.12g,%.12g,%.12g,%.12g\n", t, value_at(s.c, t), value_at(s.m, t),
                      value_at(s.mprime, t));
        out << buf;
      }
      if (!out) throw IoError("failed writing envelopes");
    } else if (*basis_cmd) {
      build_basis(basis_n).dump(std::cout);
    } else if (*ham) {
      const PhysicsParams p = ham_params.resolve();
      HamiltonianModel model(std::make_shared<const BasisSet>(2), p);
      model.dump_pattern(std::cout, ham_time >= 0.0 ? ham_time : 0.5 * model.schedule().total_time);
    }
  } catch (const Error &e) {
    return report_error(e.kind(), e.what());
  } catch (const std::exception &e) {
    return report_error("internal_error", e.what());
  }
  return 0;
}

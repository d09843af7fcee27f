#include "zeno/gate.hpp"

#include "zeno/errors.hpp"

#include <cmath>
#include <map>
#include <numbers>
#include <tuple>

namespace zeno {

std::string_view to_string(HeraldMode mode) noexcept {
  return mode == HeraldMode::paths ? "paths" : "atoms_ground";
}

HeraldMode parse_herald_mode(std::string_view name) {
  if (name == "paths") return HeraldMode::paths;
  if (name == "atoms_ground") return HeraldMode::atoms_ground;
  throw ConfigError("unknown herald mode '" + std::string(name) + "' (expected paths|atoms_ground)");
}

BasisState input_configuration(int input) {
  return BasisState{logical_qubit1(input), logical_qubit2(input), 0, 0};
}

BasisState ideal_output_configuration(int output) {
  return BasisState{logical_qubit2(output), logical_qubit1(output), 0, 0};
}

IntegrationResult evolve_logical_input(const HamiltonianModel &model, int input, const IntegratorConfig &cfg) {
  const double t_end = model.schedule().total_time;
  auto psi0 = StateVector::basis_state(model.basis(), input_configuration(input));
  if (input == 0) {
    psi0.time = t_end;
    return IntegrationResult{psi0};
  }
  return integrate(model, psi0, 0.0, t_end, cfg);
}

GateRun run_gate(const PhysicsParams &params, const IntegratorConfig &cfg) {
  params.validate();
  auto basis = std::make_shared<const BasisSet>(2);
  HamiltonianModel model(basis, params);

  GateRun run;
  run.params = params;
  run.basis = basis;
  run.total_time = model.schedule().total_time;
  for (int input = 0; input < 4; ++input) {
    auto r = evolve_logical_input(model, input, cfg);
    run.finals[input] = r.state;
    run.norm_drift[input] = r.max_norm_drift;
    run.excitation_drift[input] =
        std::abs(excitation_expectation(*basis, r.state) - input_configuration(input).excitations());
  }
  return run;
}

double wrap_phase(double angle) noexcept {
  double r = std::remainder(angle, 2.0 * std::numbers::pi);
  if (r <= -std::numbers::pi) r += 2.0 * std::numbers::pi;
  return r;
}

double Phases::delta_phi_n() const noexcept { return wrap_phase(phi_ab - phi_a - phi_b); }

namespace {

complex ideal_amplitude(const GateRun &run, int input) {
  return run.finals[input][run.basis->at(ideal_output_configuration(input))];
}

double checked_arg(complex amp, const char *name) {
  if (std::abs(amp) < 1e-12)
    throw DegenerateAmplitude(std::string("target amplitude for ") + name + " vanishes; phase undefined");
  return wrap_phase(std::arg(amp));
}

complex correction(const Phases &ph, int output) {
  return std::polar(1.0, -(logical_qubit1(output) * ph.phi_a + logical_qubit2(output) * ph.phi_b));
}

using EnvKey = std::tuple<int, int, int, int>;
using Reduced = std::map<EnvKey, Eigen::Vector4cd>;

/// Splits a state into environment configurations (n_c, n_d, level_A,
/// level_B), keeping for each the corrected amplitudes on the computational
/// outputs. Components with two photons in a waveguide are dropped.
void accumulate(Reduced &out, const BasisSet &basis, const StateVector &psi, const Phases &ph, complex weight) {
  for (std::size_t s = 0; s < basis.size(); ++s) {
    const auto &st = basis[s];
    if (st.n_a > 1 || st.n_b > 1) continue;
    const complex amp = psi[s];
    if (amp == complex(0.0)) continue;
    const int output = st.n_b * 2 + st.n_a; // relabelled: waveguide B carries qubit 1
    EnvKey env{st.n_c, st.n_d, excitation(st.level_a), excitation(st.level_b)};
    auto [it, fresh] = out.try_emplace(env, Eigen::Vector4cd::Zero());
    it->second(output) += weight * amp * correction(ph, output);
  }
}

double overlap_fidelity(const Eigen::Vector4cd &target, const Reduced &reduced) {
  double f = 0.0;
  for (const auto &[env, v] : reduced) f += std::norm(target.dot(v));
  return f;
}

Eigen::Vector4cd ideal_image(const Eigen::Vector4cd &input, double target_phase) {
  Eigen::Vector4cd out = input;
  out(3) *= std::polar(1.0, target_phase);
  return out;
}

/// Like extract_phases, but a vanishing amplitude yields a zero correction
/// instead of an error; its contribution to any fidelity is nil anyway.
Phases correction_phases(const GateRun &run) {
  auto lenient = [&](int input) {
    const complex amp = ideal_amplitude(run, input);
    return std::abs(amp) < 1e-12 ? 0.0 : wrap_phase(std::arg(amp));
  };
  return Phases{lenient(2), lenient(1), lenient(3)};
}

} // namespace

Phases extract_phases(const GateRun &run) {
  Phases ph;
  ph.phi_a = checked_arg(ideal_amplitude(run, 2), "phi_a (|1,0> input)");
  ph.phi_b = checked_arg(ideal_amplitude(run, 1), "phi_b (|0,1> input)");
  ph.phi_ab = checked_arg(ideal_amplitude(run, 3), "phi_ab (|1,1> input)");
  return ph;
}

Eigen::Matrix4cd transfer_matrix(const GateRun &run, const Phases &phases) {
  Eigen::Matrix4cd m;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      m(j, i) = run.finals[i][run.basis->at(ideal_output_configuration(j))] * correction(phases, j);
  return m;
}

HeraldResult herald(const GateRun &run, HeraldMode mode) {
  HeraldResult h;
  h.mode = mode;
  h.projected = run;
  const BasisSet &basis = *run.basis;
  for (int input = 0; input < 4; ++input) {
    const BasisState ideal = ideal_output_configuration(input);
    auto &amps = h.projected.finals[input].amplitudes;
    for (std::size_t s = 0; s < basis.size(); ++s) {
      const auto &st = basis[s];
      const bool keep = mode == HeraldMode::paths ? st == ideal : (st.atoms_ground() && st.scattering_empty());
      if (!keep) amps(static_cast<Eigen::Index>(s)) = 0.0;
    }
    h.success[input] = amps.squaredNorm();
  }
  h.mean_success = 0.25 * (h.success[0] + h.success[1] + h.success[2] + h.success[3]);
  return h;
}

FidelityPair fidelity_basis_avg(const GateRun &run, HeraldMode mode, double target_phase) {
  const Phases ph = correction_phases(run);
  const HeraldResult h = herald(run, mode);
  FidelityPair out;
  double her_sum = 0.0;
  int her_count = 0;
  for (int input = 0; input < 4; ++input) {
    const Eigen::Vector4cd target = ideal_image(Eigen::Vector4cd::Unit(input), target_phase);
    Reduced raw, projected;
    accumulate(raw, *run.basis, run.finals[input], ph, 1.0);
    accumulate(projected, *run.basis, h.projected.finals[input], ph, 1.0);
    out.unheralded += 0.25 * overlap_fidelity(target, raw);
    if (h.success[input] < 1e-12) {
      out.excluded[input] = true;
      continue;
    }
    her_sum += overlap_fidelity(target, projected) / h.success[input];
    ++her_count;
  }
  out.heralded = her_count > 0 ? her_sum / her_count : std::nan("");
  return out;
}

FidelityPair fidelity_phase_sensitive(const GateRun &run, HeraldMode mode, double target_phase) {
  const Phases ph = correction_phases(run);
  const HeraldResult h = herald(run, mode);
  const Eigen::Vector4cd plus = Eigen::Vector4cd::Constant(0.5);
  const Eigen::Vector4cd target = ideal_image(plus, target_phase);

  Reduced raw, projected;
  StateVector projected_sum{Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(run.basis->size())), run.total_time};
  for (int input = 0; input < 4; ++input) {
    accumulate(raw, *run.basis, run.finals[input], ph, 0.5);
    accumulate(projected, *run.basis, h.projected.finals[input], ph, 0.5);
    projected_sum.amplitudes += 0.5 * h.projected.finals[input].amplitudes;
  }
  FidelityPair out;
  out.unheralded = overlap_fidelity(target, raw);
  const double p = projected_sum.amplitudes.squaredNorm();
  if (p < 1e-12) {
    out.excluded.fill(true);
    out.heralded = std::nan("");
  } else {
    out.heralded = overlap_fidelity(target, projected) / p;
  }
  return out;
}

std::pair<double, double> best_phase_sensitive_fidelity(const GateRun &run) {
  // <target(theta)|v> = a + b e^{-i theta} with a = (v0 + v1 + v2)/2, b = v3/2,
  // so F(theta) = sum |a|^2 + |b|^2 + 2 Re(e^{-i theta} sum conj(a) b).
  const Phases ph = correction_phases(run);
  Reduced raw;
  for (int input = 0; input < 4; ++input) accumulate(raw, *run.basis, run.finals[input], ph, 0.5);
  complex cross = 0.0;
  double base = 0.0;
  for (const auto &[env, v] : raw) {
    const complex a = 0.5 * (v(0) + v(1) + v(2));
    const complex b = 0.5 * v(3);
    base += std::norm(a) + std::norm(b);
    cross += std::conj(a) * b;
  }
  return {wrap_phase(std::arg(cross)), base + 2.0 * std::abs(cross)};
}

GateMetrics compute_metrics(const GateRun &run, HeraldMode mode) {
  GateMetrics m;
  m.herald_mode = mode;
  m.phases = extract_phases(run);
  m.delta_phi_n = m.phases.delta_phi_n();
  const auto basis_f = fidelity_basis_avg(run, mode);
  const auto phase_f = fidelity_phase_sensitive(run, mode);
  m.f_basis_unheralded = basis_f.unheralded;
  m.f_basis_heralded = basis_f.heralded;
  m.f_phase_unheralded = phase_f.unheralded;
  m.f_phase_heralded = phase_f.heralded;
  m.heralded_excluded = basis_f.excluded;
  const auto h = herald(run, mode);
  m.success = h.success;
  m.mean_success = h.mean_success;
  return m;
}

} // namespace zeno

#pragma once

#include "zeno/evolve.hpp"

#include <Eigen/Dense>

#include <array>
#include <memory>
#include <string_view>

namespace zeno {

/// Post-selection rule applied to the output of each logical input.
///  - paths: keep only the ideal output configuration (photons in the
///    relabelled correct waveguides, atoms ground, scattering modes empty)
///  - atoms_ground: keep everything with both atoms in g and no scattered
///    photon, which also admits n_a = 2 or n_b = 2 for the |1,1> input
enum class HeraldMode { paths, atoms_ground };

std::string_view to_string(HeraldMode mode) noexcept;
HeraldMode parse_herald_mode(std::string_view name);

/// Logical inputs in the order |0,0>, |0,1>, |1,0>, |1,1>. Qubit 1 is
/// waveguide A, qubit 2 is waveguide B, logical 1 means one photon present.
constexpr int logical_qubit1(int input) noexcept { return input >> 1; }
constexpr int logical_qubit2(int input) noexcept { return input & 1; }

/// Physical configuration prepared for a logical input.
BasisState input_configuration(int input);
/// Physical configuration read as logical `output` once the output waveguides
/// are swapped (a <-> b); atoms ground, scattering modes empty.
BasisState ideal_output_configuration(int output);

struct GateRun {
  PhysicsParams params;
  std::shared_ptr<const BasisSet> basis;
  std::array<StateVector, 4> finals;
  double total_time = 0.0;
  std::array<double, 4> norm_drift{};
  std::array<double, 4> excitation_drift{};
};

/// Evolves one logical input over the full schedule. Input 0 is returned
/// without integration: the vacuum block is 1x1 with zero energy in both frames.
IntegrationResult evolve_logical_input(const HamiltonianModel &model, int input, const IntegratorConfig &cfg);

GateRun run_gate(const PhysicsParams &params, const IntegratorConfig &cfg);

struct Phases {
  double phi_a = 0.0;
  double phi_b = 0.0;
  double phi_ab = 0.0;
  /// phi_ab - phi_a - phi_b reduced to (-pi, pi].
  double delta_phi_n() const noexcept;
};

/// Reduces an angle to (-pi, pi].
double wrap_phase(double angle) noexcept;

/// Linear and two-photon phases read from the ideal output amplitudes.
/// Throws DegenerateAmplitude when a target amplitude is below 1e-12.
Phases extract_phases(const GateRun &run);

/// M(j, i): amplitude of logical output j for logical input i, after the
/// output relabelling and the -phi_a / -phi_b corrections.
Eigen::Matrix4cd transfer_matrix(const GateRun &run, const Phases &phases);

struct HeraldResult {
  HeraldMode mode = HeraldMode::paths;
  std::array<double, 4> success{};
  double mean_success = 0.0;
  /// Projected final states, not rescaled: arguments of every amplitude are
  /// untouched and the success probabilities carry the normalisation.
  GateRun projected;
};

HeraldResult herald(const GateRun &run, HeraldMode mode);

struct FidelityPair {
  double unheralded = 0.0;
  double heralded = 0.0;
  /// Inputs left out of the heralded average because their success
  /// probability was below 1e-12.
  std::array<bool, 4> excluded{};
};

/// Average over the four logical inputs of <psi_in|U^dag rho_out U|psi_in>
/// with U = diag(1, 1, 1, e^{i target_phase}); rho_out is the output reduced
/// to the waveguide modes and restricted to the computational span.
FidelityPair fidelity_basis_avg(const GateRun &run, HeraldMode mode, double target_phase = 3.141592653589793);

/// Fidelity of the output for the equal superposition of the four logical
/// inputs against U applied to that superposition.
FidelityPair fidelity_phase_sensitive(const GateRun &run, HeraldMode mode, double target_phase = 3.141592653589793);

/// Target phase that maximises the unheralded phase-sensitive fidelity, and
/// that maximum.
std::pair<double, double> best_phase_sensitive_fidelity(const GateRun &run);

struct GateMetrics {
  Phases phases;
  double delta_phi_n = 0.0;
  double f_basis_unheralded = 0.0;
  double f_basis_heralded = 0.0;
  double f_phase_unheralded = 0.0;
  double f_phase_heralded = 0.0;
  std::array<double, 4> success{};
  double mean_success = 0.0;
  HeraldMode herald_mode = HeraldMode::paths;
  std::array<bool, 4> heralded_excluded{};
};

GateMetrics compute_metrics(const GateRun &run, HeraldMode mode);

} // namespace zeno

#pragma once

#include "zeno/hamiltonian.hpp"

#include <Eigen/Dense>

#include <cstddef>
#include <iosfwd>
#include <string_view>
#include <vector>

namespace zeno {

struct StateVector {
  Eigen::VectorXcd amplitudes;
  double time = 0.0;

  double norm() const { return amplitudes.norm(); }
  complex operator[](std::size_t i) const { return amplitudes(static_cast<Eigen::Index>(i)); }

  /// Unit amplitude on one basis state.
  static StateVector basis_state(const BasisSet &basis, const BasisState &state, double time = 0.0);
};

enum class Method { adaptive_rk, expm_oracle };

/// Embedded Runge-Kutta pairs available to the adaptive integrator.
///  - dopri5: Dormand-Prince 5(4), 7 stages with FSAL
///  - dop853: Dormand-Prince 8(5,3), 12 stages
enum class RkScheme { dopri5, dop853 };

std::string_view to_string(Method method) noexcept;
std::string_view to_string(RkScheme scheme) noexcept;
Method parse_method(std::string_view name);
RkScheme parse_rk_scheme(std::string_view name);

struct IntegratorConfig {
  double rtol = 1e-13;
  double atol = 1e-15;
  /// 0 means no limit beyond the segment length.
  double max_step = 0.0;
  Method method = Method::adaptive_rk;
  RkScheme scheme = RkScheme::dop853;
  /// Largest tolerated |<psi|psi> - <psi0|psi0>| before integration aborts.
  double norm_drift_bound = 1e-7;
  /// Interval count used when method == expm_oracle.
  int oracle_steps = 40000;

  void validate() const;
};

struct IntegrationResult {
  StateVector state;
  /// Max over accepted steps of |<psi|psi> - <psi0|psi0>|, summed over
  /// excitation blocks.
  double max_norm_drift = 0.0;
  std::size_t accepted_steps = 0;
  std::size_t rejected_steps = 0;
};

/// Solves i d(psi)/dt = H(t) psi from t0 to t1.
///
/// H(t) is block diagonal in the excitation number, so each block that carries
/// amplitude is integrated on its own. Steps never straddle a pulse breakpoint.
/// Throws StepSizeUnderflow or NormDriftExceeded; never renormalises.
IntegrationResult integrate(const HamiltonianModel &model, const StateVector &psi0, double t0, double t1,
                            const IntegratorConfig &cfg);

/// Piecewise-constant propagator built from Hermitian eigendecompositions of
/// the full dense H. Stretches between pulse breakpoints where the couplings
/// are constant take one exact step; the remaining stretches share n_steps
/// equally, each split into equal intervals with H frozen at the midpoint.
StateVector expm_oracle(const HamiltonianModel &model, const StateVector &psi0, double t0, double t1, int n_steps);

/// State sampled at `samples` equally spaced times in [t0, t1] (inclusive).
std::vector<StateVector> sample_trajectory(const HamiltonianModel &model, const StateVector &psi0, double t0,
                                           double t1, int samples, const IntegratorConfig &cfg);

/// CSV rows `t,p_0,...,p_{dim-1}` of squared amplitude moduli.
void write_trajectory_csv(std::ostream &out, const std::vector<StateVector> &trajectory);

/// <psi|N|psi> for the total excitation operator.
double excitation_expectation(const BasisSet &basis, const StateVector &psi);

} // namespace zeno

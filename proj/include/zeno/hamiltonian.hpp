#pragma once

#include "zeno/hilbert.hpp"
#include "zeno/params.hpp"
#include "zeno/pulses.hpp"

#include <Eigen/Dense>

#include <iosfwd>
#include <memory>
#include <vector>

namespace zeno {

/// Instantaneous coupling strengths C(t), M(t), M'(t).
struct Couplings {
  double c = 0.0;
  double m = 0.0;
  double mprime = 0.0;

  friend bool operator==(const Couplings &, const Couplings &) = default;
};

/// Real dense restriction of H(t) to one excitation block. All couplings are
/// real, so every block is a real symmetric matrix.
struct ExcitationBlock {
  int excitation = 0;
  std::vector<std::size_t> indices;
  Eigen::VectorXd diagonal;
  Eigen::MatrixXd waveguide;
  Eigen::MatrixXd atom;
  Eigen::MatrixXd scatter;

  Eigen::Index size() const noexcept { return static_cast<Eigen::Index>(indices.size()); }
  /// H_block(t) written into `out` (resized as needed).
  void assemble(const Couplings &k, Eigen::MatrixXd &out) const;
};

/// H(t) = H0 + C(t)(a+ b + b+ a) + M(t)(a+ A- + a A+ + b+ B- + b B+)
///             + M'(t)(c+ A- + c A+ + d+ B- + d B+)
///
/// Lab-frame H0 is omega (n_a + n_b) + omega_s (n_c + n_d) + sum over atoms of
/// E(level), with E(g) = 0, E(i) = omega + delta, E(e) = 2 omega. The rotating
/// frame subtracts omega N, which is a constant within each excitation block.
class HamiltonianModel {
public:
  HamiltonianModel(std::shared_ptr<const BasisSet> basis, const PhysicsParams &params);

  const BasisSet &basis() const noexcept { return *basis_; }
  std::shared_ptr<const BasisSet> basis_ptr() const noexcept { return basis_; }
  const PhysicsParams &params() const noexcept { return params_; }
  const Schedule &schedule() const noexcept { return schedule_; }

  const SparseOperator &waveguide_term() const noexcept { return waveguide_; }
  const SparseOperator &atom_term() const noexcept { return atom_; }
  const SparseOperator &scatter_term() const noexcept { return scatter_; }
  const SparseOperator &free_term() const noexcept { return free_; }

  Couplings couplings(double t) const noexcept;

  /// Dense H(t) over the full basis. Throws HermiticityViolation if
  /// max|H - H^dagger| > 1e-12.
  Eigen::MatrixXcd assemble(double t) const;

  const std::vector<ExcitationBlock> &blocks() const noexcept { return blocks_; }

  /// Nonzero pattern of H at time t, one matrix per excitation block.
  void dump_pattern(std::ostream &out, double t) const;

private:
  std::shared_ptr<const BasisSet> basis_;
  PhysicsParams params_;
  Schedule schedule_;
  SparseOperator waveguide_;
  SparseOperator atom_;
  SparseOperator scatter_;
  SparseOperator free_;
  std::vector<ExcitationBlock> blocks_;
};

/// omega N T: lab-frame phase = rotating-frame phase - omega N T.
double frame_shift_phase(const PhysicsParams &params, int excitations, double total_time) noexcept;

} // namespace zeno

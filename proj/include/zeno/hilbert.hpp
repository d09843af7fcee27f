#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <cstddef>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace zeno {

using complex = std::complex<double>;

/// Three-level ladder g -> i -> e. The enumerator value is the number of
/// excitations stored in the atom.
enum class AtomLevel : int { ground = 0, intermediate = 1, upper = 2 };

constexpr int excitation(AtomLevel level) noexcept { return static_cast<int>(level); }
char level_symbol(AtomLevel level) noexcept;

/// Waveguide modes a, b and their scattering modes c, d.
enum class Mode { a, b, c, d };
enum class Atom { A, B };

/// Occupation-number configuration of the two-waveguide, two-atom system.
struct BasisState {
  int n_a = 0;
  int n_b = 0;
  int n_c = 0;
  int n_d = 0;
  AtomLevel level_a = AtomLevel::ground;
  AtomLevel level_b = AtomLevel::ground;

  int photons(Mode mode) const noexcept;
  int &photons(Mode mode) noexcept;
  AtomLevel level(Atom atom) const noexcept;
  AtomLevel &level(Atom atom) noexcept;

  /// Total excitation N: photons plus atomic excitations.
  int excitations() const noexcept;
  bool atoms_ground() const noexcept {
    return level_a == AtomLevel::ground && level_b == AtomLevel::ground;
  }
  bool scattering_empty() const noexcept { return n_c == 0 && n_d == 0; }

  friend bool operator==(const BasisState &, const BasisState &) = default;
};

/// Every configuration with N <= n_max, sorted by N and then lexicographically
/// on (n_a, n_b, n_c, n_d, level_A, level_B). Immutable once built.
class BasisSet {
public:
  explicit BasisSet(int n_max_excitations);

  int n_max() const noexcept { return n_max_; }
  std::size_t size() const noexcept { return states_.size(); }
  const BasisState &operator[](std::size_t index) const { return states_[index]; }
  const std::vector<BasisState> &states() const noexcept { return states_; }

  std::optional<std::size_t> index_of(const BasisState &state) const;
  /// Same as index_of but throws std::out_of_range for states outside the truncation.
  std::size_t at(const BasisState &state) const;

  /// Indices of the states with exactly `n` excitations, in basis order.
  const std::vector<std::size_t> &block(int n) const { return blocks_.at(static_cast<std::size_t>(n)); }

  /// Plain-text enumeration: index, occupations, levels, N.
  void dump(std::ostream &out) const;

private:
  static std::uint64_t key(const BasisState &s) noexcept;

  int n_max_;
  std::vector<BasisState> states_;
  std::unordered_map<std::uint64_t, std::size_t> index_;
  std::vector<std::vector<std::size_t>> blocks_;
};

BasisSet build_basis(int n_max_excitations);

/// Sparse matrix as a sorted list of unique (row, col, value) entries.
class SparseOperator {
public:
  struct Entry {
    std::size_t row;
    std::size_t col;
    complex value;
  };

  SparseOperator() = default;
  explicit SparseOperator(std::size_t dim) : dim_(dim) {}
  /// Duplicate (row, col) triplets are summed; exact zeros are dropped.
  static SparseOperator from_triplets(std::size_t dim, const std::vector<Entry> &triplets);

  std::size_t dim() const noexcept { return dim_; }
  const std::vector<Entry> &entries() const noexcept { return entries_; }
  std::size_t nonzeros() const noexcept { return entries_.size(); }
  complex coeff(std::size_t row, std::size_t col) const;

  SparseOperator adjoint() const;
  Eigen::MatrixXcd to_dense() const;
  Eigen::VectorXcd apply(const Eigen::VectorXcd &psi) const;

  friend SparseOperator operator+(const SparseOperator &lhs, const SparseOperator &rhs);
  friend SparseOperator operator*(const SparseOperator &lhs, const SparseOperator &rhs);
  friend SparseOperator operator*(complex scale, const SparseOperator &op);

private:
  std::size_t dim_ = 0;
  std::vector<Entry> entries_;
};

SparseOperator annihilation(Mode mode, const BasisSet &basis);
/// Built directly from the basis (not as the adjoint of annihilation); states
/// pushed past the truncation are dropped.
SparseOperator creation(Mode mode, const BasisSet &basis);
SparseOperator atom_lowering(Atom atom, const BasisSet &basis);
SparseOperator atom_raising(Atom atom, const BasisSet &basis);

SparseOperator number_operator(Mode mode, const BasisSet &basis);
/// Atomic excitation count (0, 1, 2 for g, i, e).
SparseOperator number_operator(Atom atom, const BasisSet &basis);
SparseOperator total_excitation_operator(const BasisSet &basis);
SparseOperator projector(const BasisSet &basis, const std::function<bool(const BasisState &)> &predicate);

} // namespace zeno

#include "zeno/hilbert.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <ostream>
#include <stdexcept>
#include <tuple>

namespace zeno {

char level_symbol(AtomLevel level) noexcept {
  switch (level) {
  case AtomLevel::ground: return 'g';
  case AtomLevel::intermediate: return 'i';
  case AtomLevel::upper: return 'e';
  }
  return '?';
}

int BasisState::photons(Mode mode) const noexcept {
  switch (mode) {
  case Mode::a: return n_a;
  case Mode::b: return n_b;
  case Mode::c: return n_c;
  case Mode::d: return n_d;
  }
  return 0;
}

int &BasisState::photons(Mode mode) noexcept {
  switch (mode) {
  case Mode::a: return n_a;
  case Mode::b: return n_b;
  case Mode::c: return n_c;
  case Mode::d: break;
  }
  return n_d;
}

AtomLevel BasisState::level(Atom atom) const noexcept { return atom == Atom::A ? level_a : level_b; }
AtomLevel &BasisState::level(Atom atom) noexcept { return atom == Atom::A ? level_a : level_b; }

int BasisState::excitations() const noexcept {
  return n_a + n_b + n_c + n_d + excitation(level_a) + excitation(level_b);
}

namespace {

auto sort_key(const BasisState &s) {
  return std::make_tuple(s.excitations(), s.n_a, s.n_b, s.n_c, s.n_d, excitation(s.level_a),
                         excitation(s.level_b));
}

} // namespace

BasisSet::BasisSet(int n_max_excitations) : n_max_(n_max_excitations) {
  if (n_max_ < 0) throw std::invalid_argument("build_basis: n_max_excitations must be >= 0");

  const int n = n_max_;
  for (int na = 0; na <= n; ++na)
    for (int nb = 0; na + nb <= n; ++nb)
      for (int nc = 0; na + nb + nc <= n; ++nc)
        for (int nd = 0; na + nb + nc + nd <= n; ++nd)
          for (int la = 0; la <= 2; ++la)
            for (int lb = 0; lb <= 2; ++lb) {
              BasisState s{na, nb, nc, nd, static_cast<AtomLevel>(la), static_cast<AtomLevel>(lb)};
              if (s.excitations() <= n) states_.push_back(s);
            }

  std::sort(states_.begin(), states_.end(),
            [](const BasisState &l, const BasisState &r) { return sort_key(l) < sort_key(r); });

  blocks_.resize(static_cast<std::size_t>(n) + 1);
  for (std::size_t i = 0; i < states_.size(); ++i) {
    index_.emplace(key(states_[i]), i);
    blocks_[static_cast<std::size_t>(states_[i].excitations())].push_back(i);
  }
}

std::uint64_t BasisSet::key(const BasisState &s) noexcept {
  // 12 bits per photon count is far beyond any truncation this code supports.
  auto u = [](int v) { return static_cast<std::uint64_t>(v) & 0xfffu; };
  return u(s.n_a) | u(s.n_b) << 12 | u(s.n_c) << 24 | u(s.n_d) << 36 |
         u(excitation(s.level_a)) << 48 | u(excitation(s.level_b)) << 52;
}

std::optional<std::size_t> BasisSet::index_of(const BasisState &state) const {
  if (state.n_a < 0 || state.n_b < 0 || state.n_c < 0 || state.n_d < 0) return std::nullopt;
  auto it = index_.find(key(state));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t BasisSet::at(const BasisState &state) const {
  if (auto idx = index_of(state)) return *idx;
  throw std::out_of_range("BasisSet::at: state outside the truncated basis");
}

void BasisSet::dump(std::ostream &out) const {
  out << "# index n_a n_b n_c n_d level_A level_B N\n";
  for (std::size_t i = 0; i < states_.size(); ++i) {
    const auto &s = states_[i];
    out << i << ' ' << s.n_a << ' ' << s.n_b << ' ' << s.n_c << ' ' << s.n_d << ' '
        << level_symbol(s.level_a) << ' ' << level_symbol(s.level_b) << ' ' << s.excitations() << '\n';
  }
}

BasisSet build_basis(int n_max_excitations) { return BasisSet(n_max_excitations); }

// ---------------------------------------------------------------------------

SparseOperator SparseOperator::from_triplets(std::size_t dim, const std::vector<Entry> &triplets) {
  std::map<std::pair<std::size_t, std::size_t>, complex> acc;
  for (const auto &e : triplets) {
    if (e.row >= dim || e.col >= dim) throw std::out_of_range("SparseOperator: entry outside dimension");
    acc[{e.row, e.col}] += e.value;
  }
  SparseOperator op(dim);
  op.entries_.reserve(acc.size());
  for (const auto &[rc, v] : acc)
    if (v != complex(0.0)) op.entries_.push_back({rc.first, rc.second, v});
  return op;
}

complex SparseOperator::coeff(std::size_t row, std::size_t col) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), std::make_pair(row, col),
                             [](const Entry &e, const std::pair<std::size_t, std::size_t> &rc) {
                               return std::make_pair(e.row, e.col) < rc;
                             });
  if (it != entries_.end() && it->row == row && it->col == col) return it->value;
  return 0.0;
}

SparseOperator SparseOperator::adjoint() const {
  std::vector<Entry> t;
  t.reserve(entries_.size());
  for (const auto &e : entries_) t.push_back({e.col, e.row, std::conj(e.value)});
  return from_triplets(dim_, t);
}

Eigen::MatrixXcd SparseOperator::to_dense() const {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(dim_), static_cast<Eigen::Index>(dim_));
  for (const auto &e : entries_) m(static_cast<Eigen::Index>(e.row), static_cast<Eigen::Index>(e.col)) = e.value;
  return m;
}

Eigen::VectorXcd SparseOperator::apply(const Eigen::VectorXcd &psi) const {
  if (static_cast<std::size_t>(psi.size()) != dim_) throw std::invalid_argument("SparseOperator::apply: dimension mismatch");
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(psi.size());
  for (const auto &e : entries_)
    out(static_cast<Eigen::Index>(e.row)) += e.value * psi(static_cast<Eigen::Index>(e.col));
  return out;
}

SparseOperator operator+(const SparseOperator &lhs, const SparseOperator &rhs) {
  if (lhs.dim_ != rhs.dim_) throw std::invalid_argument("SparseOperator: dimension mismatch in sum");
  std::vector<SparseOperator::Entry> t(lhs.entries_);
  t.insert(t.end(), rhs.entries_.begin(), rhs.entries_.end());
  return SparseOperator::from_triplets(lhs.dim_, t);
}

SparseOperator operator*(const SparseOperator &lhs, const SparseOperator &rhs) {
  if (lhs.dim_ != rhs.dim_) throw std::invalid_argument("SparseOperator: dimension mismatch in product");
  std::vector<SparseOperator::Entry> t;
  for (const auto &r : rhs.entries_)
    for (const auto &l : lhs.entries_)
      if (l.col == r.row) t.push_back({l.row, r.col, l.value * r.value});
  return SparseOperator::from_triplets(lhs.dim_, t);
}

SparseOperator operator*(complex scale, const SparseOperator &op) {
  std::vector<SparseOperator::Entry> t(op.entries_);
  for (auto &e : t) e.value *= scale;
  return SparseOperator::from_triplets(op.dim_, t);
}

// ---------------------------------------------------------------------------

namespace {

/// Builds an operator from a per-state rule returning (target, amplitude);
/// targets outside the truncation are dropped.
template <class Rule>
SparseOperator build_from_rule(const BasisSet &basis, Rule rule) {
  std::vector<SparseOperator::Entry> t;
  for (std::size_t col = 0; col < basis.size(); ++col) {
    BasisState target = basis[col];
    double amp = rule(target);
    if (amp == 0.0) continue;
    if (auto row = basis.index_of(target)) t.push_back({*row, col, amp});
  }
  return SparseOperator::from_triplets(basis.size(), t);
}

} // namespace

SparseOperator annihilation(Mode mode, const BasisSet &basis) {
  return build_from_rule(basis, [mode](BasisState &s) {
    int &n = s.photons(mode);
    if (n == 0) return 0.0;
    double amp = std::sqrt(static_cast<double>(n));
    --n;
    return amp;
  });
}

SparseOperator creation(Mode mode, const BasisSet &basis) {
  return build_from_rule(basis, [mode](BasisState &s) {
    int &n = s.photons(mode);
    ++n;
    return std::sqrt(static_cast<double>(n));
  });
}

SparseOperator atom_lowering(Atom atom, const BasisSet &basis) {
  return build_from_rule(basis, [atom](BasisState &s) {
    AtomLevel &l = s.level(atom);
    if (l == AtomLevel::ground) return 0.0;
    l = static_cast<AtomLevel>(excitation(l) - 1);
    return 1.0;
  });
}

SparseOperator atom_raising(Atom atom, const BasisSet &basis) {
  return build_from_rule(basis, [atom](BasisState &s) {
    AtomLevel &l = s.level(atom);
    if (l == AtomLevel::upper) return 0.0;
    l = static_cast<AtomLevel>(excitation(l) + 1);
    return 1.0;
  });
}

namespace {

SparseOperator diagonal(const BasisSet &basis, const std::function<double(const BasisState &)> &value) {
  std::vector<SparseOperator::Entry> t;
  for (std::size_t i = 0; i < basis.size(); ++i) t.push_back({i, i, value(basis[i])});
  return SparseOperator::from_triplets(basis.size(), t);
}

} // namespace

SparseOperator number_operator(Mode mode, const BasisSet &basis) {
  return diagonal(basis, [mode](const BasisState &s) { return static_cast<double>(s.photons(mode)); });
}

SparseOperator number_operator(Atom atom, const BasisSet &basis) {
  return diagonal(basis, [atom](const BasisState &s) { return static_cast<double>(excitation(s.level(atom))); });
}

SparseOperator total_excitation_operator(const BasisSet &basis) {
  return diagonal(basis, [](const BasisState &s) { return static_cast<double>(s.excitations()); });
}

SparseOperator projector(const BasisSet &basis, const std::function<bool(const BasisState &)> &predicate) {
  return diagonal(basis, [&](const BasisState &s) { return predicate(s) ? 1.0 : 0.0; });
}

} // namespace zeno

#include "zeno/hamiltonian.hpp"

#include "zeno/errors.hpp"

#include <ostream>
#include <sstream>

namespace zeno {

void ExcitationBlock::assemble(const Couplings &k, Eigen::MatrixXd &out) const {
  out.noalias() = k.c * waveguide;
  if (k.m != 0.0) out.noalias() += k.m * atom;
  if (k.mprime != 0.0) out.noalias() += k.mprime * scatter;
  out.diagonal() += diagonal;
}

namespace {

double level_energy(AtomLevel level, const PhysicsParams &p) {
  switch (level) {
  case AtomLevel::ground: return 0.0;
  case AtomLevel::intermediate: return p.omega + p.delta;
  case AtomLevel::upper: return 2.0 * p.omega;
  }
  return 0.0;
}

SparseOperator free_hamiltonian(const BasisSet &basis, const PhysicsParams &p) {
  std::vector<SparseOperator::Entry> t;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const auto &s = basis[i];
    double e = p.omega * (s.n_a + s.n_b) + p.scattering_frequency() * (s.n_c + s.n_d) +
               level_energy(s.level_a, p) + level_energy(s.level_b, p);
    if (p.frame == Frame::rotating) e -= p.omega * s.excitations();
    t.push_back({i, i, e});
  }
  return SparseOperator::from_triplets(basis.size(), t);
}

Eigen::MatrixXd restrict_real(const SparseOperator &op, const std::vector<std::size_t> &indices,
                              const std::vector<Eigen::Index> &local) {
  const auto n = static_cast<Eigen::Index>(indices.size());
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (const auto &e : op.entries()) {
    Eigen::Index r = local[e.row], c = local[e.col];
    if (r < 0 || c < 0) {
      if (r >= 0 || c >= 0) throw HermiticityViolation("coupling term connects different excitation blocks");
      continue;
    }
    if (e.value.imag() != 0.0) throw HermiticityViolation("coupling term has a complex matrix element");
    m(r, c) = e.value.real();
  }
  return m;
}

} // namespace

HamiltonianModel::HamiltonianModel(std::shared_ptr<const BasisSet> basis, const PhysicsParams &params)
    : basis_(std::move(basis)), params_(params), schedule_(make_schedule(params)) {
  const BasisSet &bs = *basis_;
  auto a = annihilation(Mode::a, bs), b = annihilation(Mode::b, bs);
  auto c = annihilation(Mode::c, bs), d = annihilation(Mode::d, bs);
  auto ad = creation(Mode::a, bs), bd = creation(Mode::b, bs);
  auto cd = creation(Mode::c, bs), dd = creation(Mode::d, bs);
  auto am = atom_lowering(Atom::A, bs), ap = atom_raising(Atom::A, bs);
  auto bm = atom_lowering(Atom::B, bs), bp = atom_raising(Atom::B, bs);

  // Every product is written lowering-first (rightmost) so the intermediate
  // state never leaves the truncated basis.
  waveguide_ = ad * b + bd * a;
  atom_ = ad * am + ap * a + bd * bm + bp * b;
  scatter_ = cd * am + ap * c + dd * bm + bp * d;
  free_ = free_hamiltonian(bs, params_);

  for (int n = 0; n <= bs.n_max(); ++n) {
    ExcitationBlock blk;
    blk.excitation = n;
    blk.indices = bs.block(n);
    std::vector<Eigen::Index> local(bs.size(), -1);
    for (std::size_t k = 0; k < blk.indices.size(); ++k) local[blk.indices[k]] = static_cast<Eigen::Index>(k);
    blk.waveguide = restrict_real(waveguide_, blk.indices, local);
    blk.atom = restrict_real(atom_, blk.indices, local);
    blk.scatter = restrict_real(scatter_, blk.indices, local);
    blk.diagonal = restrict_real(free_, blk.indices, local).diagonal();
    blocks_.push_back(std::move(blk));
  }
}

Couplings HamiltonianModel::couplings(double t) const noexcept {
  return {value_at(schedule_.c, t), value_at(schedule_.m, t), value_at(schedule_.mprime, t)};
}

Eigen::MatrixXcd HamiltonianModel::assemble(double t) const {
  const Couplings k = couplings(t);
  Eigen::MatrixXcd h = free_.to_dense();
  auto add = [&h](const SparseOperator &op, double scale) {
    if (scale == 0.0) return;
    for (const auto &e : op.entries())
      h(static_cast<Eigen::Index>(e.row), static_cast<Eigen::Index>(e.col)) += scale * e.value;
  };
  add(waveguide_, k.c);
  add(atom_, k.m);
  add(scatter_, k.mprime);

  const double asym = (h - h.adjoint()).cwiseAbs().maxCoeff();
  if (asym > 1e-12) {
    std::ostringstream msg;
    msg << "assembled Hamiltonian is not Hermitian at t = " << t << " (max |H - H^dagger| = " << asym << ")";
    throw HermiticityViolation(msg.str());
  }
  return h;
}

void HamiltonianModel::dump_pattern(std::ostream &out, double t) const {
  const Couplings k = couplings(t);
  out << "# t = " << t << "  C = " << k.c << "  M = " << k.m << "  M' = " << k.mprime << '\n';
  Eigen::MatrixXd h;
  for (const auto &blk : blocks_) {
    blk.assemble(k, h);
    out << "# block N = " << blk.excitation << " (" << blk.size() << " states; basis indices";
    for (auto i : blk.indices) out << ' ' << i;
    out << ")\n";
    for (Eigen::Index r = 0; r < h.rows(); ++r) {
      for (Eigen::Index c = 0; c < h.cols(); ++c) out << (h(r, c) != 0.0 ? (r == c ? 'D' : 'x') : '.');
      out << '\n';
    }
  }
}

double frame_shift_phase(const PhysicsParams &params, int excitations, double total_time) noexcept {
  return params.omega * excitations * total_time;
}

} // namespace zeno

#include "zeno/hilbert.hpp"

#include <doctest.h>

#include <sstream>
#include <tuple>

using namespace zeno;

namespace {

// Counts (n_a, n_b, n_c, n_d, lA, lB) with photons + levels == n by brute force.
int brute_force_count(int n) {
  int count = 0;
  for (int a = 0; a <= n; ++a)
    for (int b = 0; b <= n; ++b)
      for (int c = 0; c <= n; ++c)
        for (int d = 0; d <= n; ++d)
          for (int la = 0; la <= 2; ++la)
            for (int lb = 0; lb <= 2; ++lb)
              if (a + b + c + d + la + lb == n) ++count;
  return count;
}

auto tuple_of(const BasisState &s) {
  return std::make_tuple(s.excitations(), s.n_a, s.n_b, s.n_c, s.n_d, excitation(s.level_a), excitation(s.level_b));
}

Eigen::MatrixXcd dense(const SparseOperator &op) { return op.to_dense(); }

} // namespace

TEST_CASE("basis sizes match brute-force enumeration") {
  const BasisSet basis = build_basis(2);
  CHECK(basis.size() == 28);
  for (int n = 0; n <= 2; ++n) CHECK(basis.block(n).size() == static_cast<std::size_t>(brute_force_count(n)));
  CHECK(build_basis(0).size() == 1);
  CHECK(build_basis(1).size() == 7);
  CHECK(build_basis(3).size() == 28 + static_cast<std::size_t>(brute_force_count(3)));
}

TEST_CASE("basis is sorted by excitation then lexicographically and indexable") {
  const BasisSet basis = build_basis(2);
  for (std::size_t i = 1; i < basis.size(); ++i) CHECK(tuple_of(basis[i - 1]) < tuple_of(basis[i]));
  for (std::size_t i = 0; i < basis.size(); ++i) {
    REQUIRE(basis.index_of(basis[i]).has_value());
    CHECK(*basis.index_of(basis[i]) == i);
  }
  CHECK(basis[0] == BasisState{});
  const BasisState three{3, 0, 0, 0};
  CHECK_FALSE(basis.index_of(three).has_value());
  CHECK_THROWS_AS(basis.at(three), std::out_of_range);
  CHECK_THROWS_AS(build_basis(-1), std::invalid_argument);
}

TEST_CASE("basis dump lists every state") {
  std::ostringstream out;
  build_basis(2).dump(out);
  const std::string text = out.str();
  CHECK(text.rfind("# index", 0) == 0);
  int lines = 0;
  for (char c : text) lines += c == '\n';
  CHECK(lines == 29);
  CHECK(text.find("\n27 2 0 0 0 g g 2\n") != std::string::npos);
}

TEST_CASE("ladder operators have sqrt(n) elements and canonical commutator below the cutoff") {
  const BasisSet basis = build_basis(2);
  const BasisState two_a{2, 0, 0, 0}, one_a{1, 0, 0, 0};
  const auto a = annihilation(Mode::a, basis);
  CHECK(a.coeff(basis.at(one_a), basis.at(two_a)).real() == doctest::Approx(std::sqrt(2.0)));
  CHECK(a.coeff(basis.at(BasisState{}), basis.at(one_a)).real() == doctest::Approx(1.0));

  for (Mode m : {Mode::a, Mode::b, Mode::c, Mode::d}) {
    const Eigen::MatrixXcd lo = dense(annihilation(m, basis));
    const Eigen::MatrixXcd hi = dense(creation(m, basis));
    CHECK((hi - lo.adjoint()).cwiseAbs().maxCoeff() == doctest::Approx(0.0));
    const Eigen::MatrixXcd comm = lo * hi - hi * lo;
    for (std::size_t i = 0; i < basis.size(); ++i) {
      if (basis[i].excitations() >= 2) continue; // a a+ leaves the truncation on the top block
      for (std::size_t j = 0; j < basis.size(); ++j) {
        const double expected = i == j ? 1.0 : 0.0;
        CHECK(std::abs(comm(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) - expected) < 1e-14);
      }
    }
    const Eigen::MatrixXcd number = dense(number_operator(m, basis));
    CHECK((number - hi * lo).cwiseAbs().maxCoeff() < 1e-14);
  }
}

TEST_CASE("atomic ladder climbs g -> i -> e with unit elements") {
  const BasisSet basis = build_basis(2);
  for (Atom atom : {Atom::A, Atom::B}) {
    const auto lower = atom_lowering(atom, basis);
    const auto raise = atom_raising(atom, basis);
    CHECK((dense(raise) - dense(lower).adjoint()).cwiseAbs().maxCoeff() == 0.0);
    BasisState e, i;
    e.level(atom) = AtomLevel::upper;
    i.level(atom) = AtomLevel::intermediate;
    CHECK(lower.coeff(basis.at(i), basis.at(e)) == complex(1.0));
    CHECK(lower.coeff(basis.at(BasisState{}), basis.at(i)) == complex(1.0));
    const Eigen::MatrixXcd n = dense(number_operator(atom, basis));
    for (std::size_t k = 0; k < basis.size(); ++k)
      CHECK(n(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k)).real() == excitation(basis[k].level(atom)));
  }
}

TEST_CASE("total excitation operator and projectors") {
  const BasisSet basis = build_basis(2);
  const Eigen::MatrixXcd n = dense(total_excitation_operator(basis));
  for (std::size_t k = 0; k < basis.size(); ++k)
    CHECK(n(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k)).real() == basis[k].excitations());
  const auto p = projector(basis, [](const BasisState &s) { return s.atoms_ground() && s.scattering_empty(); });
  const Eigen::MatrixXcd pd = dense(p);
  CHECK((pd * pd - pd).cwiseAbs().maxCoeff() == 0.0);
  CHECK(p.nonzeros() == 6); // vacuum, a, b, aa, ab, bb
}

TEST_CASE("sparse operator algebra") {
  const auto op = SparseOperator::from_triplets(3, {{0, 1, 2.0}, {0, 1, 1.0}, {2, 2, 0.0}, {1, 0, complex(0, 1)}});
  CHECK(op.nonzeros() == 2);
  CHECK(op.coeff(0, 1) == complex(3.0));
  CHECK(op.coeff(2, 2) == complex(0.0));
  CHECK(op.adjoint().coeff(0, 1) == complex(0, -1));
  const Eigen::MatrixXcd d = op.to_dense();
  CHECK(((op * op).to_dense() - d * d).cwiseAbs().maxCoeff() == 0.0);
  CHECK(((op + op).to_dense() - 2.0 * d).cwiseAbs().maxCoeff() == 0.0);
  CHECK(((complex(0, 2) * op).to_dense() - complex(0, 2) * d).cwiseAbs().maxCoeff() == 0.0);
  Eigen::VectorXcd v(3);
  v << 1.0, 2.0, 3.0;
  CHECK((op.apply(v) - d * v).cwiseAbs().maxCoeff() == 0.0);
  CHECK_THROWS_AS(SparseOperator::from_triplets(2, {{2, 0, 1.0}}), std::out_of_range);
  CHECK_THROWS_AS(op + SparseOperator(4), std::invalid_argument);
}

#include "zeno/errors.hpp"
#include "zeno/gate.hpp"

#include <doctest.h>

#include <cmath>

using namespace zeno;

namespace {

constexpr double pi = M_PI;

GateRun empty_run() {
  GateRun run;
  run.basis = std::make_shared<const BasisSet>(2);
  for (auto &f : run.finals) f = StateVector{Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(run.basis->size())), 0.0};
  return run;
}

void put(GateRun &run, int input, const BasisState &s, complex amp) {
  run.finals[input].amplitudes(static_cast<Eigen::Index>(run.basis->at(s))) = amp;
}

// Perfect device with the given linear phases and two-photon phase.
GateRun ideal_run(double phi_a, double phi_b, double dphi) {
  GateRun run = empty_run();
  put(run, 0, ideal_output_configuration(0), 1.0);
  put(run, 1, ideal_output_configuration(1), std::polar(1.0, phi_b));
  put(run, 2, ideal_output_configuration(2), std::polar(1.0, phi_a));
  put(run, 3, ideal_output_configuration(3), std::polar(1.0, phi_a + phi_b + dphi));
  return run;
}

BasisState with_levels(BasisState s, AtomLevel a, AtomLevel b) {
  s.level_a = a;
  s.level_b = b;
  return s;
}

// Direct evaluation of the phase-sensitive overlap for an ideal-magnitude run.
double phase_overlap(double dphi, double target) {
  const complex t = 0.25 * (3.0 + std::polar(1.0, dphi - target));
  return std::norm(t);
}

} // namespace

TEST_CASE("logical inputs map to photons and the output relabelling swaps waveguides") {
  CHECK(input_configuration(0) == BasisState{0, 0, 0, 0});
  CHECK(input_configuration(1) == BasisState{0, 1, 0, 0});
  CHECK(input_configuration(2) == BasisState{1, 0, 0, 0});
  CHECK(input_configuration(3) == BasisState{1, 1, 0, 0});
  CHECK(ideal_output_configuration(1) == BasisState{1, 0, 0, 0});
  CHECK(ideal_output_configuration(2) == BasisState{0, 1, 0, 0});
  CHECK(parse_herald_mode("atoms_ground") == HeraldMode::atoms_ground);
  CHECK(to_string(HeraldMode::paths) == "paths");
  CHECK_THROWS_AS(parse_herald_mode("all"), ConfigError);
}

TEST_CASE("wrap_phase reduces into (-pi, pi]") {
  CHECK(wrap_phase(pi) == doctest::Approx(pi));
  CHECK(wrap_phase(-pi) == doctest::Approx(pi));
  CHECK(wrap_phase(3 * pi / 2) == doctest::Approx(-pi / 2));
  CHECK(wrap_phase(-7.0) == doctest::Approx(-7.0 + 2 * pi));
  for (double x = -20.0; x < 20.0; x += 0.37) {
    const double w = wrap_phase(x);
    CHECK(w > -pi);
    CHECK(w <= pi);
    CHECK(std::remainder(w - x, 2 * pi) == doctest::Approx(0.0).epsilon(1e-12));
  }
}

TEST_CASE("ideal controlled-sign run has unit fidelity and delta phi = pi") {
  const GateRun run = ideal_run(0.7, -1.9, pi);
  const Phases ph = extract_phases(run);
  CHECK(ph.phi_a == doctest::Approx(0.7));
  CHECK(ph.phi_b == doctest::Approx(-1.9));
  CHECK(std::abs(std::abs(ph.delta_phi_n()) - pi) < 1e-12);

  const Eigen::Matrix4cd m = transfer_matrix(run, ph);
  const Eigen::Vector4cd diag(1.0, 1.0, 1.0, -1.0);
  CHECK((m - Eigen::Matrix4cd(diag.asDiagonal())).cwiseAbs().maxCoeff() < 1e-12);

  for (HeraldMode mode : {HeraldMode::paths, HeraldMode::atoms_ground}) {
    const GateMetrics g = compute_metrics(run, mode);
    CHECK(g.f_basis_unheralded == doctest::Approx(1.0));
    CHECK(g.f_basis_heralded == doctest::Approx(1.0));
    CHECK(g.f_phase_unheralded == doctest::Approx(1.0));
    CHECK(g.f_phase_heralded == doctest::Approx(1.0));
    CHECK(g.mean_success == doctest::Approx(1.0));
  }
}

TEST_CASE("phase-sensitive fidelity tracks the distance of delta phi from the target") {
  double previous = 2.0;
  for (double dist : {0.0, 0.1, 0.4, 1.0, 2.0, pi}) {
    const GateRun run = ideal_run(0.3, 0.2, pi + dist);
    const auto f = fidelity_phase_sensitive(run, HeraldMode::paths);
    CHECK(f.unheralded == doctest::Approx(phase_overlap(pi + dist, pi)));
    CHECK(f.unheralded < previous);
    previous = f.unheralded;
    // The basis average cannot see the phase.
    CHECK(fidelity_basis_avg(run, HeraldMode::paths).unheralded == doctest::Approx(1.0));
  }
  // A linear device (delta phi = 0) sits at the bottom of the curve.
  CHECK(fidelity_phase_sensitive(ideal_run(0, 0, 0), HeraldMode::paths).unheralded == doctest::Approx(0.25));
}

TEST_CASE("best target phase is the closed-form maximiser") {
  const GateRun run = ideal_run(0.1, 0.4, 2.5);
  const auto [theta, best] = best_phase_sensitive_fidelity(run);
  CHECK(theta == doctest::Approx(2.5));
  CHECK(best == doctest::Approx(1.0));
  for (double t = -pi; t < pi; t += 0.05)
    CHECK(fidelity_phase_sensitive(run, HeraldMode::paths, t).unheralded <= best + 1e-12);
}

TEST_CASE("scattered and absorbed outputs lower the fidelity and heralding removes them") {
  GateRun run = ideal_run(0.0, 0.0, pi);
  // |1,1> half stays, half leaves both atoms excited once.
  const double r = std::sqrt(0.5);
  put(run, 3, ideal_output_configuration(3), -r);
  put(run, 3, with_levels(BasisState{0, 0, 0, 0}, AtomLevel::intermediate, AtomLevel::intermediate), r);
  // |1,0> is 80% scattered into mode c.
  put(run, 2, ideal_output_configuration(2), std::sqrt(0.2));
  put(run, 2, BasisState{0, 0, 1, 0}, std::sqrt(0.8));

  const auto f = fidelity_basis_avg(run, HeraldMode::paths);
  CHECK(f.unheralded == doctest::Approx(0.25 * (1 + 1 + 0.2 + 0.5)));
  CHECK(f.heralded == doctest::Approx(1.0));
  const HeraldResult h = herald(run, HeraldMode::atoms_ground);
  CHECK(h.success[2] == doctest::Approx(0.2));
  CHECK(h.success[3] == doctest::Approx(0.5));
  CHECK(h.mean_success == doctest::Approx(0.25 * (2 + 0.2 + 0.5)));
  // Projection keeps the surviving amplitudes unscaled.
  CHECK(h.projected.finals[3][run.basis->at(ideal_output_configuration(3))] == complex(-r));
}

TEST_CASE("atoms_ground herald admits bunched photons that the path herald rejects") {
  GateRun run = ideal_run(0.0, 0.0, pi);
  put(run, 3, ideal_output_configuration(3), -0.8);
  put(run, 3, BasisState{2, 0, 0, 0}, 0.6);
  const auto paths = herald(run, HeraldMode::paths);
  const auto ground = herald(run, HeraldMode::atoms_ground);
  CHECK(paths.success[3] == doctest::Approx(0.64));
  CHECK(ground.success[3] == doctest::Approx(1.0));
  for (int i = 0; i < 4; ++i) CHECK(ground.success[i] >= paths.success[i]);
  CHECK(fidelity_basis_avg(run, HeraldMode::atoms_ground).heralded == doctest::Approx(0.25 * 3 + 0.25 * 0.64));
  CHECK(fidelity_basis_avg(run, HeraldMode::paths).heralded == doctest::Approx(1.0));
}

TEST_CASE("heralding leaves the extracted phases bit-identical") {
  GateRun run = ideal_run(0.3, -0.4, 2.9);
  put(run, 3, BasisState{0, 0, 1, 1}, 0.5);
  run.finals[3].amplitudes *= 1.0 / run.finals[3].amplitudes.norm();
  for (HeraldMode mode : {HeraldMode::paths, HeraldMode::atoms_ground}) {
    const Phases before = extract_phases(run);
    const Phases after = extract_phases(herald(run, mode).projected);
    CHECK(after.phi_a == before.phi_a);
    CHECK(after.phi_b == before.phi_b);
    CHECK(after.phi_ab == before.phi_ab);
    CHECK(after.delta_phi_n() == before.delta_phi_n());
  }
}

TEST_CASE("vanishing target amplitude is reported and excluded from the heralded average") {
  GateRun run = ideal_run(0.0, 0.0, pi);
  put(run, 1, ideal_output_configuration(1), 0.0);
  put(run, 1, BasisState{0, 0, 0, 1}, 1.0);
  CHECK_THROWS_AS(extract_phases(run), DegenerateAmplitude);
  const auto f = fidelity_basis_avg(run, HeraldMode::paths);
  CHECK(f.excluded[1]);
  CHECK_FALSE(f.excluded[0]);
  CHECK(f.unheralded == doctest::Approx(0.75));
  CHECK(f.heralded == doctest::Approx(1.0));
}

TEST_CASE("linear beam splitter at M = 0 gives -i per photon and no nonlinear phase") {
  PhysicsParams p;
  p.c_max = 0.01;
  p.tau_c = 20.0;
  p.m_max = 0.0;
  p.tau_m = 20.0;
  // Full swap: C (T_C + tau_C) = pi / 2.
  p.t_c = pi / (2 * p.c_max) - p.tau_c;
  p.t_m = 2 * p.tau_c + p.t_c;
  const GateRun run = run_gate(p, IntegratorConfig{});
  const GateMetrics g = compute_metrics(run, HeraldMode::paths);
  CHECK(g.phases.phi_a == doctest::Approx(-pi / 2).epsilon(1e-8));
  CHECK(g.phases.phi_b == doctest::Approx(-pi / 2).epsilon(1e-8));
  CHECK(std::abs(g.delta_phi_n) < 1e-8);
  // HOM interference returns |1,1> with amplitude cos(2 theta) = -1.
  CHECK(std::abs(run.finals[3][run.basis->at(BasisState{1, 1, 0, 0})] + 1.0) < 1e-8);
  CHECK(g.f_basis_unheralded == doctest::Approx(1.0));
  CHECK(g.f_phase_unheralded == doctest::Approx(0.25));
  for (int i = 0; i < 4; ++i) {
    CHECK(run.norm_drift[i] < 1e-10);
    CHECK(run.excitation_drift[i] < 1e-10);
  }
}

// Band solver 2: ladder generators, the 7-angle variational circuit, the
// squared-Hamiltonian loss, energy readout, and the full six-branch solve.

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "floq/fz2.hpp"
#include "floq/state.hpp"

using namespace floq;

namespace {

ExtendedHamiltonian benchmark_heff(double a) {
  return build_extended_hamiltonian(driven_spin_half(1.0, a, 2.5), 1);
}

}  // namespace

TEST_SUITE("fz2") {

TEST_CASE("ladder generators couple adjacent qutrit levels") {
  const SpinLadderGenerators g = spin_ladder_generators(1);

  Mat s4 = Mat::Zero(3, 3), s5 = Mat::Zero(3, 3);
  s4(1, 2) = s4(2, 1) = 1.0;
  s5(0, 1) = s5(1, 0) = 1.0;
  CHECK((g.s4.entries - s4).cwiseAbs().maxCoeff() < 1e-15);
  CHECK((g.s5.entries - s5).cwiseAbs().maxCoeff() < 1e-15);
  CHECK((g.sx.entries - 0.5 * (s4 + s5)).cwiseAbs().maxCoeff() < 1e-15);

  Eigen::SelfAdjointEigenSolver<Mat> es(g.sx.entries);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  CHECK(es.eigenvalues()(0) == doctest::Approx(-inv_sqrt2).epsilon(1e-12));
  CHECK(es.eigenvalues()(1) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(es.eigenvalues()(2) == doctest::Approx(+inv_sqrt2).epsilon(1e-12));

  CHECK_THROWS_AS(spin_ladder_generators(2), std::invalid_argument);
  CHECK_THROWS_AS(build_vha(0), std::invalid_argument);
}

TEST_CASE("the circuit has seven angles on a qutrit-qubit register") {
  const ParameterizedCircuit c = build_vha(1);
  CHECK(c.n_params == 7);
  CHECK(c.shape.dims == std::vector<int>{3, 2});
  CHECK(c.gates.size() == 7);
  // Generator gates have no exact two-term shift rule.
  for (bool e : c.shift_eligible) CHECK_FALSE(e);
}

TEST_CASE("zero angles bind to the identity") {
  const ParameterizedCircuit c = build_vha(1);
  const DenseOperator u = floq::bind(c, std::vector<double>(7, 0.0));
  CHECK((u.entries - Mat::Identity(6, 6)).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("the first angle alone rotates only the qubit") {
  const ParameterizedCircuit c = build_vha(1);
  std::vector<double> theta(7, 0.0);
  theta[0] = M_PI / 2;
  const DenseOperator u = floq::bind(c, theta);
  const DenseOperator qubit_rot = matrix_exponential(pauli_y(), M_PI / 2);
  const DenseOperator expect = kron(identity_op(3), qubit_rot);
  CHECK((u.entries - expect.entries).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("the third angle ladders the qutrit to its middle level") {
  const ParameterizedCircuit c = build_vha(1);
  std::vector<double> theta(7, 0.0);
  theta[2] = M_PI / 2;
  const StateVector psi = prepare(c, theta);
  // e^{i (pi/2) S5} |0>_T = i |1>_T; flat index 2 is |1>_T |0>_R.
  CHECK(std::abs(psi.amps(2) - Cx(0, 1)) < 1e-12);
  for (int i : {0, 1, 3, 4, 5}) CHECK(std::abs(psi.amps(i)) < 1e-12);
}

TEST_CASE("the entangling angle alone carries the ladder eigenphases") {
  const ParameterizedCircuit c = build_vha(1);
  std::vector<double> theta(7, 0.0);
  theta[3] = M_PI / 4;
  const DenseOperator u = floq::bind(c, theta);
  Eigen::ComplexEigenSolver<Mat> es(u.entries);

  const double phase = M_PI / (4.0 * std::sqrt(2.0));
  int at_plus = 0, at_minus = 0, at_one = 0;
  for (int i = 0; i < 6; ++i) {
    const double arg = std::arg(es.eigenvalues()(i));
    if (std::abs(arg - phase) < 1e-10) ++at_plus;
    else if (std::abs(arg + phase) < 1e-10) ++at_minus;
    else if (std::abs(arg) < 1e-10) ++at_one;
  }
  CHECK(at_plus == 2);
  CHECK(at_minus == 2);
  CHECK(at_one == 2);
}

TEST_CASE("without the entangler the circuit is a separable product") {
  const SpinLadderGenerators g = spin_ladder_generators(1);
  const ParameterizedCircuit c = build_vha(1);
  const std::vector<double> theta = {0.7, 1.1, 0.4, 0.0, 2.2, 0.9, 1.6};
  const DenseOperator u = floq::bind(c, theta);

  const Mat t_part = matrix_exponential(g.s4, theta[1]).entries *
                     matrix_exponential(g.s5, theta[2]).entries *
                     matrix_exponential(g.s4, theta[5]).entries *
                     matrix_exponential(g.s5, theta[6]).entries;
  const Mat r_part = matrix_exponential(g.sigma_y, theta[0] + theta[4]).entries;
  const DenseOperator expect = kron(make_unitary(t_part), make_unitary(r_part));
  CHECK((u.entries - expect.entries).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("squared-Hamiltonian loss at pinned angles") {
  const ExtendedHamiltonian heff = benchmark_heff(0.0);
  DeflationSet none;
  RngStream rng(1);

  const std::vector<double> zero(7, 0.0);
  CHECK(loss_fz2(zero, heff, none, 0, rng) == doctest::Approx(4.0).epsilon(1e-12));

  std::vector<double> ladder(7, 0.0);
  ladder[2] = M_PI / 2;
  CHECK(loss_fz2(ladder, heff, none, 0, rng) == doctest::Approx(0.25).epsilon(1e-12));

  DeflationSet set;
  set.lambda = 5.0;
  add_deflated(set, build_vha(1), zero);
  CHECK(loss_fz2(zero, heff, set, 0, rng) == doctest::Approx(9.0).epsilon(1e-10));

  const ExtendedHamiltonian wrong = build_extended_hamiltonian(
      driven_spin_half(1.0, 0.0, 2.5), 2);
  CHECK_THROWS_AS(loss_fz2(zero, wrong, none, 0, rng), std::invalid_argument);
}

TEST_CASE("loss respects the spectral lower bound of the squared operator") {
  const ExtendedHamiltonian heff = benchmark_heff(0.5);
  Eigen::SelfAdjointEigenSolver<Mat> es(
      Mat(heff.matrix.entries * heff.matrix.entries));
  const double floor = es.eigenvalues()(0);
  DeflationSet none;
  RngStream rng(77);
  for (int i = 0; i < 100; ++i) {
    std::vector<double> theta(7);
    for (double& t : theta) t = rng.uniform01() * 2.0 * M_PI;
    CHECK(loss_fz2(theta, heff, none, 0, rng) >= floor - 1e-9);
  }
}

TEST_CASE("energy readout folds the raw ladder value") {
  const ExtendedHamiltonian heff = benchmark_heff(0.0);
  RngStream rng(1);

  std::vector<double> ladder(7, 0.0);
  ladder[2] = M_PI / 2;
  const EnergyReading mid = energy_from_state(ladder, heff, 0, rng);
  CHECK(mid.raw == doctest::Approx(-0.5).epsilon(1e-12));
  CHECK(mid.folded == doctest::Approx(-0.5).epsilon(1e-12));
  CHECK(mid.std_error == 0.0);

  const EnergyReading top = energy_from_state(std::vector<double>(7, 0.0), heff, 0, rng);
  CHECK(top.raw == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(top.folded == doctest::Approx(-0.5).epsilon(1e-12));

  RngStream srng(5);
  const EnergyReading sampled = energy_from_state(ladder, heff, 2000, srng);
  CHECK(sampled.std_error >= 0.0);
  CHECK(sampled.folded == doctest::Approx(fold_to_bz(sampled.raw, 2.5)));
}

TEST_CASE("undriven solve enumerates the full six-level ladder") {
  const FourierHamiltonian h = driven_spin_half(1.0, 0.0, 2.5);
  SolverConfig cfg;
  cfg.shots = 0;
  cfg.seed = 3;
  const std::vector<FloquetSolution> sols = solve_band_fz2(h, 1, cfg);
  REQUIRE(sols.size() == 6);

  const double ladder[6] = {-3.0, -2.0, -0.5, 0.5, 2.0, 3.0};
  const int offsets[6] = {-1, -1, 0, 0, 1, 1};
  for (int i = 0; i < 6; ++i) {
    const auto& s = sols[static_cast<std::size_t>(i)];
    CHECK(s.branch == i);
    CHECK(s.epsilon_raw == doctest::Approx(ladder[i]).epsilon(1e-3));
    CHECK(std::abs(s.epsilon - fold_to_bz(ladder[i], 2.5)) < 1e-3);
    CHECK(s.j_offset == offsets[i]);
    CHECK(s.residual_variance <= 1e-6);
    CHECK(s.fidelity_vs_oracle >= 0.999);
    CHECK(s.converged);
    CHECK(s.loss_star == doctest::Approx(ladder[i] * ladder[i]).epsilon(1e-3));
  }

  // Deflation keeps the six states mutually distinct.
  for (std::size_t a = 0; a < 6; ++a) {
    for (std::size_t b = a + 1; b < 6; ++b) {
      CHECK(overlap_sq(sols[a].state, sols[b].state) <= 0.05);
    }
  }

  CHECK_THROWS_AS(solve_band_fz2(h, 2, cfg), std::invalid_argument);
}

}  // TEST_SUITE

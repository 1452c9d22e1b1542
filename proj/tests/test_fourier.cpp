// Fourier-decomposed drive Hamiltonians and the truncated extended-space
// (harmonic ladder) Hamiltonian built from them.

#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "floq/fourier.hpp"
#include "floq/operators.hpp"
#include "floq/state.hpp"

using namespace floq;

TEST_SUITE("fourier") {

TEST_CASE("driven model components") {
  const FourierHamiltonian h = driven_spin_half(1.0, 0.0, 2.5);
  CHECK(h.omega == doctest::Approx(2.5));
  CHECK(h.dim_r == 2);
  CHECK(h.period() == doctest::Approx(2.0 * M_PI / 2.5));

  Mat h0_expect(2, 2);
  h0_expect << Cx(-0.5, 0), Cx(0, 0), Cx(0, 0), Cx(0.5, 0);
  CHECK((h.components.at(0).entries - h0_expect).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(h.components.at(1).entries.cwiseAbs().maxCoeff() < 1e-12);
  CHECK(h.components.at(-1).entries.cwiseAbs().maxCoeff() < 1e-12);

  const FourierHamiltonian driven = driven_spin_half(1.0, 2.0, 2.5);
  const Mat half_x = 0.5 * pauli_x().entries;
  CHECK((driven.components.at(1).entries - half_x).cwiseAbs().maxCoeff() < 1e-12);
  CHECK((driven.components.at(-1).entries - half_x).cwiseAbs().maxCoeff() < 1e-12);

  const FourierHamiltonian trivial = driven_spin_half(0.0, 0.0, 1.0);
  CHECK(trivial.components.at(0).entries.cwiseAbs().maxCoeff() < 1e-12);

  CHECK_THROWS_AS(driven_spin_half(1.0, 1.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(driven_spin_half(1.0, 1.0, -2.0), std::invalid_argument);
}

TEST_CASE("time evaluation reproduces the cosine drive") {
  const double delta = 1.0, a = 2.0, omega = 2.5;
  const FourierHamiltonian h = driven_spin_half(delta, a, omega);
  const double period = h.period();

  const Mat h_zero = evaluate_at_time(h, 0.0).entries;
  const Mat expect_zero = -0.5 * delta * pauli_z().entries + 0.5 * a * pauli_x().entries;
  CHECK((h_zero - expect_zero).cwiseAbs().maxCoeff() < 1e-12);

  const Mat h_half = evaluate_at_time(h, period / 2).entries;
  const Mat expect_half = -0.5 * delta * pauli_z().entries - 0.5 * a * pauli_x().entries;
  CHECK((h_half - expect_half).cwiseAbs().maxCoeff() < 1e-12);

  const Mat h_quarter = evaluate_at_time(h, period / 4).entries;
  const Mat expect_quarter = -0.5 * delta * pauli_z().entries;
  CHECK((h_quarter - expect_quarter).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("time evaluation is periodic and hermitian") {
  const FourierHamiltonian h = driven_spin_half(1.0, 1.3, 2.5);
  const double period = h.period();
  for (double t : {0.1, 0.94, 2.2}) {
    const DenseOperator at_t = evaluate_at_time(h, t);
    const DenseOperator at_t_plus = evaluate_at_time(h, t + period);
    CHECK((at_t.entries - at_t_plus.entries).cwiseAbs().maxCoeff() < 1e-10);
    CHECK(at_t.tag == OpTag::Hermitian);
    CHECK(hermiticity_residual(at_t.entries) < 1e-12);
  }
}

TEST_CASE("extended Hamiltonian at zero drive is the exact two-band ladder") {
  const FourierHamiltonian h = driven_spin_half(1.0, 0.0, 2.5);
  const ExtendedHamiltonian heff = build_extended_hamiltonian(h, 1);
  REQUIRE(heff.matrix.dim == 6);
  CHECK(heff.j_max == 1);
  CHECK(heff.omega == doctest::Approx(2.5));
  CHECK(hermiticity_residual(heff.matrix.entries) < 1e-12);

  Eigen::SelfAdjointEigenSolver<Mat> es(heff.matrix.entries);
  const Eigen::VectorXd evals = es.eigenvalues();
  const double expect[6] = {-3.0, -2.0, -0.5, 0.5, 2.0, 3.0};
  for (int i = 0; i < 6; ++i) CHECK(evals(i) == doctest::Approx(expect[i]).epsilon(1e-12));
}

TEST_CASE("harmonic index convention: flat zero is the lowest harmonic block") {
  // m = 0 corresponds to harmonic j = -j_max, whose diagonal block is
  // H_0 + j_max * omega * I; with delta=1, omega=2.5 its (0,0) entry is 2.0.
  const FourierHamiltonian h = driven_spin_half(1.0, 0.0, 2.5);
  const ExtendedHamiltonian heff = build_extended_hamiltonian(h, 1);
  const StateVector zero = new_zero_state({{3, 2}});
  CHECK(expectation(zero, heff.matrix) == doctest::Approx(2.0));
}

TEST_CASE("drive enters only the off-diagonal harmonic blocks") {
  const FourierHamiltonian h = driven_spin_half(1.0, 1.0, 2.5);
  const Mat heff = build_extended_hamiltonian(h, 1).matrix.entries;
  const Mat quarter_x = 0.25 * pauli_x().entries;
  // Block (m=1, m=0) couples harmonics j=0 and j=-1 through H_{+1}.
  CHECK((heff.block(2, 0, 2, 2) - quarter_x).cwiseAbs().maxCoeff() < 1e-12);
  CHECK((heff.block(4, 2, 2, 2) - quarter_x).cwiseAbs().maxCoeff() < 1e-12);
  // |j - k| = 2 has no Fourier component in this model.
  CHECK(heff.block(4, 0, 2, 2).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("zero cutoff reduces to the static component") {
  const FourierHamiltonian h = driven_spin_half(1.0, 1.7, 2.5);
  const ExtendedHamiltonian heff = build_extended_hamiltonian(h, 0);
  REQUIRE(heff.matrix.dim == 2);
  CHECK((heff.matrix.entries - h.components.at(0).entries).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("extended Hamiltonian is hermitian for driven models and cutoffs") {
  for (double a : {0.5, 1.0, 2.0}) {
    for (int j_max : {1, 2, 3}) {
      const FourierHamiltonian h = driven_spin_half(1.0, a, 2.5);
      const ExtendedHamiltonian heff = build_extended_hamiltonian(h, j_max);
      CHECK(heff.matrix.dim == 2 * (2 * j_max + 1));
      CHECK(hermiticity_residual(heff.matrix.entries) < 1e-12);
    }
  }
}

}  // TEST_SUITE

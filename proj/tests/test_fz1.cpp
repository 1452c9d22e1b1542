// Band solver 1: return-probability loss, slot-decomposed shift rule,
// iterative phase estimation, circular statistics, and the full solve.

#include <cmath>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "floq/fz1.hpp"
#include "floq/state.hpp"

using namespace floq;

namespace {

MonodromyOperator synthetic_phase_unitary(double phi, int dim) {
  const double period = 2.0 * M_PI / 2.5;
  Mat d = Mat::Identity(dim, dim);
  d *= std::exp(Cx(0, 2.0 * M_PI * phi));
  return {make_unitary(std::move(d)), 1, period};
}

}  // namespace

TEST_SUITE("fz1") {

TEST_CASE("ansatz exposes three shift-eligible angles") {
  const ParameterizedCircuit c = build_u3_ansatz();
  CHECK(c.n_params == 3);
  CHECK(c.shape.total_dim() == 2);
  CHECK(c.shift_eligible == std::vector<bool>{true, true, true});
}

TEST_CASE("return probability of an undriven eigenstate is one") {
  const FourierHamiltonian h = driven_spin_half(1.0, 0.0, 2.5);
  const MonodromyOperator m = trotter_monodromy(h, 100);
  DeflationSet none;
  RngStream rng(1);
  CHECK(loss_fz1({0, 0, 0}, m, none, 0, rng) == doctest::Approx(1.0).epsilon(1e-12));

  // The balanced superposition returns with probability cos^2(T/2).
  const double expected = std::pow(std::cos(0.5 * h.period()), 2);
  CHECK(expected == doctest::Approx(0.0954915).epsilon(1e-5));
  CHECK(loss_fz1({M_PI / 2, 0, M_PI}, m, none, 0, rng) ==
        doctest::Approx(expected).epsilon(1e-10));
}

TEST_CASE("revisiting a deflated optimum costs lambda") {
  const FourierHamiltonian h = driven_spin_half(1.0, 0.0, 2.5);
  const MonodromyOperator m = trotter_monodromy(h, 100);
  const ParameterizedCircuit ansatz = build_u3_ansatz();
  DeflationSet set;
  set.lambda = 5.0;
  add_deflated(set, ansatz, {0, 0, 0});
  RngStream rng(1);
  CHECK(loss_fz1({0, 0, 0}, m, set, 0, rng) == doctest::Approx(-4.0).epsilon(1e-10));
}

TEST_CASE("exact loss never exceeds one without deflation") {
  const FourierHamiltonian h = driven_spin_half(1.0, 1.0, 2.5);
  const MonodromyOperator m = trotter_monodromy(h, 100);
  DeflationSet none;
  RngStream rng(8);
  for (int i = 0; i < 50; ++i) {
    const std::vector<double> theta = {rng.uniform01() * 2 * M_PI,
                                       rng.uniform01() * 2 * M_PI,
                                       rng.uniform01() * 2 * M_PI};
    CHECK(loss_fz1(theta, m, none, 0, rng) <= 1.0 + 1e-12);
  }
}

TEST_CASE("shift-rule gradient agrees with central differences") {
  const FourierHamiltonian h = driven_spin_half(1.0, 1.0, 2.5);
  const MonodromyOperator m = trotter_monodromy(h, 100);
  const ParameterizedCircuit ansatz = build_u3_ansatz();

  DeflationSet sets[2];
  sets[1].lambda = 5.0;
  add_deflated(sets[1], ansatz, {0.3, 1.0, 2.0});

  OptimizerConfig cfg;
  cfg.fd_step = 1e-5;  // tighten the stencil so the comparison is meaningful
  RngStream rng(21);
  for (const DeflationSet& set : sets) {
    const StochasticLoss loss = [&](const std::vector<double>& th, RngStream& r) {
      return loss_fz1(th, m, set, 0, r);
    };
    const ShiftRule rule = fz1_shift_rule(m, set, 0);
    CHECK(rule.n_slots == (set.solutions.empty() ? 2 : 3));
    for (int pt = 0; pt < 10; ++pt) {
      const std::vector<double> theta = {rng.uniform01() * 2 * M_PI,
                                         rng.uniform01() * 2 * M_PI,
                                         rng.uniform01() * 2 * M_PI};
      const auto exact =
          gradient(loss, theta, GradScheme::ParameterShift, cfg, &rule, false, rng);
      const auto stencil =
          gradient(loss, theta, GradScheme::CentralDifference, cfg, nullptr, false, rng);
      for (int i = 0; i < 3; ++i) {
        CHECK(std::abs(exact[static_cast<std::size_t>(i)] -
                       stencil[static_cast<std::size_t>(i)]) < 1e-4);
      }
    }
  }
}

TEST_CASE("phase estimation rounds the undriven phase to five bits") {
  const FourierHamiltonian h = driven_spin_half(1.0, 0.0, 2.5);
  const MonodromyOperator m = trotter_monodromy(h, 1);
  const DenseOperator prep = identity_op(2);
  RngStream rng(12);
  // True phase: U_T|0> = e^{i T/2}|0>, T/2 = 2 pi * 0.2.
  for (int rep = 0; rep < 5; ++rep) {
    const IqpeResult res = iqpe(prep, m, 5, 100, rng);
    double d = std::abs(res.phi - 0.2);
    d = std::min(d, 1.0 - d);
    CHECK(d <= 1.0 / 32.0 + 1e-12);
  }
}

TEST_CASE("a five-bit-representable phase is read exactly") {
  const MonodromyOperator m = synthetic_phase_unitary(0.15625, 2);
  const DenseOperator prep = identity_op(2);
  RngStream rng(5);
  const IqpeResult res = iqpe(prep, m, 5, 100, rng);
  CHECK(res.phi == doctest::Approx(0.15625).epsilon(1e-15));
  REQUIRE(res.bits.size() == 5);
  // 0.15625 = 0.00101 in binary, most significant bit first.
  CHECK(res.bits == std::vector<int>{0, 0, 1, 0, 1});
  for (bool tie : res.tie_flags) CHECK_FALSE(tie);
}

TEST_CASE("zero phase gives zero") {
  const MonodromyOperator m = synthetic_phase_unitary(0.0, 2);
  RngStream rng(9);
  const IqpeResult res = iqpe(identity_op(2), m, 7, 50, rng);
  CHECK(res.phi == 0.0);

  CHECK_THROWS_AS(iqpe(identity_op(2), m, 0, 50, rng), std::invalid_argument);
  CHECK_THROWS_AS(iqpe(identity_op(2), m, 5, 0, rng), std::invalid_argument);
}

TEST_CASE("phase estimation is deterministic for a fixed seed") {
  const FourierHamiltonian h = driven_spin_half(1.0, 1.0, 2.5);
  const MonodromyOperator m = trotter_monodromy(h, 100);
  RngStream r1(31);
  RngStream r2(31);
  const IqpeResult a = iqpe(identity_op(2), m, 5, 100, r1);
  const IqpeResult b = iqpe(identity_op(2), m, 5, 100, r2);
  CHECK(a.phi == b.phi);
  CHECK(a.bits == b.bits);
}

TEST_CASE("phase-to-energy conversion and its domain") {
  const double period = 2.0 * M_PI / 2.5;
  CHECK(quasienergy_from_phase(0.2, period, 2.5) == doctest::Approx(-0.5).epsilon(1e-12));
  CHECK(quasienergy_from_phase(0.8, period, 2.5) == doctest::Approx(+0.5).epsilon(1e-12));
  CHECK(quasienergy_from_phase(0.0, period, 2.5) == doctest::Approx(0.0));
  CHECK_THROWS_AS(quasienergy_from_phase(1.0, period, 2.5), std::invalid_argument);
  CHECK_THROWS_AS(quasienergy_from_phase(-0.1, period, 2.5), std::invalid_argument);
}

TEST_CASE("circular statistics respect the wrap-around") {
  CHECK(circular_mean_phase({0.95, 0.05}) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(circular_mean_phase({0.2, 0.2, 0.2}) == doctest::Approx(0.2));
  CHECK(circular_sigma_energy({0.3, 0.3, 0.3}, 2.5) == doctest::Approx(0.0).epsilon(1e-7));

  // Two phases straddling the wrap: R = cos(2 pi 0.05).
  const double r = std::cos(2.0 * M_PI * 0.05);
  const double expect = std::sqrt(-2.0 * std::log(r)) * 2.5 / (2.0 * M_PI);
  CHECK(circular_sigma_energy({0.95, 0.05}, 2.5) == doctest::Approx(expect).epsilon(1e-10));
}

TEST_CASE("undriven solve recovers both static levels") {
  const FourierHamiltonian h = driven_spin_half(1.0, 0.0, 2.5);
  SolverConfig cfg;
  cfg.shots = 0;
  cfg.seed = 7;
  const std::vector<FloquetSolution> sols = solve_band_fz1(h, cfg);
  REQUIRE(sols.size() == 2);

  CHECK(sols[0].branch == 0);
  CHECK(sols[1].branch == 1);
  CHECK(sols[0].epsilon < sols[1].epsilon);
  CHECK(std::abs(sols[0].epsilon - (-0.5)) < 2.5 / 32 + 3 * sols[0].epsilon_sigma);
  CHECK(std::abs(sols[1].epsilon - (+0.5)) < 2.5 / 32 + 3 * sols[1].epsilon_sigma);
  for (const FloquetSolution& s : sols) {
    CHECK(s.converged);
    CHECK(s.loss_star > 0.999);
    CHECK(s.fidelity_vs_oracle > 0.999);
    CHECK(s.epsilon >= -1.25);
    CHECK(s.epsilon < 1.25);
    CHECK(static_cast<int>(s.epsilon_repeats.size()) == cfg.iqpe_repeats);
  }
  // Deflation forces the second branch away from the first.
  CHECK(overlap_sq(sols[0].state, sols[1].state) <= 0.05);
}

TEST_CASE("driven solve matches the fine-sliced oracle") {
  const FourierHamiltonian h = driven_spin_half(1.0, 1.0, 2.5);
  SolverConfig cfg;
  cfg.shots = 0;
  cfg.seed = 19;
  const std::vector<FloquetSolution> sols = solve_band_fz1(h, cfg);
  REQUIRE(sols.size() == 2);

  const QuasiEnergySpectrum oracle = exact_quasienergies(h);
  for (int i = 0; i < 2; ++i) {
    const auto& s = sols[static_cast<std::size_t>(i)];
    CHECK(s.converged);
    CHECK(std::abs(s.epsilon - oracle.energies[static_cast<std::size_t>(i)]) <
          2.5 / 32 + 3 * s.epsilon_sigma);
    CHECK(s.fidelity_vs_oracle > 0.95);
  }
  CHECK(overlap_sq(sols[0].state, sols[1].state) <= 0.05);
}

}  // TEST_SUITE

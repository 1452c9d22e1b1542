#pragma once

// Band solver 2: excited-state VQE on the square of the extended-space
// Hamiltonian, with a 7-parameter variational Hamiltonian ansatz on a
// qutrit (x) qubit register. Minimizing <H_eff^2> pins eigenvalue magnitude;
// the sign (and ladder position) is recovered from <H_eff> afterwards.

#include "floq/circuit.hpp"
#include "floq/fourier.hpp"
#include "floq/oracle.hpp"
#include "floq/solution.hpp"

namespace floq {

struct SpinLadderGenerators {
  DenseOperator s4;       // couples the upper pair of the qutrit
  DenseOperator s5;       // couples the lower pair of the qutrit
  DenseOperator sx;       // (s4 + s5) / 2, eigenvalues {+-1/sqrt(2), 0}
  DenseOperator sigma_y;  // qubit
  DenseOperator sigma_x;  // qubit
};

// Only the three-level qudit construction (truncation order 1) is defined.
SpinLadderGenerators spin_ladder_generators(int j_max);

// U(Th) = e^{i Th1 sy} e^{i Th2 S4} e^{i Th3 S5} e^{i Th4 Sx(x)sx}
//         e^{i Th5 sy} e^{i Th6 S4} e^{i Th7 S5}
// on register dims [3, 2] (qutrit slowest); rightmost factor applied first;
// sy acts on the qubit, S4/S5 on the qutrit. At Th4 = 0 the bound unitary
// is a separable product over the two factors.
ParameterizedCircuit build_vha(int j_max);

// <H_eff^2> + lambda * sum_beta |<0| U_beta^dag U_th |0>|^2 (to be
// minimized; the optimization engine maximizes its negation). The penalty
// sign repels previously found states.
double loss_fz2(const std::vector<double>& theta, const ExtendedHamiltonian& heff,
                const DeflationSet& deflation, int shots, RngStream& rng);

struct EnergyReading {
  double raw = 0.0;     // <H_eff>, ladder value
  double folded = 0.0;  // raw folded into [-W/2, W/2)
  double std_error = 0.0;
};

EnergyReading energy_from_state(const std::vector<double>& theta,
                                const ExtendedHamiltonian& heff, int shots,
                                RngStream& rng);

// Full procedure over all (2 j_max + 1) * dim_r branches: minimize <H_eff^2>
// under accumulated deflation, then refine by re-centering: minimize
// <(H_eff - mu)^2> at mu = <H_eff> for up to three rounds, which separates
// the two members of each +-eps pair (H_eff^2 alone cannot distinguish
// them). The deflation weight is raised to spread(H_eff^2) + 1 when the
// configured lambda is below the spectral spread, since revisiting an old
// minimum would otherwise be cheaper than finding the remaining eigenstates.
// A branch with residual variance above 0.05 * W^2 is flagged unconverged.
std::vector<FloquetSolution> solve_band_fz2(const FourierHamiltonian& h, int j_max,
                                            const SolverConfig& config);

}  // namespace floq

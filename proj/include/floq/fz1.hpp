#pragma once

// Band solver 1: maximize the one-period return probability of a
// parameterized state, deflate found solutions, and read each quasi-energy
// off the monodromy eigenphase with iterative (Kitaev) phase estimation.
//
// Phase convention: a monodromy eigenvalue e^{-i eps T} is written e^{2 pi
// i phi}, so the estimated phase maps to eps = fold(-2 pi phi / T).

#include "floq/circuit.hpp"
#include "floq/evolution.hpp"
#include "floq/oracle.hpp"
#include "floq/solution.hpp"

namespace floq {

// Single U3 gate on a two-level register: 3 parameters (theta, phi, nu).
ParameterizedCircuit build_u3_ansatz();

// |<0| U_th^dag U_T U_th |0>|^2 - lambda * sum_beta |<0| U_beta^dag U_th |0>|^2,
// estimated with `shots` measurements per term (exact when shots = 0).
double loss_fz1(const std::vector<double>& theta, const MonodromyOperator& m,
                const DeflationSet& deflation, int shots, RngStream& rng);

// Exact two-term shift rule for the loss above. Each U3 angle enters the
// return-probability circuit twice (state prep and its adjoint) and the
// penalty once; those occurrences are exposed as slots 0, 1, 2.
ShiftRule fz1_shift_rule(const MonodromyOperator& m, const DeflationSet& deflation,
                         int shots);

struct IqpeResult {
  double phi = 0.0;            // in [0, 1)
  std::vector<int> bits;       // bits[k] is b_{k+1} (most significant first)
  std::vector<bool> tie_flags; // majority vote was a tie, resolved to 0
};

// Kitaev iterative phase estimation with one ancilla: bit k (least
// significant first) uses controlled U_T^(2^(k-1)) and the classical feedback
// rotation w_k = -2 pi sum_{l>k} b_l 2^{-(l-k+1)}.
IqpeResult iqpe(const DenseOperator& prep, const MonodromyOperator& m, int n_bits,
                int shots_per_bit, RngStream& rng);

double quasienergy_from_phase(double phi, double period, double omega);

// Circular mean of phases given as fractions of a turn, result in [0, 1).
double circular_mean_phase(const std::vector<double>& phis);

// Circular standard deviation sqrt(-2 ln R) of the same phases, scaled by
// omega / 2 pi into energy units.
double circular_sigma_energy(const std::vector<double>& phis, double omega);

// Full procedure: for each of the dim_r branches, optimize the return
// probability under accumulated deflation, then run `iqpe_repeats` phase
// estimations on the optimized state; epsilon is the circular-mean phase
// mapped to energy, epsilon_sigma the circular spread. A branch with final
// loss below 0.9 is flagged unconverged.
std::vector<FloquetSolution> solve_band_fz1(const FourierHamiltonian& h,
                                            const SolverConfig& config);

}  // namespace floq

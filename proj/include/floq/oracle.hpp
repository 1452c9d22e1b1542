#pragma once

// Classical exact ground truth for both solvers.
//
// Quasi-energies live on the circle: folding maps any raw energy into the
// first Brillouin zone [-W/2, W/2). A monodromy eigenvalue e^{i theta} (theta
// the principal argument) corresponds to e^{-i eps T}, so eps =
// fold(-theta / T). "Exact" means fine time slicing at >= 1e4 steps, far
// below every tolerance used in the tests; the benchmark has no closed form.

#include <utility>
#include <vector>

#include "floq/evolution.hpp"
#include "floq/fourier.hpp"

namespace floq {

struct QuasiEnergySpectrum {
  std::vector<double> energies;  // ascending, each in [-W/2, W/2)
  std::vector<Vec> modes;        // orthonormal t = 0 Floquet modes
  double omega = 0.0;
  bool degenerate = false;       // eigenphases within 1e-9 of each other
};

double fold_to_bz(double eps, double omega);

QuasiEnergySpectrum exact_quasienergies(const FourierHamiltonian& h,
                                        int fine_steps = 100000);

// Ascending eigenpairs of the extended-space matrix at truncation j_max.
std::vector<std::pair<double, Vec>> truncated_exact_spectrum(
    const FourierHamiltonian& h, int j_max);

// Best-matching oracle branch: (arg max_a |<mode_a|candidate>|^2, max value).
std::pair<int, double> mode_fidelity(const Vec& candidate,
                                     const QuasiEnergySpectrum& spectrum);

}  // namespace floq

#pragma once

// Gate application on arbitrary subsystem subsets, expectation values, and
// computational-basis projector probabilities.

#include <vector>

#include "floq/operators.hpp"
#include "floq/register.hpp"

namespace floq {

// Applies op to the listed subsystems (identity on the rest). The operator's
// own index order follows the order of `targets`: targets[0] is its slowest
// digit. Norm is preserved for unitary ops.
StateVector apply_operator(const StateVector& state, const DenseOperator& op,
                           const std::vector<int>& targets);

// <psi|obs|psi> for hermitian obs on the full register; the imaginary residue
// must vanish within 1e-10 and is discarded.
double expectation(const StateVector& state, const DenseOperator& obs);

// |amps[flat_index]|^2.
double projector_probability(const StateVector& state, int flat_index);

// |<a|b>|^2 for normalized vectors.
double overlap_sq(const Vec& a, const Vec& b);

}  // namespace floq

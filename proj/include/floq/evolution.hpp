#pragma once

// One-period propagator (monodromy operator) by time slicing, and its
// controlled powers for phase estimation.
//
// U_T is the ordered product of exact per-slice exponentials
//   U_T = exp(-i H(t_n) dt) ... exp(-i H(t_1) dt),  t_k = (k - 1/2) dt,
// latest slice leftmost; midpoint evaluation makes the splitting second
// order. The global phase of U_T is physical (phase estimation reads it)
// and is never normalized away.

#include "floq/fourier.hpp"

namespace floq {

struct MonodromyOperator {
  DenseOperator u_t;
  int steps = 0;
  double period = 0.0;
};

MonodromyOperator trotter_monodromy(const FourierHamiltonian& h, int steps);

// On register dims [2, dim_r] (ancilla slowest):
//   |0><0| (x) 1  +  |1><1| (x) U_T^(2^p),
// the power computed by repeated squaring.
DenseOperator controlled_power(const MonodromyOperator& m, int p);

}  // namespace floq

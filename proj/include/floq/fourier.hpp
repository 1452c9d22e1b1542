#pragma once

// Time-periodic Hamiltonians as finite Fourier series,
//   H(t) = sum_j e^{-i j W t} H_j,   H_{-j} = H_j^dag,
// the driven two-level benchmark, and the truncated extended-space (Sambe)
// effective Hamiltonian whose blocks are H_eff^{j,k} = H_{j-k} - j W d_{j,k}.
//
// Extended-space basis convention: |j>_T tensor |s>_R with the T factor the
// slowest register digit, T index m = j + j_max (m = 0 is j = -j_max), flat
// row = m * dim_r + s.

#include <cmath>
#include <map>

#include "floq/operators.hpp"

namespace floq {

struct FourierHamiltonian {
  std::map<int, DenseOperator> components;  // harmonic index j -> H_j
  double omega = 0.0;                       // angular frequency, hbar = 1
  int dim_r = 0;                            // physical dimension

  double period() const { return 2.0 * M_PI / omega; }
};

// H(t) = -Delta/2 sz + (A/2) cos(W t) sx, stored as Fourier components
// {0 -> -(Delta/2) sz, +-1 -> (A/4) sx}.
FourierHamiltonian driven_spin_half(double delta, double amplitude, double omega);

DenseOperator evaluate_at_time(const FourierHamiltonian& h, double t);

struct ExtendedHamiltonian {
  DenseOperator matrix;  // dim (2 j_max + 1) * dim_r, hermitian
  int j_max = 0;
  double omega = 0.0;
};

ExtendedHamiltonian build_extended_hamiltonian(const FourierHamiltonian& h, int j_max);

}  // namespace floq

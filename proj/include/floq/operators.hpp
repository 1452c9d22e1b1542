#pragma once

// Dense operators with validity tags, elementary matrices, and exact
// exponentials of hermitian generators (via eigendecomposition; every
// dimension in this library is small enough for dense to be exact).

#include <string>

#include "floq/register.hpp"

namespace floq {

constexpr double kHermTol = 1e-12;
constexpr double kUnitaryTol = 1e-10;

enum class OpTag { Hermitian, Unitary, General };

struct DenseOperator {
  int dim = 0;
  Mat entries;
  OpTag tag = OpTag::General;
};

// Constructors validate the claimed tag and throw std::invalid_argument on
// violation (hermitian residual > 1e-12, unitarity residual > 1e-10).
DenseOperator make_hermitian(Mat m);
DenseOperator make_unitary(Mat m);
DenseOperator make_general(Mat m);

double hermiticity_residual(const Mat& m);
double unitarity_residual(const Mat& m);

DenseOperator identity_op(int dim);
DenseOperator pauli_x();
DenseOperator pauli_y();
DenseOperator pauli_z();

// Kronecker product; left factor is the slower (leftmost) register digit.
DenseOperator kron(const DenseOperator& a, const DenseOperator& b);

// exp(i * scale * gen) for hermitian gen.
DenseOperator matrix_exponential(const DenseOperator& gen, double scale);

}  // namespace floq

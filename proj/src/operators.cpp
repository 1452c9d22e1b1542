#include "floq/operators.hpp"

#include <Eigen/Eigenvalues>

namespace floq {

double hermiticity_residual(const Mat& m) {
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

double unitarity_residual(const Mat& m) {
  Mat g = m.adjoint() * m;
  g -= Mat::Identity(m.rows(), m.cols());
  return g.cwiseAbs().maxCoeff();
}

static void require_square(const Mat& m) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw std::invalid_argument("operator: matrix must be square and non-empty");
  }
}

DenseOperator make_hermitian(Mat m) {
  require_square(m);
  if (hermiticity_residual(m) > kHermTol) {
    throw std::invalid_argument("operator: hermitian tag violated");
  }
  return {static_cast<int>(m.rows()), std::move(m), OpTag::Hermitian};
}

DenseOperator make_unitary(Mat m) {
  require_square(m);
  if (unitarity_residual(m) > kUnitaryTol) {
    throw std::invalid_argument("operator: unitary tag violated");
  }
  return {static_cast<int>(m.rows()), std::move(m), OpTag::Unitary};
}

DenseOperator make_general(Mat m) {
  require_square(m);
  return {static_cast<int>(m.rows()), std::move(m), OpTag::General};
}

DenseOperator identity_op(int dim) {
  return {dim, Mat::Identity(dim, dim), OpTag::Unitary};
}

DenseOperator pauli_x() {
  Mat m(2, 2);
  m << 0, 1, 1, 0;
  return {2, m, OpTag::Hermitian};
}

DenseOperator pauli_y() {
  Mat m(2, 2);
  m << Cx(0, 0), Cx(0, -1), Cx(0, 1), Cx(0, 0);
  return {2, m, OpTag::Hermitian};
}

DenseOperator pauli_z() {
  Mat m(2, 2);
  m << 1, 0, 0, -1;
  return {2, m, OpTag::Hermitian};
}

DenseOperator kron(const DenseOperator& a, const DenseOperator& b) {
  const int n = a.dim * b.dim;
  Mat out(n, n);
  for (int i = 0; i < a.dim; ++i) {
    for (int j = 0; j < a.dim; ++j) {
      out.block(i * b.dim, j * b.dim, b.dim, b.dim) = a.entries(i, j) * b.entries;
    }
  }
  OpTag tag = OpTag::General;
  if (a.tag == OpTag::Hermitian && b.tag == OpTag::Hermitian) tag = OpTag::Hermitian;
  if (a.tag == OpTag::Unitary && b.tag == OpTag::Unitary) tag = OpTag::Unitary;
  return {n, std::move(out), tag};
}

DenseOperator matrix_exponential(const DenseOperator& gen, double scale) {
  if (gen.tag != OpTag::Hermitian) {
    throw std::invalid_argument("matrix_exponential: generator must be hermitian");
  }
  Eigen::SelfAdjointEigenSolver<Mat> es(gen.entries);
  Vec phases(gen.dim);
  for (int i = 0; i < gen.dim; ++i) {
    phases(i) = std::exp(Cx(0, scale * es.eigenvalues()(i)));
  }
  Mat u = es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
  return {gen.dim, std::move(u), OpTag::Unitary};
}

}  // namespace floq

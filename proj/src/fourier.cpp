#include "floq/fourier.hpp"

namespace floq {

FourierHamiltonian driven_spin_half(double delta, double amplitude, double omega) {
  if (omega <= 0.0) throw std::invalid_argument("driven_spin_half: omega must be positive");
  FourierHamiltonian h;
  h.omega = omega;
  h.dim_r = 2;
  h.components.emplace(0, make_hermitian(-0.5 * delta * pauli_z().entries));
  // cos(W t) = (e^{iWt} + e^{-iWt}) / 2 splits the drive evenly over j = +-1.
  const Mat drive = 0.25 * amplitude * pauli_x().entries;
  h.components.emplace(1, make_general(drive));
  h.components.emplace(-1, make_general(drive));
  return h;
}

DenseOperator evaluate_at_time(const FourierHamiltonian& h, double t) {
  Mat sum = Mat::Zero(h.dim_r, h.dim_r);
  for (const auto& [j, op] : h.components) {
    sum += std::exp(Cx(0, -j * h.omega * t)) * op.entries;
  }
  return make_hermitian(std::move(sum));
}

ExtendedHamiltonian build_extended_hamiltonian(const FourierHamiltonian& h, int j_max) {
  if (j_max < 0) throw std::invalid_argument("build_extended_hamiltonian: j_max must be >= 0");
  const int blocks = 2 * j_max + 1;
  const int dim = blocks * h.dim_r;
  Mat m = Mat::Zero(dim, dim);
  for (int mj = 0; mj < blocks; ++mj) {
    const int j = mj - j_max;
    for (int mk = 0; mk < blocks; ++mk) {
      const int k = mk - j_max;
      auto it = h.components.find(j - k);
      if (it != h.components.end()) {
        m.block(mj * h.dim_r, mk * h.dim_r, h.dim_r, h.dim_r) = it->second.entries;
      }
      if (j == k) {
        m.block(mj * h.dim_r, mk * h.dim_r, h.dim_r, h.dim_r) -=
            j * h.omega * Mat::Identity(h.dim_r, h.dim_r);
      }
    }
  }
  return {make_hermitian(std::move(m)), j_max, h.omega};
}

}  // namespace floq

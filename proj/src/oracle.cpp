#include "floq/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <Eigen/Eigenvalues>

namespace floq {

double fold_to_bz(double eps, double omega) {
  if (omega <= 0.0) throw std::invalid_argument("fold_to_bz: omega must be positive");
  // remainder() lands in [-W/2, W/2]; push the closed upper edge down to keep
  // the zone half-open.
  double r = std::remainder(eps, omega);
  if (r >= 0.5 * omega) r -= omega;
  return r;
}

QuasiEnergySpectrum exact_quasienergies(const FourierHamiltonian& h, int fine_steps) {
  if (fine_steps < 10000) {
    throw std::invalid_argument("exact_quasienergies: fine_steps must be >= 1e4");
  }
  const MonodromyOperator m = trotter_monodromy(h, fine_steps);

  // Schur of a normal matrix: unitary basis (orthonormal even at exact
  // degeneracies), eigenvalues on the diagonal.
  Eigen::ComplexSchur<Mat> schur(m.u_t.entries);
  const int dim = h.dim_r;

  QuasiEnergySpectrum out;
  out.omega = h.omega;
  std::vector<double> eps(dim);
  for (int i = 0; i < dim; ++i) {
    const double theta = std::arg(schur.matrixT()(i, i));
    eps[i] = fold_to_bz(-theta / m.period, h.omega);
  }
  for (int i = 0; i < dim; ++i) {
    for (int j = i + 1; j < dim; ++j) {
      const Cx li = schur.matrixT()(i, i), lj = schur.matrixT()(j, j);
      if (std::abs(li - lj) < 1e-9) out.degenerate = true;
    }
  }

  std::vector<int> order(dim);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return eps[a] < eps[b]; });
  for (int i : order) {
    out.energies.push_back(eps[i]);
    out.modes.push_back(schur.matrixU().col(i));
  }
  return out;
}

std::vector<std::pair<double, Vec>> truncated_exact_spectrum(
    const FourierHamiltonian& h, int j_max) {
  const ExtendedHamiltonian ext = build_extended_hamiltonian(h, j_max);
  Eigen::SelfAdjointEigenSolver<Mat> es(ext.matrix.entries);
  std::vector<std::pair<double, Vec>> out;
  for (int i = 0; i < ext.matrix.dim; ++i) {
    out.emplace_back(es.eigenvalues()(i), es.eigenvectors().col(i));
  }
  return out;
}

std::pair<int, double> mode_fidelity(const Vec& candidate,
                                     const QuasiEnergySpectrum& spectrum) {
  if (candidate.norm() < 1e-12) {
    throw std::invalid_argument("mode_fidelity: zero-norm candidate");
  }
  const Vec c = candidate / candidate.norm();
  int best = -1;
  double fid = -1.0;
  for (int i = 0; i < static_cast<int>(spectrum.modes.size()); ++i) {
    const double f = std::norm(spectrum.modes[i].dot(c));
    if (f > fid) {
      fid = f;
      best = i;
    }
  }
  return {best, fid};
}

}  // namespace floq

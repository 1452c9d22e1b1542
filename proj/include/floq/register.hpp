#pragma once

// Registers of mixed-dimension subsystems (qudits) and dense statevectors.
//
// Flat indexing is mixed-radix with dims[0] the SLOWEST digit, so subsystem 0
// is the leftmost factor in every tensor product written in this library.

#include <complex>
#include <numeric>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

namespace floq {

using Cx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

constexpr double kNormTol = 1e-10;

struct RegisterShape {
  std::vector<int> dims;

  int total_dim() const {
    return std::accumulate(dims.begin(), dims.end(), 1,
                           [](int a, int b) { return a * b; });
  }

  void validate() const {
    if (dims.empty()) throw std::invalid_argument("register: empty dims list");
    for (int d : dims) {
      if (d < 2) throw std::invalid_argument("register: subsystem dim < 2");
    }
  }

  bool operator==(const RegisterShape& o) const { return dims == o.dims; }
};

struct StateVector {
  RegisterShape shape;
  Vec amps;

  double norm() const { return amps.norm(); }
};

// |0...0>: amplitude 1 at flat index 0.
StateVector new_zero_state(const RegisterShape& shape);

}  // namespace floq

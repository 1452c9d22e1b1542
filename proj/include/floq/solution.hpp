#pragma once

// Solver output records and the configuration shared by both band solvers.

#include <cstdint>
#include <limits>
#include <vector>

#include "floq/optimizer.hpp"
#include "floq/register.hpp"

namespace floq {

inline constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct SolverConfig {
  double lambda = 5.0;     // deflation weight
  int trotter_steps = 100;
  int shots = 10000;       // 0 = exact-expectation mode
  int iqpe_bits = 5;
  int iqpe_shots = 100;
  int iqpe_repeats = 20;
  int restarts = 8;
  std::uint64_t seed = 0;
  OptimizerConfig optimizer;
};

struct FloquetSolution {
  std::vector<double> theta_star;
  double epsilon = 0.0;        // folded into [-W/2, W/2)
  double epsilon_sigma = 0.0;  // phase-estimation circular std, or sample SE
  double epsilon_raw = kNaN;   // extended-space ladder value (band solver 2)
  double loss_star = 0.0;
  int branch = 0;
  int j_offset = 0;            // inferred ladder index of epsilon_raw
  double fidelity_vs_oracle = kNaN;
  double residual_variance = kNaN;  // <H^2> - <H>^2 convergence diagnostic
  bool converged = true;
  std::vector<double> epsilon_repeats;  // per-repeat phase-estimation results
  Vec state;                   // prepared state at theta_star
};

}  // namespace floq

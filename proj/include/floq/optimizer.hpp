#pragma once

// Gradient estimation and Polak-Ribiere conjugate-gradient ascent with
// random restarts, usable on both exact and shot-noise losses.
//
// Every loss evaluation receives an explicit RngStream. In sampled mode the
// engine clones one forked stream across paired evaluations (the two points
// of a difference stencil; all trial points of a line search), so shot noise
// is common to the pair and largely cancels in comparisons. Without this
// coupling, finite differences of 1e4-shot estimates are noise-dominated.
//
// The two-term parameter-shift rule is exact only per occurrence of a
// parameter in the circuit: losses where one angle enters several unitary
// factors (e.g. both the state-prep and its adjoint around a propagator)
// must expose the occurrences as separate "slots". The derivative is then
// the sum over slots of [L(slot at +pi/2) - L(slot at -pi/2)] / 2.

#include <functional>
#include <vector>

#include "floq/sampling.hpp"

namespace floq {

struct OptimizerConfig {
  int max_iters = 200;
  double grad_norm_tol = 1e-5;
  double fd_step = 1e-3;   // central-difference stencil (exact mode)
  int restarts = 8;
  std::uint64_t seed = 0;

  void validate() const {
    if (max_iters <= 0 || grad_norm_tol <= 0 || fd_step <= 0 || restarts <= 0) {
      throw std::invalid_argument("optimizer: config values must be positive");
    }
  }
};

enum class GradScheme { CentralDifference, ParameterShift };

using StochasticLoss =
    std::function<double(const std::vector<double>&, RngStream&)>;

// Slot-decomposed evaluator for exact shift-rule gradients: evaluates the
// loss with parameter `param` offset by `shift` inside occurrence `slot`
// only, all other occurrences held at theta.
struct ShiftRule {
  int n_slots = 0;
  std::function<double(const std::vector<double>& theta, int param, int slot,
                       double shift, RngStream&)>
      eval;
  std::vector<bool> eligible;  // per parameter
};

// sampled=false: the loss is deterministic (exact-expectation mode).
// ParameterShift requires `rule` and throws for ineligible parameters.
std::vector<double> gradient(const StochasticLoss& loss,
                             const std::vector<double>& theta, GradScheme scheme,
                             const OptimizerConfig& cfg, const ShiftRule* rule,
                             bool sampled, RngStream& rng);

struct OptimizeDiagnostics {
  int best_restart = -1;
  int iterations = 0;      // taken by the winning restart
  double grad_norm = 0.0;  // at the winning restart's final iterate
  bool converged = false;  // gradient tolerance met (exact mode)
};

struct OptimizeResult {
  std::vector<double> theta;
  double loss = 0.0;
  OptimizeDiagnostics diag;
};

// Maximizes the loss from `restarts` uniform-random starts in [0, 2pi)^n.
// Exact mode uses Armijo backtracking (c = 1e-4, shrink 0.5); sampled mode
// uses the fixed trial-step schedule {1, 0.5, 0.25, 0.125} under common
// random numbers. Deterministic for a given rng state.
OptimizeResult maximize(const StochasticLoss& loss, int n_params,
                        const OptimizerConfig& cfg, RngStream& rng,
                        bool sampled, const ShiftRule* rule = nullptr,
                        GradScheme scheme = GradScheme::CentralDifference);

// Single descent run from a fixed starting point (no restarts); used for
// refinement phases that must stay in the current basin.
OptimizeResult maximize_from(const StochasticLoss& loss,
                             const std::vector<double>& theta0,
                             const OptimizerConfig& cfg, RngStream& rng,
                             bool sampled, const ShiftRule* rule = nullptr,
                             GradScheme scheme = GradScheme::CentralDifference);

}  // namespace floq

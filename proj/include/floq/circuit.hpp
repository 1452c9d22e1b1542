#pragma once

// Parameterized circuits shared by both solvers, and deflation bookkeeping.
//
// A circuit is an ordered gate list; bind() multiplies the gate unitaries in
// listed order, so the leftmost gate acts LAST on a state and prepare()
// applies the rightmost gate first. Generator gates are exp(sign * i * th * K)
// with K hermitian and fixed; their eigendecomposition is precomputed once so
// rebinding at new angles costs two small matrix products.

#include <variant>
#include <vector>

#include "floq/operators.hpp"
#include "floq/register.hpp"
#include "floq/sampling.hpp"
#include "floq/state.hpp"

namespace floq {

struct GeneratorGate {
  DenseOperator generator;   // hermitian, on the target subsystems
  std::vector<int> targets;
  double sign = 1.0;         // exp(sign * i * theta * K)
  int param_index = 0;
  // Precomputed spectral data of the generator embedded on the full register.
  Eigen::VectorXd embedded_evals;
  Mat embedded_evecs;
};

// Generic single-qubit rotation with three angles (theta, phi, nu):
//   [[cos(th/2), -e^{i nu} sin(th/2)], [e^{i phi} sin(th/2), e^{i(phi+nu)} cos(th/2)]].
// All three angles admit exact two-term shift-rule derivatives.
struct U3Slot {
  std::vector<int> targets;
  int first_param = 0;  // consumes params [first_param, first_param + 3)
};

struct FixedGate {
  DenseOperator unitary;
  std::vector<int> targets;
};

using Gate = std::variant<GeneratorGate, U3Slot, FixedGate>;

struct ParameterizedCircuit {
  RegisterShape shape;
  std::vector<Gate> gates;
  int n_params = 0;
  std::vector<bool> shift_eligible;  // per parameter: exact two-term rule?
};

DenseOperator u3_matrix(double theta, double phi, double nu);

// Embeds op (given on `targets`) into the full register dimension.
DenseOperator embed_operator(const DenseOperator& op, const std::vector<int>& targets,
                             const RegisterShape& shape);

// Finalizes a circuit: validates gates, fills the per-gate spectral caches
// and the eligibility mask. Must be called once after assembling `gates`.
void finalize_circuit(ParameterizedCircuit& c);

DenseOperator bind(const ParameterizedCircuit& c, const std::vector<double>& theta);

// bind(c, theta) |0...0>, computed gate-by-gate (no full product).
StateVector prepare(const ParameterizedCircuit& c, const std::vector<double>& theta);

struct DeflatedSolution {
  std::vector<double> theta;
  Mat bound_adjoint;  // U_beta^dag, for composing overlap circuits
  Vec state;          // U_beta |0>
};

struct DeflationSet {
  std::vector<DeflatedSolution> solutions;
  double lambda = 5.0;
};

void add_deflated(DeflationSet& set, const ParameterizedCircuit& c,
                  const std::vector<double>& theta);

// lambda * sum_beta |<0| U_beta^dag U_theta |0>|^2, each term estimated via a
// projector measurement on the composed circuit (sampled when shots > 0).
double deflation_penalty(const ParameterizedCircuit& c, const std::vector<double>& theta,
                         const DeflationSet& set, int shots, RngStream& rng);

// Same penalty for an already-prepared state (avoids re-binding).
double deflation_penalty_state(const StateVector& psi, const DeflationSet& set,
                               int shots, RngStream& rng);

}  // namespace floq

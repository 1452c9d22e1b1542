#include "floq/circuit.hpp"

#include <Eigen/Eigenvalues>

namespace floq {

DenseOperator u3_matrix(double theta, double phi, double nu) {
  const double c = std::cos(0.5 * theta), s = std::sin(0.5 * theta);
  Mat m(2, 2);
  m(0, 0) = c;
  m(0, 1) = -std::exp(Cx(0, nu)) * s;
  m(1, 0) = std::exp(Cx(0, phi)) * s;
  m(1, 1) = std::exp(Cx(0, phi + nu)) * c;
  return make_unitary(std::move(m));
}

DenseOperator embed_operator(const DenseOperator& op, const std::vector<int>& targets,
                             const RegisterShape& shape) {
  const int dim = shape.total_dim();
  Mat full(dim, dim);
  StateVector basis{shape, Vec::Zero(dim)};
  for (int col = 0; col < dim; ++col) {
    basis.amps.setZero();
    basis.amps(col) = 1.0;
    // apply_operator validates targets and dimension agreement.
    StateVector image{shape, basis.amps};
    DenseOperator op_general{op.dim, op.entries, OpTag::General};
    image = apply_operator(image, op_general, targets);
    full.col(col) = image.amps;
  }
  return {dim, std::move(full), op.tag};
}

void finalize_circuit(ParameterizedCircuit& c) {
  c.shape.validate();
  c.shift_eligible.assign(c.n_params, false);
  for (auto& gate : c.gates) {
    if (auto* g = std::get_if<GeneratorGate>(&gate)) {
      if (g->generator.tag != OpTag::Hermitian) {
        throw std::invalid_argument("circuit: generator gate must have hermitian generator");
      }
      if (g->param_index < 0 || g->param_index >= c.n_params) {
        throw std::invalid_argument("circuit: generator gate parameter out of range");
      }
      const DenseOperator emb = embed_operator(g->generator, g->targets, c.shape);
      Eigen::SelfAdjointEigenSolver<Mat> es(emb.entries);
      g->embedded_evals = es.eigenvalues();
      g->embedded_evecs = es.eigenvectors();
    } else if (auto* u = std::get_if<U3Slot>(&gate)) {
      if (u->first_param < 0 || u->first_param + 3 > c.n_params) {
        throw std::invalid_argument("circuit: u3 slot parameters out of range");
      }
      for (int k = 0; k < 3; ++k) c.shift_eligible[u->first_param + k] = true;
    } else {
      const auto& f = std::get<FixedGate>(gate);
      if (f.unitary.tag != OpTag::Unitary) {
        throw std::invalid_argument("circuit: fixed gate must be unitary");
      }
    }
  }
}

namespace {

// Applies one gate to a full-register vector, rightmost-first caller order.
void apply_gate(const Gate& gate, const ParameterizedCircuit& c,
                const std::vector<double>& theta, Vec& amps) {
  if (const auto* g = std::get_if<GeneratorGate>(&gate)) {
    const double angle = g->sign * theta[g->param_index];
    Vec phases(amps.size());
    for (int i = 0; i < amps.size(); ++i) {
      phases(i) = std::exp(Cx(0, angle * g->embedded_evals(i)));
    }
    amps = g->embedded_evecs * (phases.asDiagonal() * (g->embedded_evecs.adjoint() * amps));
  } else if (const auto* u = std::get_if<U3Slot>(&gate)) {
    const DenseOperator m =
        u3_matrix(theta[u->first_param], theta[u->first_param + 1], theta[u->first_param + 2]);
    StateVector s{c.shape, std::move(amps)};
    s = apply_operator(s, m, u->targets);
    amps = std::move(s.amps);
  } else {
    const auto& f = std::get<FixedGate>(gate);
    StateVector s{c.shape, std::move(amps)};
    s = apply_operator(s, f.unitary, f.targets);
    amps = std::move(s.amps);
  }
}

}  // namespace

DenseOperator bind(const ParameterizedCircuit& c, const std::vector<double>& theta) {
  if (static_cast<int>(theta.size()) != c.n_params) {
    throw std::invalid_argument("bind: parameter count mismatch");
  }
  const int dim = c.shape.total_dim();
  Mat full(dim, dim);
  for (int col = 0; col < dim; ++col) {
    Vec v = Vec::Zero(dim);
    v(col) = 1.0;
    for (auto it = c.gates.rbegin(); it != c.gates.rend(); ++it) {
      apply_gate(*it, c, theta, v);
    }
    full.col(col) = v;
  }
  return make_unitary(std::move(full));
}

StateVector prepare(const ParameterizedCircuit& c, const std::vector<double>& theta) {
  if (static_cast<int>(theta.size()) != c.n_params) {
    throw std::invalid_argument("prepare: parameter count mismatch");
  }
  StateVector s = new_zero_state(c.shape);
  for (auto it = c.gates.rbegin(); it != c.gates.rend(); ++it) {
    apply_gate(*it, c, theta, s.amps);
  }
  return s;
}

void add_deflated(DeflationSet& set, const ParameterizedCircuit& c,
                  const std::vector<double>& theta) {
  const DenseOperator u = bind(c, theta);
  DeflatedSolution sol;
  sol.theta = theta;
  sol.bound_adjoint = u.entries.adjoint();
  sol.state = u.entries.col(0);
  set.solutions.push_back(std::move(sol));
}

double deflation_penalty_state(const StateVector& psi, const DeflationSet& set,
                               int shots, RngStream& rng) {
  if (set.solutions.empty()) return 0.0;
  if (set.lambda <= 0.0) throw std::invalid_argument("deflation: lambda must be positive");
  double acc = 0.0;
  for (const auto& sol : set.solutions) {
    if (sol.bound_adjoint.cols() != psi.amps.size()) {
      throw std::invalid_argument("deflation: register shape mismatch");
    }
    StateVector composed{psi.shape, sol.bound_adjoint * psi.amps};
    if (shots > 0) {
      acc += sample_projector(composed, 0, shots, rng).estimate;
    } else {
      acc += projector_probability(composed, 0);
    }
  }
  return set.lambda * acc;
}

double deflation_penalty(const ParameterizedCircuit& c, const std::vector<double>& theta,
                         const DeflationSet& set, int shots, RngStream& rng) {
  if (set.solutions.empty()) return 0.0;
  const StateVector psi = prepare(c, theta);
  return deflation_penalty_state(psi, set, shots, rng);
}

}  // namespace floq

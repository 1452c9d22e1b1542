#include "floq/fz1.hpp"

#include <algorithm>
#include <cmath>

namespace floq {

ParameterizedCircuit build_u3_ansatz() {
  ParameterizedCircuit c;
  c.shape = {{2}};
  c.gates.push_back(U3Slot{{0}, 0});
  c.n_params = 3;
  finalize_circuit(c);
  return c;
}

namespace {

// Return probability with independently shiftable state-prep (ket) and
// adjoint (bra) angles; the physical loss is the diagonal ka = kb.
double return_probability(const std::vector<double>& theta_ket,
                          const std::vector<double>& theta_bra,
                          const MonodromyOperator& m, int shots, RngStream& rng) {
  const DenseOperator uk = u3_matrix(theta_ket[0], theta_ket[1], theta_ket[2]);
  const DenseOperator ub = u3_matrix(theta_bra[0], theta_bra[1], theta_bra[2]);
  Vec amps = Vec::Zero(m.u_t.dim);
  amps(0) = 1.0;
  amps = ub.entries.adjoint() * (m.u_t.entries * (uk.entries * amps));
  StateVector composed{{{m.u_t.dim}}, std::move(amps)};
  if (shots > 0) return sample_projector(composed, 0, shots, rng).estimate;
  return projector_probability(composed, 0);
}

double penalty_at(const std::vector<double>& theta, const DeflationSet& deflation,
                  int shots, RngStream& rng) {
  if (deflation.solutions.empty()) return 0.0;
  const DenseOperator u = u3_matrix(theta[0], theta[1], theta[2]);
  StateVector psi{{{2}}, u.entries.col(0)};
  return deflation_penalty_state(psi, deflation, shots, rng);
}

}  // namespace

double loss_fz1(const std::vector<double>& theta, const MonodromyOperator& m,
                const DeflationSet& deflation, int shots, RngStream& rng) {
  const double p = return_probability(theta, theta, m, shots, rng);
  return p - penalty_at(theta, deflation, shots, rng);
}

ShiftRule fz1_shift_rule(const MonodromyOperator& m, const DeflationSet& deflation,
                         int shots) {
  ShiftRule rule;
  rule.n_slots = deflation.solutions.empty() ? 2 : 3;
  rule.eligible.assign(3, true);
  rule.eval = [&m, &deflation, shots](const std::vector<double>& theta, int param,
                                      int slot, double shift, RngStream& rng) {
    std::vector<double> ket = theta, bra = theta, pen = theta;
    if (slot == 0) ket[param] += shift;
    if (slot == 1) bra[param] += shift;
    if (slot == 2) pen[param] += shift;
    const double p = return_probability(ket, bra, m, shots, rng);
    return p - penalty_at(pen, deflation, shots, rng);
  };
  return rule;
}

IqpeResult iqpe(const DenseOperator& prep, const MonodromyOperator& m, int n_bits,
                int shots_per_bit, RngStream& rng) {
  if (n_bits < 1) throw std::invalid_argument("iqpe: n_bits must be >= 1");
  if (shots_per_bit < 1) throw std::invalid_argument("iqpe: shots_per_bit must be >= 1");
  const int d = m.u_t.dim;
  const RegisterShape shape{{2, d}};
  const DenseOperator had = make_unitary(
      (Mat(2, 2) << 1, 1, 1, -1).finished() / std::sqrt(2.0));

  IqpeResult out;
  out.bits.assign(n_bits, 0);
  out.tie_flags.assign(n_bits, false);

  std::vector<int> b(n_bits + 1, 0);  // b[k] for k = 1..n_bits
  for (int k = n_bits; k >= 1; --k) {
    // Feedback rotation from the already-measured lower-significance bits.
    double omega_k = 0.0;
    for (int l = k + 1; l <= n_bits; ++l) {
      omega_k -= 2.0 * M_PI * b[l] * std::pow(2.0, -(l - k + 1));
    }
    StateVector s = new_zero_state(shape);
    s.amps.segment(0, d) = prep.entries.col(0);  // ancilla |0>, system prep|0>
    s = apply_operator(s, had, {0});
    s = apply_operator(s, controlled_power(m, k - 1), {0, 1});
    Mat fb(2, 2);
    fb << 1, 0, 0, std::exp(Cx(0, omega_k));
    s = apply_operator(s, make_unitary(std::move(fb)), {0});
    s = apply_operator(s, had, {0});

    double p1 = 0.0;
    for (int i = 0; i < d; ++i) p1 += std::norm(s.amps(d + i));
    int hits = 0;
    for (int shot = 0; shot < shots_per_bit; ++shot) {
      if (rng.uniform01() < p1) ++hits;
    }
    const int rest = shots_per_bit - hits;
    b[k] = hits > rest ? 1 : 0;
    if (hits == rest) out.tie_flags[k - 1] = true;  // resolved toward 0
    out.bits[k - 1] = b[k];
  }
  double phi = 0.0;
  for (int k = 1; k <= n_bits; ++k) phi += b[k] * std::pow(2.0, -k);
  out.phi = phi;
  return out;
}

double quasienergy_from_phase(double phi, double period, double omega) {
  if (phi < 0.0 || phi >= 1.0) {
    throw std::invalid_argument("quasienergy_from_phase: phi must be in [0,1)");
  }
  return fold_to_bz(-2.0 * M_PI * phi / period, omega);
}

double circular_mean_phase(const std::vector<double>& phis) {
  Cx resultant(0, 0);
  for (double p : phis) resultant += std::exp(Cx(0, 2.0 * M_PI * p));
  double mean = std::arg(resultant) / (2.0 * M_PI);
  if (mean < 0.0) mean += 1.0;
  if (mean >= 1.0) mean -= 1.0;
  return mean;
}

double circular_sigma_energy(const std::vector<double>& phis, double omega) {
  if (phis.empty()) return 0.0;
  Cx resultant(0, 0);
  for (double p : phis) resultant += std::exp(Cx(0, 2.0 * M_PI * p));
  double r = std::abs(resultant) / static_cast<double>(phis.size());
  r = std::clamp(r, 1e-15, 1.0);
  const double sigma_circ = std::sqrt(std::max(0.0, -2.0 * std::log(r)));
  return sigma_circ * omega / (2.0 * M_PI);
}

std::vector<FloquetSolution> solve_band_fz1(const FourierHamiltonian& h,
                                            const SolverConfig& config) {
  const MonodromyOperator m = trotter_monodromy(h, config.trotter_steps);
  const QuasiEnergySpectrum oracle = exact_quasienergies(h);
  const ParameterizedCircuit ansatz = build_u3_ansatz();
  const bool sampled = config.shots > 0;

  OptimizerConfig opt = config.optimizer;
  opt.restarts = config.restarts;
  RngStream rng(config.seed);

  DeflationSet deflation;
  deflation.lambda = config.lambda;

  std::vector<FloquetSolution> solutions;
  for (int alpha = 0; alpha < h.dim_r; ++alpha) {
    const StochasticLoss loss = [&](const std::vector<double>& th, RngStream& r) {
      return loss_fz1(th, m, deflation, config.shots, r);
    };
    const ShiftRule rule = fz1_shift_rule(m, deflation, config.shots);
    OptimizeResult res = maximize(loss, ansatz.n_params, opt, rng, sampled, &rule,
                                  GradScheme::ParameterShift);

    FloquetSolution sol;
    sol.theta_star = res.theta;
    sol.loss_star = res.loss;
    sol.converged = res.loss >= 0.9;

    const DenseOperator prep = floq::bind(ansatz, res.theta);
    sol.state = prep.entries.col(0);

    std::vector<double> phis;
    sol.epsilon_repeats.reserve(config.iqpe_repeats);
    for (int r = 0; r < config.iqpe_repeats; ++r) {
      RngStream sub = rng.fork();
      const IqpeResult iq = iqpe(prep, m, config.iqpe_bits, config.iqpe_shots, sub);
      phis.push_back(iq.phi);
      sol.epsilon_repeats.push_back(quasienergy_from_phase(iq.phi, m.period, h.omega));
    }
    sol.epsilon = quasienergy_from_phase(circular_mean_phase(phis), m.period, h.omega);
    sol.epsilon_sigma = circular_sigma_energy(phis, h.omega);
    sol.fidelity_vs_oracle = mode_fidelity(sol.state, oracle).second;

    add_deflated(deflation, ansatz, res.theta);
    solutions.push_back(std::move(sol));
  }

  std::sort(solutions.begin(), solutions.end(),
            [](const FloquetSolution& a, const FloquetSolution& b) {
              return a.epsilon < b.epsilon;
            });
  for (int i = 0; i < static_cast<int>(solutions.size()); ++i) solutions[i].branch = i;
  return solutions;
}

}  // namespace floq

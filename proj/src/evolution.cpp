#include "floq/evolution.hpp"

namespace floq {

MonodromyOperator trotter_monodromy(const FourierHamiltonian& h, int steps) {
  if (steps < 1) throw std::invalid_argument("trotter_monodromy: steps must be >= 1");
  const double period = h.period();
  const double dt = period / steps;
  Mat u = Mat::Identity(h.dim_r, h.dim_r);
  for (int k = 1; k <= steps; ++k) {
    const double tk = (k - 0.5) * dt;
    const DenseOperator slice = matrix_exponential(evaluate_at_time(h, tk), -dt);
    u = slice.entries * u;  // latest time leftmost
  }
  return {make_unitary(std::move(u)), steps, period};
}

DenseOperator controlled_power(const MonodromyOperator& m, int p) {
  if (p < 0) throw std::invalid_argument("controlled_power: power exponent must be >= 0");
  Mat pw = m.u_t.entries;
  for (int i = 0; i < p; ++i) pw = pw * pw;  // (U_T)^(2^p)
  const int d = m.u_t.dim;
  Mat c = Mat::Identity(2 * d, 2 * d);
  c.block(d, d, d, d) = pw;
  return make_unitary(std::move(c));
}

}  // namespace floq

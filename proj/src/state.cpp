#include "floq/state.hpp"

#include <unordered_set>

namespace floq {

StateVector new_zero_state(const RegisterShape& shape) {
  shape.validate();
  Vec amps = Vec::Zero(shape.total_dim());
  amps(0) = 1.0;
  return {shape, std::move(amps)};
}

StateVector apply_operator(const StateVector& state, const DenseOperator& op,
                           const std::vector<int>& targets) {
  const auto& dims = state.shape.dims;
  const int n_sub = static_cast<int>(dims.size());

  std::unordered_set<int> seen;
  int op_dim = 1;
  for (int t : targets) {
    if (t < 0 || t >= n_sub) throw std::invalid_argument("apply_operator: target out of range");
    if (!seen.insert(t).second) throw std::invalid_argument("apply_operator: repeated target");
    op_dim *= dims[t];
  }
  if (op_dim != op.dim) throw std::invalid_argument("apply_operator: dimension mismatch");

  // Strides of each subsystem digit in the flat index (dims[0] slowest).
  std::vector<long> stride(n_sub, 1);
  for (int k = n_sub - 2; k >= 0; --k) stride[k] = stride[k + 1] * dims[k + 1];

  // Operator digit order follows `targets`: targets[0] is its slowest digit.
  const int n_t = static_cast<int>(targets.size());
  std::vector<long> op_stride(n_t, 1);
  for (int k = n_t - 2; k >= 0; --k) op_stride[k] = op_stride[k + 1] * dims[targets[k + 1]];

  // Enumerate the untouched digits; for each assignment, gather the target
  // block, multiply by op, scatter back.
  std::vector<int> rest;
  for (int s = 0; s < n_sub; ++s) {
    if (!seen.count(s)) rest.push_back(s);
  }
  long n_rest = 1;
  for (int s : rest) n_rest *= dims[s];

  // Flat offsets of every operator row index within a block.
  std::vector<long> row_offset(op.dim, 0);
  for (int r = 0; r < op.dim; ++r) {
    long rem = r, off = 0;
    for (int k = 0; k < n_t; ++k) {
      const long digit = rem / op_stride[k];
      rem %= op_stride[k];
      off += digit * stride[targets[k]];
    }
    row_offset[r] = off;
  }

  Vec out = Vec::Zero(state.amps.size());
  Vec block(op.dim);
  for (long rest_idx = 0; rest_idx < n_rest; ++rest_idx) {
    long rem = rest_idx, base = 0;
    for (int k = 0; k < static_cast<int>(rest.size()); ++k) {
      long blk = 1;
      for (int k2 = k + 1; k2 < static_cast<int>(rest.size()); ++k2) blk *= dims[rest[k2]];
      const long digit = rem / blk;
      rem %= blk;
      base += digit * stride[rest[k]];
    }
    for (int r = 0; r < op.dim; ++r) block(r) = state.amps(base + row_offset[r]);
    Vec res = op.entries * block;
    for (int r = 0; r < op.dim; ++r) out(base + row_offset[r]) = res(r);
  }

  StateVector next{state.shape, std::move(out)};
  if (op.tag == OpTag::Unitary && std::abs(next.norm() - 1.0) > kNormTol) {
    throw std::runtime_error("apply_operator: unitary application lost norm");
  }
  return next;
}

double expectation(const StateVector& state, const DenseOperator& obs) {
  if (obs.tag != OpTag::Hermitian) {
    throw std::invalid_argument("expectation: observable must be hermitian");
  }
  if (obs.dim != state.shape.total_dim()) {
    throw std::invalid_argument("expectation: dimension mismatch");
  }
  const Cx val = state.amps.dot(obs.entries * state.amps);
  if (std::abs(val.imag()) > 1e-10) {
    throw std::runtime_error("expectation: imaginary residue exceeds tolerance");
  }
  return val.real();
}

double projector_probability(const StateVector& state, int flat_index) {
  if (flat_index < 0 || flat_index >= state.amps.size()) {
    throw std::invalid_argument("projector_probability: index out of range");
  }
  return std::norm(state.amps(flat_index));
}

double overlap_sq(const Vec& a, const Vec& b) {
  return std::norm(a.dot(b));
}

}  // namespace floq

#include "floq/sampling.hpp"

#include <cmath>
#include <cstring>
#include <unordered_map>
#include <vector>

#include <Eigen/Eigenvalues>

namespace floq {

SampleResult sample_projector(const StateVector& state, int flat_index,
                              int shots, RngStream& rng) {
  if (shots < 1) throw std::invalid_argument("sample_projector: shots must be >= 1");
  const double p = projector_probability(state, flat_index);
  long hits = 0;
  for (int s = 0; s < shots; ++s) {
    if (rng.uniform01() < p) ++hits;
  }
  const double est = static_cast<double>(hits) / shots;
  return {est, std::sqrt(est * (1.0 - est) / shots)};
}

namespace {

struct SpectralDecomp {
  std::vector<double> evals;
  Mat evecs;
};

// FNV-1a over the raw matrix bytes; collisions are broken by a full compare.
std::uint64_t bytes_hash(const Mat& m) {
  std::uint64_t h = 1469598103934665603ull;
  const auto* p = reinterpret_cast<const unsigned char*>(m.data());
  const std::size_t n = sizeof(Cx) * static_cast<std::size_t>(m.size());
  for (std::size_t i = 0; i < n; ++i) {
    h ^= p[i];
    h *= 1099511628211ull;
  }
  return h;
}

const SpectralDecomp& cached_decomposition(const DenseOperator& obs) {
  thread_local std::unordered_map<std::uint64_t, std::pair<Mat, SpectralDecomp>> cache;
  const std::uint64_t key = bytes_hash(obs.entries);
  auto it = cache.find(key);
  const bool hit = it != cache.end() && it->second.first.rows() == obs.entries.rows() &&
                   (it->second.first.array() == obs.entries.array()).all();
  if (!hit) {
    Eigen::SelfAdjointEigenSolver<Mat> es(obs.entries);
    SpectralDecomp d;
    d.evals.assign(es.eigenvalues().data(), es.eigenvalues().data() + obs.dim);
    d.evecs = es.eigenvectors();
    it = cache.insert_or_assign(key, std::make_pair(obs.entries, std::move(d))).first;
  }
  return it->second.second;
}

}  // namespace

SampleResult sample_observable(const StateVector& state,
                               const DenseOperator& obs, int shots,
                               RngStream& rng) {
  if (obs.tag != OpTag::Hermitian) {
    throw std::invalid_argument("sample_observable: observable must be hermitian");
  }
  if (shots == 0) return {expectation(state, obs), 0.0};
  if (shots < 0) throw std::invalid_argument("sample_observable: negative shots");

  const SpectralDecomp& d = cached_decomposition(obs);
  const int dim = obs.dim;

  // Born probabilities and their cumulative sums.
  std::vector<double> cum(dim);
  double acc = 0.0;
  for (int i = 0; i < dim; ++i) {
    acc += std::norm(d.evecs.col(i).dot(state.amps));
    cum[i] = acc;
  }
  // acc == 1 up to rounding; draws use inverse CDF so shared uniforms between
  // cloned streams give maximally coupled outcomes (common random numbers).
  double sum = 0.0, sum_sq = 0.0;
  for (int s = 0; s < shots; ++s) {
    const double u = rng.uniform01() * acc;
    int lo = 0;
    while (lo < dim - 1 && cum[lo] <= u) ++lo;
    const double x = d.evals[lo];
    sum += x;
    sum_sq += x * x;
  }
  const double mean = sum / shots;
  const double var = std::max(0.0, sum_sq / shots - mean * mean);
  const double se = shots > 1 ? std::sqrt(var / shots) : std::sqrt(var);
  return {mean, se};
}

}  // namespace floq

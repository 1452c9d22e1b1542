#include "floq/optimizer.hpp"

#include <cmath>

namespace floq {

namespace {

constexpr double kArmijoC = 1e-4;
constexpr double kArmijoShrink = 0.5;
constexpr int kArmijoMaxBacktracks = 40;
// Wider stencil for sampled differences: residual coupled noise scales like
// sqrt(|dL|*h)/h, so h of a few percent of a radian beats the exact-mode step.
constexpr double kSampledFdStep = 0.05;
constexpr int kSampledStallLimit = 3;
// Once consecutive accepted moves displace the parameters by less than this,
// the iterate sits inside the shot-noise ball and further rounds buy nothing.
constexpr double kSampledMinStep = 1e-3;

double norm2(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace

std::vector<double> gradient(const StochasticLoss& loss,
                             const std::vector<double>& theta, GradScheme scheme,
                             const OptimizerConfig& cfg, const ShiftRule* rule,
                             bool sampled, RngStream& rng) {
  cfg.validate();
  const int n = static_cast<int>(theta.size());
  std::vector<double> g(n, 0.0);

  if (scheme == GradScheme::ParameterShift) {
    if (rule == nullptr || !rule->eval) {
      throw std::invalid_argument("gradient: parameter-shift requires a shift rule");
    }
    for (int i = 0; i < n; ++i) {
      if (i >= static_cast<int>(rule->eligible.size()) || !rule->eligible[i]) {
        throw std::invalid_argument("gradient: parameter-shift requested for ineligible parameter");
      }
      double gi = 0.0;
      for (int slot = 0; slot < rule->n_slots; ++slot) {
        RngStream pair = rng.fork();
        RngStream sp = pair.clone(), sm = pair.clone();
        const double lp = rule->eval(theta, i, slot, M_PI_2, sp);
        const double lm = rule->eval(theta, i, slot, -M_PI_2, sm);
        gi += 0.5 * (lp - lm);
      }
      g[i] = gi;
    }
    return g;
  }

  const double h = sampled ? std::max(cfg.fd_step, kSampledFdStep) : cfg.fd_step;
  std::vector<double> probe = theta;
  for (int i = 0; i < n; ++i) {
    RngStream pair = rng.fork();
    RngStream sp = pair.clone(), sm = pair.clone();
    probe[i] = theta[i] + h;
    const double lp = loss(probe, sp);
    probe[i] = theta[i] - h;
    const double lm = loss(probe, sm);
    probe[i] = theta[i];
    g[i] = (lp - lm) / (2.0 * h);
  }
  return g;
}

namespace {

struct SingleRun {
  std::vector<double> theta;
  double loss = 0.0;
  int iterations = 0;
  double grad_norm = 0.0;
  bool converged = false;
};

SingleRun ascend(const StochasticLoss& loss, std::vector<double> theta,
                 const OptimizerConfig& cfg, RngStream& rng, bool sampled,
                 const ShiftRule* rule, GradScheme scheme) {
  const int n = static_cast<int>(theta.size());
  RngStream eval_rng = rng.fork();
  double f = loss(theta, eval_rng);

  std::vector<double> g = gradient(loss, theta, scheme, cfg, rule, sampled, rng);
  std::vector<double> d = g;
  int stalls = 0;
  double alpha0 = 1.0;  // warm-started initial backtracking step (sampled mode)
  SingleRun out;

  int iter = 0;
  for (; iter < cfg.max_iters; ++iter) {
    const double gnorm = norm2(g);
    out.grad_norm = gnorm;
    if (!sampled && gnorm <= cfg.grad_norm_tol) {
      out.converged = true;
      break;
    }
    double dg = dot(d, g);
    if (dg <= 0.0) {
      d = g;  // CG direction lost ascent; restart along the gradient
      dg = dot(g, g);
      if (dg == 0.0) break;
    }

    std::vector<double> cand(n);
    bool moved = false;
    if (!sampled) {
      double alpha = 1.0;
      for (int b = 0; b < kArmijoMaxBacktracks; ++b) {
        for (int i = 0; i < n; ++i) cand[i] = theta[i] + alpha * d[i];
        RngStream s = rng.fork();
        const double fc = loss(cand, s);
        if (fc >= f + kArmijoC * alpha * dg) {
          theta = cand;
          f = fc;
          moved = true;
          break;
        }
        alpha *= kArmijoShrink;
      }
    } else {
      // Noisy values: same Armijo backtracking, but the base and every trial
      // are evaluated under clones of one per-iteration stream so the
      // comparisons see common random numbers and the noise mostly cancels.
      RngStream common = rng.fork();
      RngStream sb = common.clone();
      const double fb = loss(theta, sb);
      double alpha = alpha0;
      for (int b = 0; b < kArmijoMaxBacktracks; ++b) {
        for (int i = 0; i < n; ++i) cand[i] = theta[i] + alpha * d[i];
        RngStream st = common.clone();
        const double fc = loss(cand, st);
        if (fc >= fb + kArmijoC * alpha * dg) {
          theta = cand;
          f = fc;
          moved = true;
          if (alpha * norm2(d) < kSampledMinStep) {
            ++stalls;
          } else {
            stalls = 0;
          }
          alpha0 = std::min(1.0, 2.0 * alpha);
          break;
        }
        alpha *= kArmijoShrink;
      }
      if (!moved) ++stalls;
      if (stalls >= kSampledStallLimit) break;
    }
    if (!moved && !sampled) break;  // line search exhausted: local optimum

    std::vector<double> g_new = gradient(loss, theta, scheme, cfg, rule, sampled, rng);
    // Polak-Ribiere+ conjugacy with reset on non-positive beta.
    const double denom = dot(g, g);
    double beta = 0.0;
    if (denom > 0.0) {
      double num = 0.0;
      for (int i = 0; i < n; ++i) num += g_new[i] * (g_new[i] - g[i]);
      beta = std::max(0.0, num / denom);
    }
    for (int i = 0; i < n; ++i) d[i] = g_new[i] + beta * d[i];
    g = std::move(g_new);
  }

  out.theta = std::move(theta);
  out.loss = f;
  out.iterations = iter;
  return out;
}

}  // namespace

OptimizeResult maximize_from(const StochasticLoss& loss,
                             const std::vector<double>& theta0,
                             const OptimizerConfig& cfg, RngStream& rng,
                             bool sampled, const ShiftRule* rule,
                             GradScheme scheme) {
  cfg.validate();
  SingleRun run = ascend(loss, theta0, cfg, rng, sampled, rule, scheme);
  OptimizeResult res;
  res.theta = std::move(run.theta);
  res.loss = run.loss;
  res.diag = {0, run.iterations, run.grad_norm, run.converged};
  return res;
}

OptimizeResult maximize(const StochasticLoss& loss, int n_params,
                        const OptimizerConfig& cfg, RngStream& rng, bool sampled,
                        const ShiftRule* rule, GradScheme scheme) {
  cfg.validate();
  OptimizeResult best;
  bool have = false;
  // One comparison stream keeps the cross-restart ranking fair under noise.
  RngStream rank_rng = rng.fork();
  for (int r = 0; r < cfg.restarts; ++r) {
    RngStream init = rng.fork();
    std::vector<double> theta0(n_params);
    for (double& x : theta0) x = 2.0 * M_PI * init.uniform01();
    SingleRun run = ascend(loss, std::move(theta0), cfg, rng, sampled, rule, scheme);

    double score = run.loss;
    if (sampled) {
      RngStream s = rank_rng.clone();
      score = loss(run.theta, s);
    }
    if (!have || score > best.loss) {
      have = true;
      best.theta = std::move(run.theta);
      best.loss = score;
      best.diag = {r, run.iterations, run.grad_norm, run.converged};
    }
  }
  return best;
}

}  // namespace floq

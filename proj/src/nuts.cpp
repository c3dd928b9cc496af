#include "gpbo/nuts.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "gpbo/errors.hpp"
#include "gpbo/gp.hpp"

namespace gpbo {

namespace {

constexpr double kDivergenceThreshold = 1000.0;
constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double joint_density(const LeapfrogState& state) {
  if (!state.finite) return kNegInf;
  return state.log_density - 0.5 * state.momentum.squaredNorm();
}

bool no_uturn(const Eigen::VectorXd& q_minus, const Eigen::VectorXd& q_plus,
              const Eigen::VectorXd& r_minus, const Eigen::VectorXd& r_plus) {
  const Eigen::VectorXd span = q_plus - q_minus;
  return span.dot(r_minus) >= 0.0 && span.dot(r_plus) >= 0.0;
}

struct Subtree {
  LeapfrogState minus;  // backwards-most state
  LeapfrogState plus;   // forwards-most state
  Eigen::VectorXd proposal;
  Eigen::VectorXd proposal_gradient;
  double proposal_log_density = 0.0;
  double valid_leaves = 0.0;  // slice-valid leaf count
  bool keep_going = true;
  bool divergent = false;
  double alpha_sum = 0.0;  // accumulated min(1, exp(joint - joint0))
  int leaf_count = 0;
};

Subtree build_leaf(const LeapfrogState& from, double log_u, int direction, double step_size,
                   double joint0, const LogDensityGradient& target) {
  Subtree tree;
  LeapfrogState next =
      leapfrog_step(from.position, from.momentum, from.gradient, direction * step_size, target);
  const double joint = joint_density(next);

  tree.valid_leaves = (log_u <= joint) ? 1.0 : 0.0;
  tree.divergent = !(log_u < joint + kDivergenceThreshold);
  tree.keep_going = !tree.divergent;
  const double delta = joint - joint0;
  tree.alpha_sum = delta >= 0.0 ? 1.0 : std::exp(delta);
  tree.leaf_count = 1;

  tree.proposal = next.position;
  tree.proposal_gradient = next.gradient;
  tree.proposal_log_density = next.log_density;
  tree.minus = next;
  tree.plus = std::move(next);
  return tree;
}

Subtree build_tree(const LeapfrogState& from, double log_u, int direction, int depth,
                   double step_size, double joint0, const LogDensityGradient& target,
                   RngStream& rng) {
  if (depth == 0) return build_leaf(from, log_u, direction, step_size, joint0, target);

  Subtree first = build_tree(from, log_u, direction, depth - 1, step_size, joint0, target, rng);
  if (!first.keep_going) return first;

  const LeapfrogState& grow_from = (direction == -1) ? first.minus : first.plus;
  Subtree second = build_tree(grow_from, log_u, direction, depth - 1, step_size, joint0, target, rng);

  Subtree merged;
  merged.minus = (direction == -1) ? second.minus : first.minus;
  merged.plus = (direction == -1) ? first.plus : second.plus;

  const double total = first.valid_leaves + second.valid_leaves;
  merged.proposal = first.proposal;
  merged.proposal_gradient = first.proposal_gradient;
  merged.proposal_log_density = first.proposal_log_density;
  if (second.valid_leaves > 0.0 && rng.uniform() < second.valid_leaves / total) {
    merged.proposal = second.proposal;
    merged.proposal_gradient = second.proposal_gradient;
    merged.proposal_log_density = second.proposal_log_density;
  }

  merged.valid_leaves = total;
  merged.keep_going = second.keep_going && no_uturn(merged.minus.position, merged.plus.position,
                                                    merged.minus.momentum, merged.plus.momentum);
  merged.divergent = first.divergent || second.divergent;
  merged.alpha_sum = first.alpha_sum + second.alpha_sum;
  merged.leaf_count = first.leaf_count + second.leaf_count;
  return merged;
}

// Step-size initialisation: double/halve until the one-step acceptance ratio
// crosses 1/2.
double find_reasonable_epsilon(const Eigen::VectorXd& position, double log_density,
                               const Eigen::VectorXd& gradient, const LogDensityGradient& target,
                               RngStream& rng) {
  const auto dim = position.size();
  Eigen::VectorXd momentum(dim);
  for (Eigen::Index k = 0; k < dim; ++k) momentum[k] = rng.normal();
  const double joint0 = log_density - 0.5 * momentum.squaredNorm();

  double epsilon = 1.0;
  auto log_ratio_at = [&](double eps) {
    const LeapfrogState next = leapfrog_step(position, momentum, gradient, eps, target);
    return joint_density(next) - joint0;
  };

  double log_ratio = log_ratio_at(epsilon);
  const double direction = (log_ratio > std::log(0.5)) ? 1.0 : -1.0;
  for (int i = 0; i < 100; ++i) {
    if (!(direction * log_ratio > -direction * std::log(2.0))) break;
    epsilon *= std::pow(2.0, direction);
    if (epsilon > 1e7 || epsilon < 1e-10) break;
    log_ratio = log_ratio_at(epsilon);
  }
  return epsilon;
}

}  // namespace

void SamplerConfig::validate() const {
  if (warmup < 0) throw std::invalid_argument("SamplerConfig: warmup must be >= 0");
  if (draws < 1) throw std::invalid_argument("SamplerConfig: draws must be >= 1");
  if (thin < 1) throw std::invalid_argument("SamplerConfig: thin must be >= 1");
  if (draws % thin != 0) throw std::invalid_argument("SamplerConfig: draws must be divisible by thin");
  if (!(target_accept > 0.0 && target_accept < 1.0)) {
    throw std::invalid_argument("SamplerConfig: target_accept must lie in (0, 1)");
  }
  if (max_tree_depth < 0) throw std::invalid_argument("SamplerConfig: max_tree_depth must be >= 0");
}

LeapfrogState leapfrog_step(const Eigen::VectorXd& position, const Eigen::VectorXd& momentum,
                            const Eigen::VectorXd& gradient, double step_size,
                            const LogDensityGradient& target) {
  LeapfrogState out;
  const Eigen::VectorXd half_kicked = momentum + 0.5 * step_size * gradient;
  out.position = position + step_size * half_kicked;
  out.gradient.resize(position.size());
  out.log_density = target(out.position, out.gradient);
  if (!std::isfinite(out.log_density) || !out.gradient.allFinite()) {
    out.momentum = half_kicked;
    out.log_density = kNegInf;
    out.gradient.setZero();
    out.finite = false;
    return out;
  }
  out.momentum = half_kicked + 0.5 * step_size * out.gradient;
  out.finite = true;
  return out;
}

TransitionResult nuts_transition(const Eigen::VectorXd& position, double log_density,
                                 const Eigen::VectorXd& gradient, double step_size,
                                 int max_tree_depth, const LogDensityGradient& target,
                                 RngStream& rng) {
  const auto dim = position.size();
  LeapfrogState current;
  current.position = position;
  current.gradient = gradient;
  current.log_density = log_density;
  current.momentum.resize(dim);
  for (Eigen::Index k = 0; k < dim; ++k) current.momentum[k] = rng.normal();
  current.finite = std::isfinite(log_density);

  const double joint0 = joint_density(current);
  // Slice variable in log space: log u = joint0 + log U, U ~ Uniform(0, 1].
  const double log_u = joint0 + std::log(1.0 - rng.uniform());

  LeapfrogState backward = current;
  LeapfrogState forward = current;
  TransitionResult result;
  result.position = position;
  result.gradient = gradient;
  result.log_density = log_density;

  double valid_leaves = 1.0;
  bool keep_going = true;
  double alpha_sum = 0.0;
  int leaf_count = 0;
  int depth = 0;

  while (keep_going && depth <= max_tree_depth) {
    const int direction = (rng.uniform() < 0.5) ? -1 : 1;
    Subtree subtree = (direction == -1)
                          ? build_tree(backward, log_u, direction, depth, step_size, joint0, target, rng)
                          : build_tree(forward, log_u, direction, depth, step_size, joint0, target, rng);
    if (direction == -1) {
      backward = subtree.minus;
    } else {
      forward = subtree.plus;
    }

    result.divergent = result.divergent || subtree.divergent;
    alpha_sum += subtree.alpha_sum;
    leaf_count += subtree.leaf_count;

    if (subtree.keep_going && subtree.valid_leaves > 0.0) {
      if (rng.uniform() < subtree.valid_leaves / valid_leaves) {
        result.position = subtree.proposal;
        result.gradient = subtree.proposal_gradient;
        result.log_density = subtree.proposal_log_density;
      }
    }
    valid_leaves += subtree.valid_leaves;
    keep_going = subtree.keep_going && no_uturn(backward.position, forward.position,
                                                backward.momentum, forward.momentum);
    ++depth;
  }

  result.accept_stat = leaf_count > 0 ? alpha_sum / leaf_count : 0.0;
  result.depth = depth;
  return result;
}

NutsResult nuts_sample(const LogDensityGradient& target, const Eigen::VectorXd& initial,
                       const SamplerConfig& cfg) {
  cfg.validate();
  const auto dim = initial.size();
  if (dim < 1) throw std::invalid_argument("nuts_sample: empty initial position");

  Eigen::VectorXd gradient(dim);
  double log_density = target(initial, gradient);
  if (!std::isfinite(log_density) || !gradient.allFinite()) {
    throw InferenceError("nuts_sample: non-finite target at the initial point");
  }

  RngStream rng(cfg.seed);
  Eigen::VectorXd position = initial;

  double step_size = find_reasonable_epsilon(position, log_density, gradient, target, rng);

  // Dual averaging (gamma 0.05, t0 10, kappa 0.75) towards target_accept.
  const double mu = std::log(10.0 * step_size);
  const double gamma = 0.05;
  const double t0 = 10.0;
  const double kappa = 0.75;
  double h_bar = 0.0;
  double log_step_bar = 0.0;

  NutsResult out;
  Eigen::MatrixXd post_warmup(cfg.draws, dim);
  double accept_sum = 0.0;

  const int total = cfg.warmup + cfg.draws;
  for (int m = 1; m <= total; ++m) {
    TransitionResult tr =
        nuts_transition(position, log_density, gradient, step_size, cfg.max_tree_depth, target, rng);
    position = tr.position;
    gradient = tr.gradient;
    log_density = tr.log_density;

    if (m <= cfg.warmup) {
      const double frac = 1.0 / (m + t0);
      h_bar = (1.0 - frac) * h_bar + frac * (cfg.target_accept - tr.accept_stat);
      const double log_step = mu - std::sqrt(static_cast<double>(m)) / gamma * h_bar;
      const double weight = std::pow(static_cast<double>(m), -kappa);
      log_step_bar = weight * log_step + (1.0 - weight) * log_step_bar;
      step_size = std::exp(log_step);
      out.diagnostics.warmup_divergences += tr.divergent ? 1 : 0;
      if (m == cfg.warmup) step_size = std::exp(log_step_bar);  // freeze adaptation
    } else {
      post_warmup.row(m - cfg.warmup - 1) = position.transpose();
      accept_sum += tr.accept_stat;
      out.diagnostics.divergences += tr.divergent ? 1 : 0;
    }
  }

  const int kept = cfg.draws / cfg.thin;
  out.draws.resize(kept, dim);
  for (int i = 0; i < kept; ++i) out.draws.row(i) = post_warmup.row((i + 1) * cfg.thin - 1);

  out.diagnostics.mean_accept_stat = accept_sum / cfg.draws;
  out.diagnostics.adapted_step_size = step_size;

  if (out.diagnostics.divergences > 0.2 * cfg.draws) {
    throw InferenceError(
        "nuts_sample: divergence fraction above 20% (divergences=" +
        std::to_string(out.diagnostics.divergences) + "/" + std::to_string(cfg.draws) +
        ", step_size=" + std::to_string(step_size) +
        ", mean_accept=" + std::to_string(out.diagnostics.mean_accept_stat) + ")");
  }
  return out;
}

PosteriorDraws sample_posterior(const Dataset& data, const PriorSet& priors,
                                const SamplerConfig& cfg, double noise_variance) {
  const int dim = 1 + data.dim();

  // Unnormalised log posterior over log-hyperparameters; an unfactorizable
  // kernel matrix marks the region untraversable rather than erroring.
  auto target = [&data, &priors, noise_variance](const Eigen::VectorXd& log_hp,
                                                 Eigen::VectorXd& grad) -> double {
    try {
      const auto lml = log_marginal_likelihood(data, hyperparameters_from_log(log_hp, noise_variance));
      grad = lml.gradient + log_prior_gradient(log_hp, priors);
      return lml.value + log_prior_density(log_hp, priors);
    } catch (const NumericalError&) {
      grad = Eigen::VectorXd::Zero(log_hp.size());
      return kNegInf;
    }
  };

  Eigen::VectorXd initial(dim);
  initial[0] = priors.output_scale_prior.mu_n;
  for (int k = 1; k < dim; ++k) initial[k] = priors.length_scale_prior.mu_n;

  NutsResult chain = nuts_sample(target, initial, cfg);
  PosteriorDraws out;
  out.draws = chain.draws.array().exp();
  out.diagnostics = chain.diagnostics;
  return out;
}

}  // namespace gpbo

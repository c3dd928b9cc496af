#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>

#include "gpbo/dataset.hpp"
#include "gpbo/priors.hpp"
#include "gpbo/rng.hpp"

namespace gpbo {

// Unnormalised log density with gradient: returns log p(q) and fills the
// gradient. A return of -inf marks an untraversable region (the trajectory
// is flagged divergent, never a hard error).
using LogDensityGradient = std::function<double(const Eigen::VectorXd&, Eigen::VectorXd&)>;

struct SamplerConfig {
  int warmup = 512;
  int draws = 256;
  int thin = 16;  // keep every thin-th post-warmup draw -> M = draws / thin
  double target_accept = 0.8;
  int max_tree_depth = 10;  // doubling levels 0..max_tree_depth; level 0 is one leapfrog
  std::uint64_t seed = 0;   // used directly as the RngStream key

  void validate() const;
};

struct SamplerDiagnostics {
  double mean_accept_stat = 0.0;  // sampling phase average of per-transition accept statistics
  double adapted_step_size = 0.0;
  int divergences = 0;  // sampling-phase transitions containing a divergent leaf
  int warmup_divergences = 0;
};

struct LeapfrogState {
  Eigen::VectorXd position;
  Eigen::VectorXd momentum;
  Eigen::VectorXd gradient;
  double log_density = 0.0;
  bool finite = true;  // false flags a divergent trajectory
};

// One velocity-Verlet step: half-kick, drift, half-kick. `gradient` is the
// log-density gradient at `position`; the returned state carries the gradient
// at the new position.
LeapfrogState leapfrog_step(const Eigen::VectorXd& position, const Eigen::VectorXd& momentum,
                            const Eigen::VectorXd& gradient, double step_size,
                            const LogDensityGradient& target);

struct TransitionResult {
  Eigen::VectorXd position;
  Eigen::VectorXd gradient;
  double log_density = 0.0;
  double accept_stat = 0.0;  // mean Metropolis acceptance over trajectory leaves
  bool divergent = false;
  int depth = 0;  // doublings performed
};

// One No-U-Turn transition: doubling tree construction with slice selection
// among valid leaves, stopped by the U-turn criterion, the depth cap, or a
// leaf whose energy error exceeds 1000 (divergence).
TransitionResult nuts_transition(const Eigen::VectorXd& position, double log_density,
                                 const Eigen::VectorXd& gradient, double step_size,
                                 int max_tree_depth, const LogDensityGradient& target,
                                 RngStream& rng);

struct NutsResult {
  Eigen::MatrixXd draws;  // kept draws, one row each, unconstrained coordinates
  SamplerDiagnostics diagnostics;
};

// Full schedule: warmup with dual-averaging step-size adaptation towards
// target_accept, then `draws` iterations at the frozen step size, thinned by
// keeping post-warmup indices thin-1, 2*thin-1, ... Deterministic given the
// seed. Throws InferenceError for a non-finite target at the initial point
// or a sampling-phase divergence fraction above 20%.
NutsResult nuts_sample(const LogDensityGradient& target, const Eigen::VectorXd& initial,
                       const SamplerConfig& cfg);

struct PosteriorDraws {
  Eigen::MatrixXd draws;  // M x (1 + d) hyperparameter values, natural scale
  SamplerDiagnostics diagnostics;
};

// Hyperparameter posterior p(theta | data): log prior (in log space) plus the
// GP log marginal likelihood, sampled with NUTS from a chain initialised at
// the prior means and exponentiated to natural scale.
PosteriorDraws sample_posterior(const Dataset& data, const PriorSet& priors,
                                const SamplerConfig& cfg, double noise_variance = 1e-6);

}  // namespace gpbo

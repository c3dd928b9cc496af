#pragma once

#include <Eigen/Dense>

namespace gpbo {

// Log-normal prior for one positive hyperparameter, stored through the
// parameters of the underlying normal. The requested moments are retained
// for audit.
struct LogNormalSpec {
  double mu_n = 0.0;
  double sigma_n = 0.0;
  double target_mean = 1.0;
  double target_std = 0.0;
};

// Moment matching:
//   mu_n    = log(mean) - 1/2 log(std^2/mean^2 + 1)
//   sigma_n = sqrt(log(std^2/mean^2 + 1))
LogNormalSpec lognormal_from_moments(double mean, double std);

struct PriorSet {
  LogNormalSpec output_scale_prior;
  LogNormalSpec length_scale_prior;  // shared across input dimensions

  // Log-normal(mean 10, std 10) on the output-scale and
  // log-normal(mean 0.5, std 0.5) on each length-scale.
  static PriorSet benchmark_default();
};

// Joint log prior over (log output_scale, log length_scales...), evaluated
// directly in unconstrained log space so the change-of-variables Jacobian is
// already folded in: sum of normal log densities of the log-hyperparameters.
double log_prior_density(const Eigen::VectorXd& log_hp, const PriorSet& priors);

// d/du of the above, componentwise -(u - mu_n) / sigma_n^2.
Eigen::VectorXd log_prior_gradient(const Eigen::VectorXd& log_hp, const PriorSet& priors);

}  // namespace gpbo

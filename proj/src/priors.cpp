#include "gpbo/priors.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace gpbo {

LogNormalSpec lognormal_from_moments(double mean, double std) {
  if (!(mean > 0.0)) throw std::domain_error("lognormal_from_moments: mean must be positive");
  if (std < 0.0) throw std::domain_error("lognormal_from_moments: std must be nonnegative");
  const double v = std::log(std * std / (mean * mean) + 1.0);
  LogNormalSpec spec;
  spec.mu_n = std::log(mean) - 0.5 * v;
  spec.sigma_n = std::sqrt(v);
  spec.target_mean = mean;
  spec.target_std = std;
  return spec;
}

PriorSet PriorSet::benchmark_default() {
  PriorSet priors;
  priors.output_scale_prior = lognormal_from_moments(10.0, 10.0);
  priors.length_scale_prior = lognormal_from_moments(0.5, 0.5);
  return priors;
}

namespace {

double normal_log_density(double u, const LogNormalSpec& spec) {
  if (!(spec.sigma_n > 0.0)) {
    throw std::domain_error("log_prior_density: prior has zero spread, density undefined");
  }
  const double zscore = (u - spec.mu_n) / spec.sigma_n;
  return -0.5 * zscore * zscore - std::log(spec.sigma_n) -
         0.5 * std::log(2.0 * std::numbers::pi);
}

}  // namespace

double log_prior_density(const Eigen::VectorXd& log_hp, const PriorSet& priors) {
  if (log_hp.size() < 1) throw std::domain_error("log_prior_density: empty hyperparameter vector");
  double total = normal_log_density(log_hp[0], priors.output_scale_prior);
  for (int k = 1; k < log_hp.size(); ++k) {
    total += normal_log_density(log_hp[k], priors.length_scale_prior);
  }
  return total;
}

Eigen::VectorXd log_prior_gradient(const Eigen::VectorXd& log_hp, const PriorSet& priors) {
  if (log_hp.size() < 1) throw std::domain_error("log_prior_gradient: empty hyperparameter vector");
  Eigen::VectorXd grad(log_hp.size());
  grad[0] = -(log_hp[0] - priors.output_scale_prior.mu_n) /
            (priors.output_scale_prior.sigma_n * priors.output_scale_prior.sigma_n);
  for (int k = 1; k < log_hp.size(); ++k) {
    grad[k] = -(log_hp[k] - priors.length_scale_prior.mu_n) /
              (priors.length_scale_prior.sigma_n * priors.length_scale_prior.sigma_n);
  }
  return grad;
}

}  // namespace gpbo

#pragma once

#include <Eigen/Cholesky>
#include <Eigen/Dense>

#include "gpbo/dataset.hpp"
#include "gpbo/kernel.hpp"

namespace gpbo {

struct PosteriorPrediction {
  Eigen::VectorXd means;      // standardized output scale
  Eigen::VectorXd variances;  // clamped at 0 after round-off
};

// Cholesky factorization of K + noise*I for one (dataset, hyperparameters)
// pair, reusable across many predictions. On factorization failure the
// diagonal jitter escalates through 1e-8, 1e-6, 1e-4 before giving up with
// a NumericalError.
class GpPosteriorFactor {
public:
  GpPosteriorFactor(const Dataset& data, const Hyperparameters& hp);

  [[nodiscard]] PosteriorPrediction predict(const Eigen::MatrixXd& queries_unit) const;
  void predict_one(const Eigen::VectorXd& query_unit, double& mean, double& variance) const;

  [[nodiscard]] double applied_jitter() const noexcept { return jitter_; }
  [[nodiscard]] const Hyperparameters& hyperparameters() const noexcept { return hp_; }

private:
  Eigen::MatrixXd train_inputs_;  // unit-cube copies
  Hyperparameters hp_;
  Eigen::LLT<Eigen::MatrixXd> llt_;
  Eigen::VectorXd alpha_;  // (K + noise I)^-1 z
  double jitter_ = 0.0;
};

// Zero-mean GP predictive equations on standardized outputs:
//   means = K_*^T (K + noise I)^-1 z
//   vars  = k(x, x) - K_*^T (K + noise I)^-1 K_*
PosteriorPrediction gp_posterior(const Dataset& data, const Hyperparameters& hp,
                                 const Eigen::MatrixXd& queries_unit);

struct LogMarginalLikelihood {
  double value = 0.0;
  // Gradient with respect to (log output_scale, log length_scales...).
  Eigen::VectorXd gradient;
};

// value = -1/2 z^T K~^-1 z - 1/2 log det K~ - n/2 log 2pi,  K~ = K + noise I.
LogMarginalLikelihood log_marginal_likelihood(const Dataset& data, const Hyperparameters& hp);

}  // namespace gpbo

#include "gpbo/kernel.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace gpbo {

namespace {
constexpr double kSqrt5 = 2.23606797749978969640917366873;
}

void Hyperparameters::validate(int expected_dim) const {
  if (!(output_scale > 0.0) || !std::isfinite(output_scale)) {
    throw std::domain_error("Hyperparameters: output_scale must be positive and finite");
  }
  if (length_scales.size() == 0) {
    throw std::domain_error("Hyperparameters: at least one length-scale required");
  }
  for (int k = 0; k < length_scales.size(); ++k) {
    if (!(length_scales[k] > 0.0) || !std::isfinite(length_scales[k])) {
      throw std::domain_error("Hyperparameters: length_scales[" + std::to_string(k) +
                              "] must be positive and finite");
    }
  }
  if (!(noise_variance > 0.0)) {
    throw std::domain_error("Hyperparameters: noise_variance must be positive");
  }
  if (expected_dim >= 0 && length_scales.size() != expected_dim) {
    throw std::domain_error("Hyperparameters: expected " + std::to_string(expected_dim) +
                            " length-scales, got " + std::to_string(length_scales.size()));
  }
}

Hyperparameters hyperparameters_from_log(const Eigen::VectorXd& log_hp, double noise_variance) {
  if (log_hp.size() < 2) {
    throw std::invalid_argument("hyperparameters_from_log: need log output-scale plus length-scales");
  }
  Hyperparameters hp;
  hp.output_scale = std::exp(log_hp[0]);
  hp.length_scales = log_hp.tail(log_hp.size() - 1).array().exp();
  hp.noise_variance = noise_variance;
  return hp;
}

namespace {

inline double matern52_from_sqdist(double scaled_sqdist, double output_scale) {
  const double r = std::sqrt(scaled_sqdist);
  const double t = kSqrt5 * r;
  return output_scale * (1.0 + t + (5.0 / 3.0) * scaled_sqdist) * std::exp(-t);
}

}  // namespace

double matern52_ard(const Eigen::VectorXd& x, const Eigen::VectorXd& x_prime,
                    const Hyperparameters& hp) {
  hp.validate(static_cast<int>(x.size()));
  if (x.size() != x_prime.size()) {
    throw std::invalid_argument("matern52_ard: point dimensions differ");
  }
  const double s = ((x - x_prime).array() / hp.length_scales.array()).square().sum();
  return matern52_from_sqdist(s, hp.output_scale);
}

Eigen::MatrixXd kernel_matrix(const Eigen::MatrixXd& X, const Hyperparameters& hp) {
  hp.validate(static_cast<int>(X.cols()));
  const auto n = X.rows();
  Eigen::MatrixXd gram(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    gram(i, i) = hp.output_scale;
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double s =
          ((X.row(i) - X.row(j)).array() / hp.length_scales.transpose().array()).square().sum();
      const double value = matern52_from_sqdist(s, hp.output_scale);
      gram(i, j) = value;
      gram(j, i) = value;
    }
  }
  return gram;
}

Eigen::MatrixXd cross_kernel_matrix(const Eigen::MatrixXd& X, const Eigen::MatrixXd& queries,
                                    const Hyperparameters& hp) {
  hp.validate(static_cast<int>(X.cols()));
  if (queries.cols() != X.cols()) {
    throw std::invalid_argument("cross_kernel_matrix: query dimension mismatch");
  }
  Eigen::MatrixXd cross(X.rows(), queries.rows());
  for (Eigen::Index i = 0; i < X.rows(); ++i) {
    for (Eigen::Index q = 0; q < queries.rows(); ++q) {
      const double s =
          ((X.row(i) - queries.row(q)).array() / hp.length_scales.transpose().array()).square().sum();
      cross(i, q) = matern52_from_sqdist(s, hp.output_scale);
    }
  }
  return cross;
}

}  // namespace gpbo

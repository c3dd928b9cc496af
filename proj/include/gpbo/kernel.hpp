#pragma once

#include <Eigen/Dense>

namespace gpbo {

struct Hyperparameters {
  double output_scale = 1.0;      // kernel variance sigma_f^2
  Eigen::VectorXd length_scales;  // one per input dimension (ARD)
  double noise_variance = 1e-6;   // fixed constant, never fitted or sampled

  // Throws std::domain_error on non-positive values or, when expected_dim
  // is non-negative, on a length-scale count mismatch.
  void validate(int expected_dim = -1) const;
};

// (exp(u_0), exp(u_1..u_d)) with the given fixed noise variance.
Hyperparameters hyperparameters_from_log(const Eigen::VectorXd& log_hp, double noise_variance);

// Matern 5/2 with per-dimension length-scales:
//   r^2 = sum_k ((x_k - x'_k) / l_k)^2
//   k(x, x') = sigma_f^2 (1 + sqrt5 r + 5/3 r^2) exp(-sqrt5 r)
double matern52_ard(const Eigen::VectorXd& x, const Eigen::VectorXd& x_prime,
                    const Hyperparameters& hp);

// Noise-free Gram matrix K(X, X); rows of X are points.
Eigen::MatrixXd kernel_matrix(const Eigen::MatrixXd& X, const Hyperparameters& hp);

// Cross-covariance K(X, Q), one column per query row.
Eigen::MatrixXd cross_kernel_matrix(const Eigen::MatrixXd& X, const Eigen::MatrixXd& queries,
                                    const Hyperparameters& hp);

}  // namespace gpbo

#include "gpbo/gp.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "gpbo/errors.hpp"

namespace gpbo {

namespace {

constexpr double kSqrt5 = 2.23606797749978969640917366873;

// Factor K_noisy (+ escalating jitter) in place; returns the jitter applied.
double cholesky_with_jitter(const Eigen::MatrixXd& k_noisy, Eigen::LLT<Eigen::MatrixXd>& llt) {
  static const std::vector<double> kJitters = {0.0, 1e-8, 1e-6, 1e-4};
  for (double jitter : kJitters) {
    Eigen::MatrixXd attempt = k_noisy;
    if (jitter > 0.0) attempt.diagonal().array() += jitter;
    llt.compute(attempt);
    if (llt.info() == Eigen::Success) return jitter;
  }
  throw NumericalError("Cholesky factorization failed after jitter escalation", kJitters);
}

}  // namespace

GpPosteriorFactor::GpPosteriorFactor(const Dataset& data, const Hyperparameters& hp)
    : train_inputs_(data.inputs_unit()), hp_(hp) {
  hp_.validate(data.dim());
  Eigen::MatrixXd k_noisy = kernel_matrix(train_inputs_, hp_);
  k_noisy.diagonal().array() += hp_.noise_variance;
  jitter_ = cholesky_with_jitter(k_noisy, llt_);
  alpha_ = llt_.solve(data.outputs_std());
}

PosteriorPrediction GpPosteriorFactor::predict(const Eigen::MatrixXd& queries_unit) const {
  const Eigen::MatrixXd cross = cross_kernel_matrix(train_inputs_, queries_unit, hp_);
  PosteriorPrediction out;
  out.means = cross.transpose() * alpha_;
  // var_q = k(x,x) - || L^-1 k_* ||^2; prior variance is the output scale.
  const Eigen::MatrixXd solved = llt_.matrixL().solve(cross);
  out.variances = (hp_.output_scale - solved.colwise().squaredNorm().array()).cwiseMax(0.0);
  return out;
}

void GpPosteriorFactor::predict_one(const Eigen::VectorXd& query_unit, double& mean,
                                    double& variance) const {
  Eigen::VectorXd cross(train_inputs_.rows());
  for (Eigen::Index i = 0; i < train_inputs_.rows(); ++i) {
    const double s = ((train_inputs_.row(i).transpose() - query_unit).array() /
                      hp_.length_scales.array())
                         .square()
                         .sum();
    const double r = std::sqrt(s);
    cross[i] = hp_.output_scale * (1.0 + kSqrt5 * r + (5.0 / 3.0) * s) * std::exp(-kSqrt5 * r);
  }
  mean = cross.dot(alpha_);
  const Eigen::VectorXd solved = llt_.matrixL().solve(cross);
  variance = std::max(0.0, hp_.output_scale - solved.squaredNorm());
}

PosteriorPrediction gp_posterior(const Dataset& data, const Hyperparameters& hp,
                                 const Eigen::MatrixXd& queries_unit) {
  return GpPosteriorFactor(data, hp).predict(queries_unit);
}

LogMarginalLikelihood log_marginal_likelihood(const Dataset& data, const Hyperparameters& hp) {
  hp.validate(data.dim());
  const int n = data.size();
  const int d = data.dim();
  const Eigen::MatrixXd& X = data.inputs_unit();
  const Eigen::VectorXd& z = data.outputs_std();

  // Per-dimension squared differences and the ARD-scaled distance matrix.
  std::vector<Eigen::MatrixXd> sqdiff(d);
  Eigen::MatrixXd scaled_sq = Eigen::MatrixXd::Zero(n, n);
  for (int k = 0; k < d; ++k) {
    Eigen::MatrixXd diff = X.col(k).replicate(1, n) - X.col(k).transpose().replicate(n, 1);
    sqdiff[k] = diff.array().square();
    scaled_sq += sqdiff[k] / (hp.length_scales[k] * hp.length_scales[k]);
  }
  const Eigen::ArrayXXd r = scaled_sq.array().sqrt();
  const Eigen::ArrayXXd decay = (-kSqrt5 * r).exp();
  const Eigen::MatrixXd gram =
      (hp.output_scale * (1.0 + kSqrt5 * r + (5.0 / 3.0) * scaled_sq.array()) * decay).matrix();

  Eigen::MatrixXd k_noisy = gram;
  k_noisy.diagonal().array() += hp.noise_variance;
  Eigen::LLT<Eigen::MatrixXd> llt;
  cholesky_with_jitter(k_noisy, llt);

  const Eigen::VectorXd alpha = llt.solve(z);
  const double log_det = 2.0 * llt.matrixLLT().diagonal().array().log().sum();

  LogMarginalLikelihood out;
  out.value = -0.5 * z.dot(alpha) - 0.5 * log_det -
              0.5 * n * std::log(2.0 * std::numbers::pi);

  // d LML / d theta_j = 1/2 tr((alpha alpha^T - K~^-1) dK/dtheta_j), with
  //   dK/d log sigma_f^2 = K            (noise-free Gram)
  //   dK/d log l_k       = 5/3 sigma_f^2 (1 + sqrt5 r) exp(-sqrt5 r) (dx_k / l_k)^2
  const Eigen::MatrixXd k_inv = llt.solve(Eigen::MatrixXd::Identity(n, n));
  const Eigen::MatrixXd w = alpha * alpha.transpose() - k_inv;

  out.gradient.resize(1 + d);
  out.gradient[0] = 0.5 * w.cwiseProduct(gram).sum();
  const Eigen::ArrayXXd length_weight = (5.0 / 3.0) * hp.output_scale * (1.0 + kSqrt5 * r) * decay;
  for (int k = 0; k < d; ++k) {
    const Eigen::ArrayXXd dk =
        length_weight * sqdiff[k].array() / (hp.length_scales[k] * hp.length_scales[k]);
    out.gradient[1 + k] = 0.5 * (w.array() * dk).sum();
  }
  return out;
}

}  // namespace gpbo

#include "gpbo/mlii.hpp"

#include <limits>
#include <stdexcept>
#include <string>

#include "gpbo/box_lbfgs.hpp"
#include "gpbo/errors.hpp"
#include "gpbo/gp.hpp"
#include "gpbo/rng.hpp"

namespace gpbo {

void MLIIConfig::validate() const {
  if (restarts < 1) throw std::invalid_argument("MLIIConfig: restarts must be >= 1");
  if (!(log_lower < log_upper)) throw std::invalid_argument("MLIIConfig: log box must be non-degenerate");
  if (max_iterations < 1) throw std::invalid_argument("MLIIConfig: max_iterations must be >= 1");
  if (!(gradient_tolerance > 0.0)) throw std::invalid_argument("MLIIConfig: gradient_tolerance must be > 0");
}

Hyperparameters fit_mlii(const Dataset& data, const MLIIConfig& cfg, double noise_variance) {
  cfg.validate();
  const int dim = 1 + data.dim();

  // Negated LML over log-hyperparameters; Cholesky breakdown maps to +inf so
  // the line search backs away instead of aborting the restart.
  auto objective = [&](const Eigen::VectorXd& log_hp, Eigen::VectorXd& grad) -> double {
    try {
      const auto lml = log_marginal_likelihood(data, hyperparameters_from_log(log_hp, noise_variance));
      grad = -lml.gradient;
      return -lml.value;
    } catch (const NumericalError&) {
      grad = Eigen::VectorXd::Zero(log_hp.size());
      return std::numeric_limits<double>::infinity();
    }
  };

  Box box{Eigen::VectorXd::Constant(dim, cfg.log_lower), Eigen::VectorXd::Constant(dim, cfg.log_upper)};
  BoxLbfgsOptions options;
  options.max_iterations = cfg.max_iterations;
  options.gradient_tolerance = cfg.gradient_tolerance;

  // Draw every start before optimizing so the stream layout does not depend
  // on how each restart unfolds.
  RngStream rng(cfg.seed);
  Eigen::MatrixXd starts(cfg.restarts, dim);
  for (int r = 0; r < cfg.restarts; ++r) {
    for (int k = 0; k < dim; ++k) starts(r, k) = rng.uniform(cfg.log_lower, cfg.log_upper);
  }

  bool found = false;
  double best_value = std::numeric_limits<double>::infinity();
  Eigen::VectorXd best_log_hp;
  std::string failures;
  for (int r = 0; r < cfg.restarts; ++r) {
    try {
      const auto res = minimize_box_lbfgs(objective, box, starts.row(r).transpose(), options);
      if (std::isfinite(res.value) && res.value < best_value) {
        best_value = res.value;
        best_log_hp = res.x;
        found = true;
      } else if (!std::isfinite(res.value)) {
        failures += "restart " + std::to_string(r) + ": non-finite objective\n";
      }
    } catch (const std::exception& e) {
      failures += "restart " + std::to_string(r) + ": " + e.what() + "\n";
    }
  }
  if (!found) {
    throw InferenceError("fit_mlii: all restarts failed\n" + failures);
  }
  return hyperparameters_from_log(best_log_hp, noise_variance);
}

}  // namespace gpbo

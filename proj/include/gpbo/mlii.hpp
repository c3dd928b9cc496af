#pragma once

#include <cmath>
#include <cstdint>

#include "gpbo/dataset.hpp"
#include "gpbo/kernel.hpp"

namespace gpbo {

struct MLIIConfig {
  int restarts = 10;
  // Multistart box per log-hyperparameter, hyperparameters in [1e-3, 1e3].
  double log_lower = std::log(1e-3);
  double log_upper = std::log(1e3);
  int max_iterations = 200;
  double gradient_tolerance = 1e-6;
  std::uint64_t seed = 0;  // used directly as the RngStream key

  void validate() const;
};

// Type-II maximum likelihood: maximise the log marginal likelihood over
// log-hyperparameters with `restarts` L-BFGS runs started uniformly in the
// box, keeping the best finisher. No prior enters the objective.
// Throws InferenceError when every restart fails numerically.
Hyperparameters fit_mlii(const Dataset& data, const MLIIConfig& cfg, double noise_variance = 1e-6);

}  // namespace gpbo

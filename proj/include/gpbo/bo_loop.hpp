#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "gpbo/acquisition.hpp"
#include "gpbo/dataset.hpp"
#include "gpbo/mlii.hpp"
#include "gpbo/nuts.hpp"
#include "gpbo/priors.hpp"

namespace gpbo {

enum class Method { mlii, fbo };

[[nodiscard]] std::string method_name(Method method);
[[nodiscard]] Method method_from_name(const std::string& name);

struct HistoryEntry {
  int step = 0;
  Eigen::VectorXd x_raw;
  double observed = 0.0;
  double best_so_far = 0.0;
  double seconds = 0.0;  // wall-clock for this step
};

using History = std::vector<HistoryEntry>;

struct RunConfig {
  Method method = Method::mlii;
  int budget = 30;  // observations after the initial point
  std::uint64_t seed = 0;
  Eigen::VectorXd initial_point;  // raw domain
  Bounds bounds;
  double noise_variance = 1e-6;
  PriorSet priors = PriorSet::benchmark_default();
  SamplerConfig sampler;
  MLIIConfig mlii;
  AcquisitionOptConfig acquisition;
};

using Objective = std::function<double(const Eigen::VectorXd&)>;

// Inference or acquisition failure inside run_bo; carries everything
// observed before the failing step.
class BoRunError : public std::runtime_error {
public:
  BoRunError(int step, Method method, History partial, const std::string& cause)
      : std::runtime_error("run_bo failed at step " + std::to_string(step) + " (" +
                           method_name(method) + "): " + cause),
        step_(step),
        method_(method),
        partial_history_(std::move(partial)) {}

  [[nodiscard]] int step() const noexcept { return step_; }
  [[nodiscard]] Method method() const noexcept { return method_; }
  [[nodiscard]] const History& partial_history() const noexcept { return partial_history_; }

private:
  int step_;
  Method method_;
  History partial_history_;
};

// The sequential loop: evaluate the initial point, then for each step rebuild
// the dataset, infer hyperparameters by the configured method, maximise the
// acquisition, and evaluate the objective at the chosen point. The objective
// is evaluated exactly budget + 1 times. Deterministic given the config.
History run_bo(const Objective& objective, const RunConfig& cfg);

// regret[n] = best-so-far after n evaluations - true_min for n = 0..N,
// clamped at 0. Throws std::domain_error if any observation undercuts
// true_min by more than 1e-12.
Eigen::VectorXd regret(const History& history, double true_min);

}  // namespace gpbo

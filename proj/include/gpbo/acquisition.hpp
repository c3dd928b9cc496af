#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "gpbo/dataset.hpp"
#include "gpbo/gp.hpp"
#include "gpbo/nuts.hpp"

namespace gpbo {

// Minimisation expected improvement. With sigma = sqrt(variance):
//   EI = (best - mean) Phi(z) + sigma phi(z),  z = (best - mean) / sigma,
// and max(best - mean, 0) when sigma < 1e-9.
double expected_improvement(double mean, double variance, double best);

// Everything the acquisition conditions on: the dataset, either a single
// hyperparameter point estimate or M posterior draws (one prefactorized GP
// per draw), and the incumbent minimum of the standardized outputs.
class AcquisitionContext {
public:
  static AcquisitionContext point_estimate(const Dataset& data, const Hyperparameters& hp);
  static AcquisitionContext from_draws(const Dataset& data, const PosteriorDraws& draws,
                                       double noise_variance = 1e-6);

  // Mean of per-component EI values, reduced in fixed order.
  [[nodiscard]] double value(const Eigen::VectorXd& x_unit) const;

  [[nodiscard]] double best_observed() const noexcept { return best_observed_; }
  [[nodiscard]] int dim() const noexcept { return dim_; }
  [[nodiscard]] int num_components() const noexcept { return static_cast<int>(factors_.size()); }
  [[nodiscard]] bool draws_mode() const noexcept { return draws_mode_; }

private:
  AcquisitionContext() = default;

  std::vector<GpPosteriorFactor> factors_;
  double best_observed_ = 0.0;
  int dim_ = 0;
  bool draws_mode_ = false;
};

// Sample-average approximation of the marginalised EI: the plain average of
// per-draw EI values at x. Requires a draws-mode context.
double marginalized_ei(const Eigen::VectorXd& x_unit, const AcquisitionContext& ctx);

struct AcquisitionOptConfig {
  int restarts = 10;
  int candidates_per_restart = 100;
};

// Multistart maximisation over the unit cube: score a shifted-Halton candidate
// set, refine the top `restarts` candidates with projected L-BFGS on central
// finite differences (h = 1e-6), and return the best refined point; ties keep
// the lowest restart index. Deterministic given the seed.
Eigen::VectorXd optimize_acquisition(const AcquisitionContext& ctx, const AcquisitionOptConfig& cfg,
                                     std::uint64_t seed);

}  // namespace gpbo

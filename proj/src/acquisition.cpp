#include "gpbo/acquisition.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "gpbo/box_lbfgs.hpp"
#include "gpbo/errors.hpp"

namespace gpbo {

namespace {

double normal_pdf(double z) {
  return std::exp(-0.5 * z * z) / std::sqrt(2.0 * std::numbers::pi);
}

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

// First d primes as van der Corput bases.
constexpr int kHaltonBases[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};

double van_der_corput(std::uint64_t index, int base) {
  double factor = 1.0;
  double result = 0.0;
  while (index > 0) {
    factor /= base;
    result += factor * static_cast<double>(index % base);
    index /= base;
  }
  return result;
}

}  // namespace

double expected_improvement(double mean, double variance, double best) {
  if (variance < 0.0) throw std::domain_error("expected_improvement: negative variance");
  const double improvement = best - mean;
  const double sigma = std::sqrt(variance);
  if (sigma < 1e-9) return std::max(improvement, 0.0);
  const double z = improvement / sigma;
  return std::max(0.0, improvement * normal_cdf(z) + sigma * normal_pdf(z));
}

AcquisitionContext AcquisitionContext::point_estimate(const Dataset& data,
                                                      const Hyperparameters& hp) {
  AcquisitionContext ctx;
  ctx.factors_.emplace_back(data, hp);
  ctx.best_observed_ = data.outputs_std().minCoeff();
  ctx.dim_ = data.dim();
  ctx.draws_mode_ = false;
  return ctx;
}

AcquisitionContext AcquisitionContext::from_draws(const Dataset& data, const PosteriorDraws& draws,
                                                  double noise_variance) {
  if (draws.draws.rows() < 1) {
    throw std::invalid_argument("AcquisitionContext: need at least one posterior draw");
  }
  if (draws.draws.cols() != 1 + data.dim()) {
    throw std::invalid_argument("AcquisitionContext: draw width must be 1 + input dimension");
  }
  AcquisitionContext ctx;
  ctx.factors_.reserve(draws.draws.rows());
  for (Eigen::Index m = 0; m < draws.draws.rows(); ++m) {
    Hyperparameters hp;
    hp.output_scale = draws.draws(m, 0);
    hp.length_scales = draws.draws.row(m).tail(data.dim()).transpose();
    hp.noise_variance = noise_variance;
    ctx.factors_.emplace_back(data, hp);
  }
  ctx.best_observed_ = data.outputs_std().minCoeff();
  ctx.dim_ = data.dim();
  ctx.draws_mode_ = true;
  return ctx;
}

double AcquisitionContext::value(const Eigen::VectorXd& x_unit) const {
  double total = 0.0;
  double mean = 0.0;
  double variance = 0.0;
  for (const auto& factor : factors_) {
    factor.predict_one(x_unit, mean, variance);
    total += expected_improvement(mean, variance, best_observed_);
  }
  return total / static_cast<double>(factors_.size());
}

double marginalized_ei(const Eigen::VectorXd& x_unit, const AcquisitionContext& ctx) {
  if (!ctx.draws_mode()) {
    throw std::invalid_argument("marginalized_ei: context is not in draws mode");
  }
  return ctx.value(x_unit);
}

Eigen::VectorXd optimize_acquisition(const AcquisitionContext& ctx, const AcquisitionOptConfig& cfg,
                                     std::uint64_t seed) {
  if (cfg.restarts < 1) throw std::invalid_argument("optimize_acquisition: restarts must be >= 1");
  if (cfg.candidates_per_restart < 1) {
    throw std::invalid_argument("optimize_acquisition: candidates_per_restart must be >= 1");
  }
  const int d = ctx.dim();
  if (d > static_cast<int>(std::size(kHaltonBases))) {
    throw std::invalid_argument("optimize_acquisition: dimension exceeds the Halton base table");
  }

  // Seeded quasi-uniform candidates: Halton sequence with a random toroidal
  // shift per dimension.
  RngStream rng(seed);
  Eigen::VectorXd shift(d);
  for (int k = 0; k < d; ++k) shift[k] = rng.uniform();

  const int total = cfg.restarts * cfg.candidates_per_restart;
  Eigen::MatrixXd candidates(total, d);
  Eigen::VectorXd scores(total);
  for (int i = 0; i < total; ++i) {
    for (int k = 0; k < d; ++k) {
      const double u = van_der_corput(static_cast<std::uint64_t>(i) + 1, kHaltonBases[k]) + shift[k];
      candidates(i, k) = u - std::floor(u);
    }
    scores[i] = ctx.value(candidates.row(i).transpose());
  }

  std::vector<int> order(total);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return scores[a] > scores[b]; });

  // Refine the top candidates; finite differences clamp to the cube near the
  // boundary so queries never leave [0, 1]^d.
  constexpr double kFdStep = 1e-6;
  auto negated = [&](const Eigen::VectorXd& x, Eigen::VectorXd& grad) -> double {
    for (int k = 0; k < x.size(); ++k) {
      Eigen::VectorXd hi = x;
      Eigen::VectorXd lo = x;
      hi[k] = std::min(1.0, x[k] + kFdStep);
      lo[k] = std::max(0.0, x[k] - kFdStep);
      grad[k] = (ctx.value(lo) - ctx.value(hi)) / (hi[k] - lo[k]);
    }
    return -ctx.value(x);
  };

  const Box cube{Eigen::VectorXd::Zero(d), Eigen::VectorXd::Ones(d)};
  BoxLbfgsOptions options;
  options.max_iterations = 50;
  options.gradient_tolerance = 1e-7;

  bool found = false;
  double best_neg = std::numeric_limits<double>::infinity();
  Eigen::VectorXd best_x;
  for (int r = 0; r < cfg.restarts; ++r) {
    const Eigen::VectorXd start = candidates.row(order[r]).transpose();
    if (!std::isfinite(scores[order[r]])) continue;
    try {
      const auto res = minimize_box_lbfgs(negated, cube, start, options);
      if (std::isfinite(res.value) && res.value < best_neg) {
        best_neg = res.value;
        best_x = res.x;
        found = true;
      }
    } catch (const std::exception&) {
      // skip this restart; the remaining ones may still succeed
    }
  }
  if (!found) {
    throw AcquisitionError("optimize_acquisition: no restart produced a finite acquisition value");
  }
  return best_x;
}

}  // namespace gpbo

#include "gpbo/bo_loop.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "gpbo/rng.hpp"

namespace gpbo {

namespace {

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

std::string method_name(Method method) { return method == Method::mlii ? "mlii" : "fbo"; }

Method method_from_name(const std::string& name) {
  if (name == "mlii") return Method::mlii;
  if (name == "fbo") return Method::fbo;
  throw std::invalid_argument("unknown method '" + name + "' (expected mlii or fbo)");
}

History run_bo(const Objective& objective, const RunConfig& cfg) {
  cfg.bounds.validate();
  if (cfg.budget < 1) throw std::invalid_argument("run_bo: budget must be >= 1");
  if (cfg.initial_point.size() != cfg.bounds.dim()) {
    throw std::invalid_argument("run_bo: initial point dimension mismatch");
  }

  const int d = cfg.bounds.dim();
  Eigen::MatrixXd inputs(cfg.budget + 1, d);
  Eigen::VectorXd outputs(cfg.budget + 1);

  History history;
  history.reserve(cfg.budget + 1);

  auto step_start = std::chrono::steady_clock::now();
  inputs.row(0) = cfg.initial_point.transpose();
  outputs[0] = objective(cfg.initial_point);
  double best = outputs[0];
  history.push_back({0, cfg.initial_point, outputs[0], best, seconds_since(step_start)});

  for (int n = 1; n <= cfg.budget; ++n) {
    step_start = std::chrono::steady_clock::now();
    Eigen::VectorXd x_unit;
    try {
      // Transforms are rebuilt from scratch: fixed bounds, per-step
      // standardization constants.
      const Dataset data(inputs.topRows(n), outputs.head(n), cfg.bounds);

      AcquisitionContext ctx = [&] {
        if (cfg.method == Method::mlii) {
          MLIIConfig mlii_cfg = cfg.mlii;
          mlii_cfg.seed = derive_stream_key(cfg.seed, n, StreamRole::mlii);
          const Hyperparameters hp = fit_mlii(data, mlii_cfg, cfg.noise_variance);
          return AcquisitionContext::point_estimate(data, hp);
        }
        SamplerConfig sampler_cfg = cfg.sampler;
        sampler_cfg.seed = derive_stream_key(cfg.seed, n, StreamRole::sampler);
        const PosteriorDraws draws = sample_posterior(data, cfg.priors, sampler_cfg, cfg.noise_variance);
        return AcquisitionContext::from_draws(data, draws, cfg.noise_variance);
      }();

      x_unit = optimize_acquisition(ctx, cfg.acquisition,
                                    derive_stream_key(cfg.seed, n, StreamRole::acquisition));
    } catch (const std::exception& e) {
      throw BoRunError(n, cfg.method, history, e.what());
    }

    const Eigen::VectorXd x_raw = denormalize_point(x_unit, cfg.bounds);
    inputs.row(n) = x_raw.transpose();
    outputs[n] = objective(x_raw);
    best = std::min(best, outputs[n]);
    history.push_back({n, x_raw, outputs[n], best, seconds_since(step_start)});
  }
  return history;
}

Eigen::VectorXd regret(const History& history, double true_min) {
  if (history.empty()) throw std::invalid_argument("regret: empty history");
  Eigen::VectorXd out(history.size());
  for (std::size_t i = 0; i < history.size(); ++i) {
    if (history[i].observed < true_min - 1e-12) {
      throw std::domain_error("regret: observation " + std::to_string(history[i].observed) +
                              " undercuts the stated true minimum " + std::to_string(true_min));
    }
    out[static_cast<Eigen::Index>(i)] = std::max(0.0, history[i].best_so_far - true_min);
  }
  return out;
}

}  // namespace gpbo

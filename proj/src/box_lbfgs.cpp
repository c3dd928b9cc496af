#include "gpbo/box_lbfgs.hpp"

#include <cmath>
#include <deque>
#include <stdexcept>

namespace gpbo {

namespace {

struct CurvaturePair {
  Eigen::VectorXd s;
  Eigen::VectorXd y;
  double rho;
};

// Standard two-loop recursion; H0 scaled by s.y / y.y of the newest pair.
Eigen::VectorXd two_loop_direction(const Eigen::VectorXd& grad,
                                   const std::deque<CurvaturePair>& pairs) {
  Eigen::VectorXd q = grad;
  std::vector<double> coeff(pairs.size());
  for (int i = static_cast<int>(pairs.size()) - 1; i >= 0; --i) {
    coeff[i] = pairs[i].rho * pairs[i].s.dot(q);
    q -= coeff[i] * pairs[i].y;
  }
  if (!pairs.empty()) {
    const auto& newest = pairs.back();
    q *= newest.s.dot(newest.y) / newest.y.squaredNorm();
  }
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const double beta = pairs[i].rho * pairs[i].y.dot(q);
    q += (coeff[i] - beta) * pairs[i].s;
  }
  return -q;
}

}  // namespace

BoxLbfgsResult minimize_box_lbfgs(const ObjectiveWithGradient& objective, const Box& box,
                                  const Eigen::VectorXd& start, const BoxLbfgsOptions& options) {
  if (box.lower.size() != box.upper.size() || box.lower.size() != start.size()) {
    throw std::invalid_argument("minimize_box_lbfgs: box/start dimension mismatch");
  }
  for (int k = 0; k < box.dim(); ++k) {
    if (!(box.lower[k] < box.upper[k])) {
      throw std::invalid_argument("minimize_box_lbfgs: degenerate box in dimension " +
                                  std::to_string(k));
    }
  }

  constexpr double kArmijo = 1e-4;
  constexpr int kMaxBacktracks = 40;

  Eigen::VectorXd x = box.clamp(start);
  Eigen::VectorXd grad(x.size());
  double value = objective(x, grad);
  if (!std::isfinite(value) || !grad.allFinite()) {
    throw std::domain_error("minimize_box_lbfgs: non-finite objective or gradient at start point");
  }

  std::deque<CurvaturePair> pairs;
  BoxLbfgsResult result;
  result.iterations = 0;

  for (int iter = 0; iter < options.max_iterations; ++iter) {
    const double projected_grad_norm = (x - box.clamp(x - grad)).lpNorm<Eigen::Infinity>();
    if (projected_grad_norm <= options.gradient_tolerance) {
      result.converged = true;
      break;
    }

    Eigen::VectorXd direction = two_loop_direction(grad, pairs);
    if (!direction.allFinite() || direction.dot(grad) >= 0.0) {
      direction = -grad;  // fall back to steepest descent
      pairs.clear();
    }

    // Unit-ish first step before any curvature information exists.
    double step = pairs.empty()
                      ? std::min(1.0, 1.0 / std::max(1e-12, grad.lpNorm<Eigen::Infinity>()))
                      : 1.0;

    Eigen::VectorXd x_new;
    Eigen::VectorXd grad_new(x.size());
    double value_new = 0.0;
    bool accepted = false;
    for (int bt = 0; bt < kMaxBacktracks; ++bt) {
      x_new = box.clamp(x + step * direction);
      const Eigen::VectorXd taken = x_new - x;
      if (taken.lpNorm<Eigen::Infinity>() == 0.0) break;  // projection removed the whole step
      value_new = objective(x_new, grad_new);
      const double decrease_bound = value + kArmijo * grad.dot(taken);
      if (std::isfinite(value_new) && value_new <= decrease_bound && value_new <= value) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) break;  // no further progress possible along this direction

    ++result.iterations;
    const Eigen::VectorXd s = x_new - x;
    const Eigen::VectorXd y = grad_new - grad;
    const double sy = s.dot(y);
    if (grad_new.allFinite() && sy > 1e-10 * s.norm() * y.norm()) {
      pairs.push_back({s, y, 1.0 / sy});
      if (static_cast<int>(pairs.size()) > options.history) pairs.pop_front();
    }
    x = std::move(x_new);
    value = value_new;
    grad = grad_new;
    if (!grad.allFinite()) break;
  }

  result.x = x;
  result.value = value;
  return result;
}

}  // namespace gpbo

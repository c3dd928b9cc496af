#pragma once

#include <Eigen/Dense>
#include <functional>

namespace gpbo {

struct Box {
  Eigen::VectorXd lower;
  Eigen::VectorXd upper;

  [[nodiscard]] int dim() const noexcept { return static_cast<int>(lower.size()); }
  [[nodiscard]] Eigen::VectorXd clamp(const Eigen::VectorXd& x) const {
    return x.cwiseMax(lower).cwiseMin(upper);
  }
};

// Returns the objective value and fills the gradient (same length as x).
using ObjectiveWithGradient = std::function<double(const Eigen::VectorXd&, Eigen::VectorXd&)>;

struct BoxLbfgsOptions {
  int max_iterations = 200;
  double gradient_tolerance = 1e-6;  // infinity norm of the projected gradient
  int history = 8;
};

struct BoxLbfgsResult {
  Eigen::VectorXd x;
  double value = 0.0;
  int iterations = 0;
  bool converged = false;
};

// Projected L-BFGS with backtracking Armijo line search. Iterates stay inside
// the box; accepted steps never increase the objective. Convergence is
// declared when ||x - clamp(x - grad)||_inf falls below the tolerance.
// Throws std::domain_error if the objective or gradient is non-finite at the
// start point.
BoxLbfgsResult minimize_box_lbfgs(const ObjectiveWithGradient& objective, const Box& box,
                                  const Eigen::VectorXd& start, const BoxLbfgsOptions& options = {});

}  // namespace gpbo

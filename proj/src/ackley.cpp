#include "gpbo/ackley.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace gpbo {

double ackley(const Eigen::VectorXd& x) {
  if (x.size() < 1) throw std::invalid_argument("ackley: empty input");
  constexpr double a = 20.0;
  constexpr double b = 0.2;
  constexpr double c = 2.0 * std::numbers::pi;
  const double n = static_cast<double>(x.size());
  const double quad = std::sqrt(x.squaredNorm() / n);
  const double cosine = (c * x.array()).cos().sum() / n;
  return -a * std::exp(-b * quad) - std::exp(cosine) + a + std::exp(1.0);
}

Bounds ackley_bounds(int dim) {
  if (dim < 1) throw std::invalid_argument("ackley_bounds: dimension must be >= 1");
  return {Eigen::VectorXd::Constant(dim, -kAckleyHalfWidth),
          Eigen::VectorXd::Constant(dim, kAckleyHalfWidth)};
}

}  // namespace gpbo

#pragma once

#include <Eigen/Dense>

#include "gpbo/dataset.hpp"

namespace gpbo {

// Benchmark domain half-width: X = [-32.768, 32.768]^d.
inline constexpr double kAckleyHalfWidth = 32.768;

// Ackley with the standard constants a = 20, b = 0.2, c = 2*pi:
//   f(x) = -a exp(-b sqrt(mean(x_i^2))) - exp(mean(cos(c x_i))) + a + e
// Global minimum 0 at the origin (exact in floating point: the constant term
// uses the same exp(1) the cosine term produces there).
double ackley(const Eigen::VectorXd& x);

Bounds ackley_bounds(int dim);

}  // namespace gpbo

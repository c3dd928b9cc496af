#include "gpbo/dataset.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

namespace gpbo {

void Bounds::validate() const {
  if (lower.size() == 0 || lower.size() != upper.size()) {
    throw std::invalid_argument("Bounds: lower/upper must be non-empty and the same length");
  }
  for (int k = 0; k < dim(); ++k) {
    if (!(lower[k] < upper[k])) {
      throw std::invalid_argument("Bounds: lower must be strictly below upper in dimension " +
                                  std::to_string(k));
    }
  }
}

namespace {

void check_within(double value, double lo, double hi, int row, int col) {
  if (value < lo || value > hi) {
    throw std::domain_error("input out of bounds at row " + std::to_string(row) + ", dimension " +
                            std::to_string(col) + ": " + std::to_string(value) + " not in [" +
                            std::to_string(lo) + ", " + std::to_string(hi) + "]");
  }
}

}  // namespace

Eigen::MatrixXd normalize_inputs(const Eigen::MatrixXd& raw, const Bounds& bounds) {
  bounds.validate();
  if (raw.cols() != bounds.dim()) {
    throw std::invalid_argument("normalize_inputs: input dimension mismatch");
  }
  Eigen::MatrixXd unit(raw.rows(), raw.cols());
  for (int i = 0; i < raw.rows(); ++i) {
    for (int k = 0; k < raw.cols(); ++k) {
      check_within(raw(i, k), bounds.lower[k], bounds.upper[k], i, k);
      unit(i, k) = (raw(i, k) - bounds.lower[k]) / (bounds.upper[k] - bounds.lower[k]);
    }
  }
  return unit;
}

Eigen::VectorXd normalize_point(const Eigen::VectorXd& raw, const Bounds& bounds) {
  return normalize_inputs(raw.transpose(), bounds).row(0).transpose();
}

Eigen::VectorXd denormalize_point(const Eigen::VectorXd& unit, const Bounds& bounds) {
  bounds.validate();
  if (unit.size() != bounds.dim()) {
    throw std::invalid_argument("denormalize_point: input dimension mismatch");
  }
  Eigen::VectorXd raw(unit.size());
  for (int k = 0; k < unit.size(); ++k) {
    raw[k] = bounds.lower[k] * (1.0 - unit[k]) + bounds.upper[k] * unit[k];
  }
  return raw;
}

Standardization standardize_outputs(const Eigen::VectorXd& y) {
  const auto n = y.size();
  if (n < 1) throw std::invalid_argument("standardize_outputs: need at least one output");

  Standardization result;
  result.mean = y.mean();
  if (n >= 2) {
    const double ss = (y.array() - result.mean).square().sum();
    result.stddev = std::sqrt(ss / static_cast<double>(n - 1));
  }
  if (!(result.stddev > 0.0)) result.stddev = 1.0;  // n == 1 or zero spread
  result.values = (y.array() - result.mean) / result.stddev;
  return result;
}

Dataset::Dataset(Eigen::MatrixXd inputs_raw, Eigen::VectorXd outputs_raw, Bounds bounds)
    : inputs_raw_(std::move(inputs_raw)),
      outputs_raw_(std::move(outputs_raw)),
      bounds_(std::move(bounds)) {
  if (inputs_raw_.rows() != outputs_raw_.size()) {
    throw std::invalid_argument("Dataset: inputs and outputs disagree on the number of points");
  }
  if (outputs_raw_.size() < 1) throw std::invalid_argument("Dataset: need at least one observation");
  inputs_unit_ = normalize_inputs(inputs_raw_, bounds_);
  auto standardized = standardize_outputs(outputs_raw_);
  outputs_std_ = std::move(standardized.values);
  output_mean_ = standardized.mean;
  output_stddev_ = standardized.stddev;
}

}  // namespace gpbo

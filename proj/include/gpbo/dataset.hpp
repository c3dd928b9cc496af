#pragma once

#include <Eigen/Dense>

namespace gpbo {

struct Bounds {
  Eigen::VectorXd lower;
  Eigen::VectorXd upper;

  [[nodiscard]] int dim() const noexcept { return static_cast<int>(lower.size()); }
  void validate() const;  // matching sizes, lower < upper per dimension
};

// Componentwise (x - lower) / (upper - lower). Throws std::domain_error
// naming the offending coordinate when an input lies outside the bounds.
Eigen::MatrixXd normalize_inputs(const Eigen::MatrixXd& raw, const Bounds& bounds);
Eigen::VectorXd normalize_point(const Eigen::VectorXd& raw, const Bounds& bounds);

// Inverse affine map, written as lower*(1-u) + upper*u so it is exact at the
// cube corners.
Eigen::VectorXd denormalize_point(const Eigen::VectorXd& unit, const Bounds& bounds);

struct Standardization {
  Eigen::VectorXd values;
  double mean = 0.0;
  double stddev = 1.0;
};

// Center by the sample mean and scale by the (n-1)-divisor sample standard
// deviation. For n == 1 or zero-spread inputs the divisor is defined as 1,
// so the result stays finite and centered.
Standardization standardize_outputs(const Eigen::VectorXd& y);

// Raw observations plus the views the GP consumes: inputs mapped to the
// unit cube, outputs standardized. Immutable after construction.
class Dataset {
public:
  Dataset(Eigen::MatrixXd inputs_raw, Eigen::VectorXd outputs_raw, Bounds bounds);

  [[nodiscard]] int size() const noexcept { return static_cast<int>(outputs_raw_.size()); }
  [[nodiscard]] int dim() const noexcept { return static_cast<int>(inputs_raw_.cols()); }

  [[nodiscard]] const Eigen::MatrixXd& inputs_raw() const noexcept { return inputs_raw_; }
  [[nodiscard]] const Eigen::VectorXd& outputs_raw() const noexcept { return outputs_raw_; }
  [[nodiscard]] const Bounds& bounds() const noexcept { return bounds_; }
  [[nodiscard]] const Eigen::MatrixXd& inputs_unit() const noexcept { return inputs_unit_; }
  [[nodiscard]] const Eigen::VectorXd& outputs_std() const noexcept { return outputs_std_; }
  [[nodiscard]] double output_mean() const noexcept { return output_mean_; }
  [[nodiscard]] double output_stddev() const noexcept { return output_stddev_; }

private:
  Eigen::MatrixXd inputs_raw_;
  Eigen::VectorXd outputs_raw_;
  Bounds bounds_;
  Eigen::MatrixXd inputs_unit_;
  Eigen::VectorXd outputs_std_;
  double output_mean_ = 0.0;
  double output_stddev_ = 1.0;
};

}  // namespace gpbo

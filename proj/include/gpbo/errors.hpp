#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace gpbo {

// Cholesky failure that survived the jitter escalation; carries the
// diagonal jitter levels that were attempted.
class NumericalError : public std::runtime_error {
public:
  NumericalError(const std::string& message, std::vector<double> jitters_tried)
      : std::runtime_error(message), jitters_tried_(std::move(jitters_tried)) {}

  [[nodiscard]] const std::vector<double>& jitters_tried() const noexcept { return jitters_tried_; }

private:
  std::vector<double> jitters_tried_;
};

class InferenceError : public std::runtime_error {
public:
  explicit InferenceError(const std::string& message) : std::runtime_error(message) {}
};

class AcquisitionError : public std::runtime_error {
public:
  explicit AcquisitionError(const std::string& message) : std::runtime_error(message) {}
};

}  // namespace gpbo

#pragma once

#include <stdexcept>
#include <string>

namespace infogeo {

// A coordinate lies outside the domain an operation accepts.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A chart was paired with a density or model living on a different manifold.
class ChartMismatchError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class NonFiniteVolumeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A numerical procedure stopped without meeting its tolerance.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double best_estimate, double error_estimate)
      : std::runtime_error(what), best_estimate_(best_estimate), error_estimate_(error_estimate) {}

  double best_estimate() const { return best_estimate_; }
  double error_estimate() const { return error_estimate_; }

 private:
  double best_estimate_;
  double error_estimate_;
};

}  // namespace infogeo

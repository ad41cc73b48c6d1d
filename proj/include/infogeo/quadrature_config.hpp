#pragma once

namespace infogeo {

struct QuadratureConfig {
  double abs_tol = 1e-10;
  double rel_tol = 1e-10;
  // Number of step halvings after the initial unit-step sum.
  int max_refinement_levels = 12;

  // Throws std::invalid_argument for non-positive tolerances or levels < 1.
  void validate() const;
};

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  bool converged = false;
  long evaluations = 0;
};

}  // namespace infogeo

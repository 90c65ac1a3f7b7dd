#pragma once

#include <functional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "locspec/family.hpp"

namespace locspec {

// Objective evaluated at theta; writes the gradient when grad != nullptr.
using BoxObjective =
    std::function<double(const Eigen::VectorXd&, Eigen::VectorXd*)>;

struct OptimizerConfig {
  int max_iterations = 200;
  double grad_tol = 1e-9;
  int max_line_search = 40;
};

struct OptimizerResult {
  Eigen::VectorXd theta;
  double value = 0.0;
  double projected_grad_norm = 0.0;
  int iterations = 0;
  bool converged = false;
  bool at_boundary = false;
  std::string message;
};

// Projected quasi-Newton (BFGS with projection and Armijo backtracking) on a
// box. Deterministic given the starting points.
OptimizerResult minimize_box(const BoxObjective& objective,
                             const ParameterBox& box,
                             const Eigen::VectorXd& start,
                             const OptimizerConfig& cfg = {});

// Runs from each start and keeps the best minimum.
OptimizerResult minimize_box_multistart(const BoxObjective& objective,
                                        const ParameterBox& box,
                                        const std::vector<Eigen::VectorXd>& starts,
                                        const OptimizerConfig& cfg = {});

}  // namespace locspec

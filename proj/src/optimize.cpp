#include "locspec/optimize.hpp"

#include <cmath>
#include <limits>

namespace locspec {

namespace {

double projected_grad_norm(const Eigen::VectorXd& theta,
                           const Eigen::VectorXd& grad,
                           const ParameterBox& box) {
  return (box.project(theta - grad) - theta).norm();
}

bool on_boundary(const Eigen::VectorXd& theta, const ParameterBox& box) {
  for (int i = 0; i < box.dim(); ++i) {
    double span = box.hi[i] - box.lo[i];
    if (theta[i] <= box.lo[i] + 1e-12 * span ||
        theta[i] >= box.hi[i] - 1e-12 * span)
      return true;
  }
  return false;
}

}  // namespace

OptimizerResult minimize_box(const BoxObjective& objective,
                             const ParameterBox& box,
                             const Eigen::VectorXd& start,
                             const OptimizerConfig& cfg) {
  const int d = box.dim();
  OptimizerResult res;
  Eigen::VectorXd theta = box.project(start);
  Eigen::VectorXd grad(d);
  double value = objective(theta, &grad);
  Eigen::MatrixXd hinv = Eigen::MatrixXd::Identity(d, d);

  int it = 0;
  for (; it < cfg.max_iterations; ++it) {
    double pg = projected_grad_norm(theta, grad, box);
    if (pg < cfg.grad_tol) {
      res.converged = true;
      break;
    }
    Eigen::VectorXd dir = -hinv * grad;
    if (dir.dot(grad) > -1e-16 * grad.norm() * dir.norm()) {
      dir = -grad;  // reset on a non-descent direction
      hinv.setIdentity();
    }
    // Backtracking Armijo with projection.
    double step = 1.0;
    double f_new = value;
    Eigen::VectorXd theta_new = theta;
    bool accepted = false;
    for (int ls = 0; ls < cfg.max_line_search; ++ls) {
      theta_new = box.project(theta + step * dir);
      Eigen::VectorXd delta = theta_new - theta;
      if (delta.norm() == 0.0) break;
      f_new = objective(theta_new, nullptr);
      if (f_new <= value + 1e-4 * grad.dot(delta)) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) break;
    Eigen::VectorXd grad_new(d);
    f_new = objective(theta_new, &grad_new);
    Eigen::VectorXd s = theta_new - theta;
    Eigen::VectorXd y = grad_new - grad;
    double sy = s.dot(y);
    if (sy > 1e-12 * s.norm() * y.norm()) {
      Eigen::MatrixXd I = Eigen::MatrixXd::Identity(d, d);
      Eigen::MatrixXd V = I - (s * y.transpose()) / sy;
      hinv = V * hinv * V.transpose() + (s * s.transpose()) / sy;
    }
    theta = theta_new;
    grad = grad_new;
    value = f_new;
  }

  res.theta = theta;
  res.value = value;
  res.projected_grad_norm = projected_grad_norm(theta, grad, box);
  res.iterations = it;
  res.at_boundary = on_boundary(theta, box);
  if (!res.converged && res.projected_grad_norm < cfg.grad_tol)
    res.converged = true;
  if (!res.converged)
    res.message = "optimizer stopped before reaching gradient tolerance";
  return res;
}

OptimizerResult minimize_box_multistart(
    const BoxObjective& objective, const ParameterBox& box,
    const std::vector<Eigen::VectorXd>& starts, const OptimizerConfig& cfg) {
  OptimizerResult best;
  best.value = std::numeric_limits<double>::infinity();
  for (const auto& s : starts) {
    OptimizerResult r = minimize_box(objective, box, s, cfg);
    if (r.value < best.value) best = r;
  }
  return best;
}

}  // namespace locspec

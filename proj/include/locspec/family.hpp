#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

namespace locspec {

enum class FamilyTag { WhiteNoise, Ar, Ma, Arma };

// Compact box constraint for the parameter space Theta.
struct ParameterBox {
  std::vector<double> lo;
  std::vector<double> hi;

  int dim() const { return static_cast<int>(lo.size()); }
  bool contains(const Eigen::VectorXd& theta, double slack = 0.0) const;
  Eigen::VectorXd project(const Eigen::VectorXd& theta) const;
  Eigen::VectorXd center() const;
};

// Stationary parametric spectral density family f_theta(lambda) with analytic
// derivatives of f^{-1} and log f. Parameter layout:
//   white-noise: (s2)                      f = s2 / 2pi
//   ar(p):       (alpha_1..alpha_p, s2)    f = s2 / (2pi |A|^2)
//   ma(q):       (beta_1..beta_q, s2)      f = s2 |B|^2 / 2pi
//   arma(p,q):   (alpha.., beta.., s2)     f = s2 |B|^2 / (2pi |A|^2)
// with A(lambda) = 1 + sum alpha_j e^{i lambda j}, B analogous.
class ParametricSpectralFamily {
 public:
  static ParametricSpectralFamily white_noise();
  static ParametricSpectralFamily ar(int p);
  static ParametricSpectralFamily ma(int q);
  static ParametricSpectralFamily arma(int p, int q);

  FamilyTag tag() const { return tag_; }
  int p() const { return p_; }
  int q() const { return q_; }
  int dim() const { return p_ + q_ + 1; }
  std::string name() const;

  const ParameterBox& box() const { return box_; }
  void set_box(ParameterBox box);

  double f(const Eigen::VectorXd& theta, double lambda) const;
  double inv_f(const Eigen::VectorXd& theta, double lambda) const;
  Eigen::VectorXd grad_inv_f(const Eigen::VectorXd& theta, double lambda) const;
  Eigen::MatrixXd hess_inv_f(const Eigen::VectorXd& theta, double lambda) const;
  Eigen::VectorXd grad_log_f(const Eigen::VectorXd& theta, double lambda) const;

 private:
  ParametricSpectralFamily(FamilyTag tag, int p, int q);

  FamilyTag tag_;
  int p_;
  int q_;
  ParameterBox box_;
};

FamilyTag family_tag_from_string(const std::string& s);

}  // namespace locspec

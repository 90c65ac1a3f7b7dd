#include "locspec/family.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

namespace locspec {

namespace {
constexpr double kPi = M_PI;
using cd = std::complex<double>;
}  // namespace

bool ParameterBox::contains(const Eigen::VectorXd& theta, double slack) const {
  if (theta.size() != dim()) return false;
  for (int i = 0; i < dim(); ++i)
    if (theta[i] < lo[i] - slack || theta[i] > hi[i] + slack) return false;
  return true;
}

Eigen::VectorXd ParameterBox::project(const Eigen::VectorXd& theta) const {
  Eigen::VectorXd out = theta;
  for (int i = 0; i < dim(); ++i)
    out[i] = std::clamp(out[i], lo[i], hi[i]);
  return out;
}

Eigen::VectorXd ParameterBox::center() const {
  Eigen::VectorXd c(dim());
  for (int i = 0; i < dim(); ++i) c[i] = 0.5 * (lo[i] + hi[i]);
  return c;
}

ParametricSpectralFamily::ParametricSpectralFamily(FamilyTag tag, int p, int q)
    : tag_(tag), p_(p), q_(q) {
  // Default box: polynomial coefficients in [-0.98, 0.98], variance in
  // [1e-3, 100].
  box_.lo.assign(static_cast<size_t>(dim()), -0.98);
  box_.hi.assign(static_cast<size_t>(dim()), 0.98);
  box_.lo.back() = 1e-3;
  box_.hi.back() = 100.0;
}

ParametricSpectralFamily ParametricSpectralFamily::white_noise() {
  return ParametricSpectralFamily(FamilyTag::WhiteNoise, 0, 0);
}
ParametricSpectralFamily ParametricSpectralFamily::ar(int p) {
  if (p < 1) throw std::invalid_argument("family: ar order >= 1");
  return ParametricSpectralFamily(FamilyTag::Ar, p, 0);
}
ParametricSpectralFamily ParametricSpectralFamily::ma(int q) {
  if (q < 1) throw std::invalid_argument("family: ma order >= 1");
  return ParametricSpectralFamily(FamilyTag::Ma, 0, q);
}
ParametricSpectralFamily ParametricSpectralFamily::arma(int p, int q) {
  if (p < 1 || q < 1) throw std::invalid_argument("family: arma orders >= 1");
  return ParametricSpectralFamily(FamilyTag::Arma, p, q);
}

std::string ParametricSpectralFamily::name() const {
  switch (tag_) {
    case FamilyTag::WhiteNoise:
      return "white-noise";
    case FamilyTag::Ar:
      return "ar(" + std::to_string(p_) + ")";
    case FamilyTag::Ma:
      return "ma(" + std::to_string(q_) + ")";
    case FamilyTag::Arma:
      return "arma(" + std::to_string(p_) + "," + std::to_string(q_) + ")";
  }
  return "?";
}

void ParametricSpectralFamily::set_box(ParameterBox box) {
  if (box.dim() != dim())
    throw std::invalid_argument("family: box dimension mismatch");
  box_ = std::move(box);
}

double ParametricSpectralFamily::f(const Eigen::VectorXd& theta,
                                   double lambda) const {
  const double s2 = theta[dim() - 1];
  cd A(1.0, 0.0), B(1.0, 0.0);
  for (int j = 1; j <= p_; ++j)
    A += theta[j - 1] * std::exp(cd(0.0, lambda * j));
  for (int k = 1; k <= q_; ++k)
    B += theta[p_ + k - 1] * std::exp(cd(0.0, lambda * k));
  return s2 * std::norm(B) / (2.0 * kPi * std::norm(A));
}

double ParametricSpectralFamily::inv_f(const Eigen::VectorXd& theta,
                                       double lambda) const {
  return 1.0 / f(theta, lambda);
}

Eigen::VectorXd ParametricSpectralFamily::grad_inv_f(
    const Eigen::VectorXd& theta, double lambda) const {
  const int d = dim();
  const double s2 = theta[d - 1];
  cd A(1.0, 0.0), B(1.0, 0.0);
  for (int j = 1; j <= p_; ++j)
    A += theta[j - 1] * std::exp(cd(0.0, lambda * j));
  for (int k = 1; k <= q_; ++k)
    B += theta[p_ + k - 1] * std::exp(cd(0.0, lambda * k));
  const double nA = std::norm(A), nB = std::norm(B);
  Eigen::VectorXd g(d);
  for (int j = 1; j <= p_; ++j) {
    double Gj = 2.0 * std::real(std::conj(A) * std::exp(cd(0.0, lambda * j)));
    g[j - 1] = 2.0 * kPi * Gj / (s2 * nB);
  }
  for (int k = 1; k <= q_; ++k) {
    double Hk = 2.0 * std::real(std::conj(B) * std::exp(cd(0.0, lambda * k)));
    g[p_ + k - 1] = -2.0 * kPi * nA * Hk / (s2 * nB * nB);
  }
  g[d - 1] = -2.0 * kPi * nA / (s2 * s2 * nB);
  return g;
}

Eigen::MatrixXd ParametricSpectralFamily::hess_inv_f(
    const Eigen::VectorXd& theta, double lambda) const {
  const int d = dim();
  const double s2 = theta[d - 1];
  cd A(1.0, 0.0), B(1.0, 0.0);
  for (int j = 1; j <= p_; ++j)
    A += theta[j - 1] * std::exp(cd(0.0, lambda * j));
  for (int k = 1; k <= q_; ++k)
    B += theta[p_ + k - 1] * std::exp(cd(0.0, lambda * k));
  const double nA = std::norm(A), nB = std::norm(B);
  std::vector<double> G(static_cast<size_t>(p_)), H(static_cast<size_t>(q_));
  for (int j = 1; j <= p_; ++j)
    G[j - 1] = 2.0 * std::real(std::conj(A) * std::exp(cd(0.0, lambda * j)));
  for (int k = 1; k <= q_; ++k)
    H[k - 1] = 2.0 * std::real(std::conj(B) * std::exp(cd(0.0, lambda * k)));

  Eigen::MatrixXd hess = Eigen::MatrixXd::Zero(d, d);
  for (int j = 1; j <= p_; ++j)
    for (int l = 1; l <= p_; ++l)
      hess(j - 1, l - 1) = 2.0 * kPi * 2.0 * std::cos(lambda * (j - l)) /
                           (s2 * nB);
  for (int j = 1; j <= p_; ++j)
    for (int k = 1; k <= q_; ++k) {
      double v = -2.0 * kPi * G[j - 1] * H[k - 1] / (s2 * nB * nB);
      hess(j - 1, p_ + k - 1) = v;
      hess(p_ + k - 1, j - 1) = v;
    }
  for (int k = 1; k <= q_; ++k)
    for (int l = 1; l <= q_; ++l)
      hess(p_ + k - 1, p_ + l - 1) =
          2.0 * kPi * nA *
          (-2.0 * std::cos(lambda * (k - l)) / (nB * nB) +
           2.0 * H[k - 1] * H[l - 1] / (nB * nB * nB)) /
          s2;
  // Cross terms with s2: d/ds2 scales 1/f by -1/s2.
  Eigen::VectorXd g = grad_inv_f(theta, lambda);
  for (int i = 0; i < d - 1; ++i) {
    hess(i, d - 1) = -g[i] / s2;
    hess(d - 1, i) = -g[i] / s2;
  }
  hess(d - 1, d - 1) = 2.0 * (2.0 * kPi * nA / nB) / (s2 * s2 * s2);
  return hess;
}

Eigen::VectorXd ParametricSpectralFamily::grad_log_f(
    const Eigen::VectorXd& theta, double lambda) const {
  const int d = dim();
  const double s2 = theta[d - 1];
  cd A(1.0, 0.0), B(1.0, 0.0);
  for (int j = 1; j <= p_; ++j)
    A += theta[j - 1] * std::exp(cd(0.0, lambda * j));
  for (int k = 1; k <= q_; ++k)
    B += theta[p_ + k - 1] * std::exp(cd(0.0, lambda * k));
  const double nA = std::norm(A), nB = std::norm(B);
  Eigen::VectorXd g(d);
  for (int j = 1; j <= p_; ++j)
    g[j - 1] = -2.0 * std::real(std::conj(A) * std::exp(cd(0.0, lambda * j))) / nA;
  for (int k = 1; k <= q_; ++k)
    g[p_ + k - 1] =
        2.0 * std::real(std::conj(B) * std::exp(cd(0.0, lambda * k))) / nB;
  g[d - 1] = 1.0 / s2;
  return g;
}

FamilyTag family_tag_from_string(const std::string& s) {
  if (s == "white-noise") return FamilyTag::WhiteNoise;
  if (s == "ar") return FamilyTag::Ar;
  if (s == "ma") return FamilyTag::Ma;
  if (s == "arma") return FamilyTag::Arma;
  throw std::invalid_argument("unknown family tag: " + s);
}

}  // namespace locspec

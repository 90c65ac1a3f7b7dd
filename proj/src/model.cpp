#include "locspec/model.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>

namespace locspec {

double decay_weight(long j, double kappa) {
  if (kappa <= 0.0) throw std::invalid_argument("decay_weight: kappa <= 0");
  long a = std::labs(j);
  if (a <= 1) return 1.0;
  double lj = std::log(static_cast<double>(a));
  return static_cast<double>(a) * std::pow(lj, 1.0 + kappa);
}

TvArmaModel::TvArmaModel(std::vector<CoefficientCurve> alpha,
                         std::vector<CoefficientCurve> beta,
                         CoefficientCurve sigma, Innovation innovation,
                         double stability_margin)
    : alpha_(std::move(alpha)),
      beta_(std::move(beta)),
      sigma_(std::move(sigma)),
      innovation_(innovation),
      kappa4_(kurtosis_cumulant(innovation)),
      delta_(stability_margin) {
  if (delta_ <= 0.0)
    throw std::invalid_argument("model: stability margin must be positive");
}

std::vector<double> TvArmaModel::ar_values(double u) const {
  std::vector<double> a(alpha_.size());
  for (std::size_t j = 0; j < alpha_.size(); ++j) a[j] = alpha_[j](u);
  return a;
}

double TvArmaModel::min_root_modulus(double u) const {
  // Roots of 1 + alpha_1(u) z + ... + alpha_p(u) z^p.
  std::vector<double> c{1.0};
  for (const auto& a : alpha_) c.push_back(a(u));
  while (c.size() > 1 && c.back() == 0.0) c.pop_back();
  const int d = static_cast<int>(c.size()) - 1;
  if (d == 0) return std::numeric_limits<double>::infinity();
  for (double v : c)
    if (!std::isfinite(v))
      throw InvalidModelError("model: non-finite AR coefficient");
  Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(d, d);
  for (int i = 1; i < d; ++i) comp(i, i - 1) = 1.0;
  for (int i = 0; i < d; ++i) comp(i, d - 1) = -c[i] / c[d];
  Eigen::EigenSolver<Eigen::MatrixXd> es(comp, false);
  double m = std::numeric_limits<double>::infinity();
  for (int i = 0; i < d; ++i) m = std::min(m, std::abs(es.eigenvalues()[i]));
  return m;
}

std::vector<std::pair<double, double>> TvArmaModel::validate(
    int grid_size) const {
  if (grid_size < 2) throw std::invalid_argument("validate: grid_size < 2");
  std::vector<double> grid;
  for (int i = 0; i < grid_size; ++i)
    grid.push_back(static_cast<double>(i) / (grid_size - 1));
  for (const auto& a : alpha_)
    for (double b : a.interior_breakpoints()) grid.push_back(b);
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  std::vector<std::pair<double, double>> out;
  out.reserve(grid.size());
  for (double u : grid) out.emplace_back(u, min_root_modulus(u));
  return out;
}

void TvArmaModel::require_valid(int grid_size) const {
  for (auto [u, m] : validate(grid_size)) {
    if (!(m > 1.0 + delta_)) {
      throw InvalidModelError(
          "model: AR polynomial root inside |z| <= 1+delta at u=" +
          std::to_string(u) + " (min root modulus " + std::to_string(m) + ")");
    }
  }
  if (!(sigma_.min_on_unit() > 0.0))
    throw InvalidModelError("model: sigma(u) must be positive on [0,1]");
  for (const auto& b : beta_)
    if (!std::isfinite(b.sup_abs()))
      throw InvalidModelError("model: non-finite MA coefficient");
}

double TvArmaModel::tv_spectral_density(double u, double lambda) const {
  const std::complex<double> i(0.0, 1.0);
  std::complex<double> A(1.0, 0.0), B(1.0, 0.0);
  for (std::size_t j = 0; j < alpha_.size(); ++j)
    A += alpha_[j](u) * std::exp(i * lambda * static_cast<double>(j + 1));
  for (std::size_t k = 0; k < beta_.size(); ++k)
    B += beta_[k](u) * std::exp(i * lambda * static_cast<double>(k + 1));
  double s = sigma_(u);
  return s * s * std::norm(B) / (2.0 * M_PI * std::norm(A));
}

int TvArmaModel::truncation_lag(double abs_tol) const {
  double rho = 1.0 / (1.0 + delta_ / 2.0);
  double K = 100.0 * std::max(1.0, sigma_.sup_abs());
  int j = static_cast<int>(std::ceil(std::log(abs_tol / K) / std::log(rho)));
  return std::max(j, q() + 1);
}

std::vector<double> TvArmaModel::limit_transfer_coefficients(double u,
                                                             int j_max) const {
  const int P = p(), Q = q();
  const double s = sigma_(u);
  std::vector<double> bv(Q + 1, 0.0);
  bv[0] = 1.0;
  for (int k = 1; k <= Q; ++k) bv[k] = beta_[k - 1](u);
  // psi(m) = (alpha(u)^m)_{11} from the companion recursion.
  std::vector<double> av = ar_values(u);
  std::vector<double> psi(j_max + 1, 0.0);
  if (P == 0) {
    psi[0] = 1.0;
  } else {
    std::vector<double> r(P, 0.0);
    r[0] = 1.0;  // e_1' alpha^0
    psi[0] = 1.0;
    std::vector<double> nr(P);
    for (int m = 1; m <= j_max; ++m) {
      for (int j = 0; j < P; ++j)
        nr[j] = -r[0] * av[j] + (j + 1 < P ? r[j + 1] : 0.0);
      r = nr;
      psi[m] = r[0];
    }
  }
  std::vector<double> a(j_max + 1, 0.0);
  for (int j = 0; j <= j_max; ++j) {
    double sum = 0.0;
    for (int k = 0; k <= std::min(Q, j); ++k) sum += psi[j - k] * bv[k];
    a[j] = sum * s;
  }
  return a;
}

std::vector<double> TvArmaModel::transfer_coefficients(long t, long n,
                                                       int j_max) const {
  if (j_max < 0) throw std::invalid_argument("transfer_coefficients: j_max<0");
  const int P = p(), Q = q();
  const double dn = static_cast<double>(n);
  // psi_{t,n}(m) = (prod_{l=0}^{m-1} alpha((t-l)/n))_{11}.
  std::vector<double> psi(j_max + 1, 0.0);
  if (P == 0) {
    psi[0] = 1.0;
  } else {
    std::vector<double> r(P, 0.0), nr(P);
    r[0] = 1.0;
    psi[0] = 1.0;
    for (int m = 1; m <= j_max; ++m) {
      double u = static_cast<double>(t - (m - 1)) / dn;
      std::vector<double> av = ar_values(u);
      for (int j = 0; j < P; ++j)
        nr[j] = -r[0] * av[j] + (j + 1 < P ? r[j + 1] : 0.0);
      r = nr;
      psi[m] = r[0];
    }
  }
  std::vector<double> a(j_max + 1, 0.0);
  for (int j = 0; j <= j_max; ++j) {
    double s = sigma_(static_cast<double>(t - j) / dn);
    double sum = 0.0;
    for (int k = 0; k <= std::min(Q, j); ++k) {
      double beta_k =
          (k == 0) ? 1.0 : beta_[k - 1](static_cast<double>(t - (j - k)) / dn);
      sum += psi[j - k] * beta_k;
    }
    a[j] = sum * s;
  }
  return a;
}

double TvArmaModel::tv_covariance(double u, long k, double abs_tol) const {
  long ak = std::labs(k);
  int j_max = truncation_lag(abs_tol);
  std::vector<double> a =
      limit_transfer_coefficients(u, j_max + static_cast<int>(ak));
  double c = 0.0;
  for (int j = 0; j <= j_max; ++j) c += a[j + ak] * a[j];
  return c;
}

double TvArmaModel::coefficient_deviation(long n, int j) const {
  double dev = 0.0;
  for (long t = 1; t <= n; ++t) {
    double exact = transfer_coefficients(t, n, j)[j];
    double limit =
        limit_transfer_coefficients(static_cast<double>(t) / n, j)[j];
    dev += std::abs(exact - limit);
  }
  return dev;
}

TvArmaModel white_noise_model(double sigma, Innovation inn) {
  return TvArmaModel({}, {}, CoefficientCurve::constant(sigma), inn);
}

TvArmaModel ar1_model(double phi, double sigma, Innovation inn) {
  return TvArmaModel({CoefficientCurve::constant(-phi)}, {},
                     CoefficientCurve::constant(sigma), inn);
}

TvArmaModel tvar1_model(const CoefficientCurve& alpha1, double sigma,
                        Innovation inn) {
  return TvArmaModel({alpha1}, {}, CoefficientCurve::constant(sigma), inn);
}

}  // namespace locspec

#pragma once

#include <complex>
#include <optional>
#include <vector>

#include "locspec/curve.hpp"

namespace locspec {

// Equispaced frequency nodes on [-pi, pi] with trapezoid weights. With M
// points (M-1 subintervals) the rule integrates exp(i*lambda*k) exactly to 0
// for 0 < |k| < M-1, which is what turns the frequency/lag dual evaluation
// into a strict oracle. The default for samples of length n is M = 2n + 2.
struct FrequencyGrid {
  explicit FrequencyGrid(int m);
  static FrequencyGrid exactness_grade(long n) {
    return FrequencyGrid(static_cast<int>(2 * n + 2));
  }

  int size() const { return static_cast<int>(nodes.size()); }
  std::vector<double> nodes;
  std::vector<double> weights;
};

enum class FreqKind { One, Cosine, Indicator, Sampled };

// Frequency component psi(lambda) of a separable functional term.
class FrequencyPart {
 public:
  static FrequencyPart one();
  static FrequencyPart cosine(int k0);           // cos(k0 * lambda), k0 >= 1
  static FrequencyPart indicator(double mu);     // I_{[0, mu]}, 0 < mu <= pi
  // Generic sampled psi on a grid; integrals by quadrature, variation from
  // the samples (approximate).
  static FrequencyPart sampled(FrequencyGrid grid, std::vector<double> values);

  FreqKind kind() const { return kind_; }
  int cosine_lag() const { return k0_; }
  double indicator_mu() const { return mu_; }

  double operator()(double lambda) const;
  std::complex<double> fourier_coeff(long k) const;  // int psi e^{i lambda k}
  double variation() const;
  double sup_abs() const;
  double l2_inner(const FrequencyPart& other) const;  // int psi_i psi_j
  // Finite iff sum_j |psi_hat(j)| converges (cosine polynomials).
  bool summable_coeffs() const;
  // Largest |k| with psi_hat(k) != 0 when summable.
  long max_lag() const;
  // Points in (-pi, pi) where psi jumps (quadrature splitting).
  std::vector<double> discontinuities() const;

 private:
  FreqKind kind_ = FreqKind::One;
  int k0_ = 0;
  double mu_ = 0.0;
  std::optional<FrequencyGrid> grid_;
  std::vector<double> values_;
};

// phi(u, lambda) = sum_i w_i(u) * psi_i(lambda); zero outside
// [0,1] x [-pi,pi].
class SpectralFunctional {
 public:
  struct Term {
    CoefficientCurve w;
    FrequencyPart psi;
  };

  SpectralFunctional() = default;
  SpectralFunctional(CoefficientCurve w, FrequencyPart psi) {
    terms_.push_back({std::move(w), std::move(psi)});
  }
  static SpectralFunctional separable(CoefficientCurve w, FrequencyPart psi) {
    return SpectralFunctional(std::move(w), std::move(psi));
  }
  static SpectralFunctional frequency_only(FrequencyPart psi) {
    return SpectralFunctional(CoefficientCurve::constant(1.0), std::move(psi));
  }

  void add_term(CoefficientCurve w, FrequencyPart psi) {
    terms_.push_back({std::move(w), std::move(psi)});
  }
  const std::vector<Term>& terms() const { return terms_; }

  double operator()(double u, double lambda) const;

  // phi_hat(u, k) = int phi(u, lambda) exp(i lambda k) dlambda.
  std::complex<double> fourier_coeff(double u, long k) const;
  std::vector<std::complex<double>> fourier_coefficients(double u, long k_min,
                                                         long k_max) const;

  bool summable_coeffs() const;
  long max_lag() const;

  std::vector<double> u_breakpoints() const;
  std::vector<double> lambda_discontinuities() const;

  SpectralFunctional scaled(double s) const;
  SpectralFunctional plus(const SpectralFunctional& other) const;

 private:
  std::vector<Term> terms_;
};

enum class TaperKind { None, Cosine, Segment, Custom };

// Data taper h on (0,1]: bounded, bounded variation, log-concave where
// positive.
class Taper {
 public:
  static Taper none();
  static Taper cosine();                      // h(u) = sin(pi u)
  static Taper segment(double a, double b);   // I_{[a,b]}, [a,b] in (0,1]
  static Taper custom(std::vector<double> values);  // values[t-1] = h(t/n)

  TaperKind kind() const { return kind_; }
  bool is_none() const { return kind_ == TaperKind::None; }
  double segment_lo() const { return a_; }
  double segment_hi() const { return b_; }

  // Limit function h(u); for custom tapers a step interpolation.
  double operator()(double u) const;
  // h(t/n) for t = 1..n.
  std::vector<double> values(long n) const;

  // Discrete invariants at length n: bounds, total variation, log-concavity.
  void check_invariants(long n) const;

 private:
  TaperKind kind_ = TaperKind::None;
  double a_ = 0.0, b_ = 1.0;
  std::vector<double> custom_;
};

struct FunctionalNorms {
  double rho2 = 0.0;
  double rho2n = 0.0;       // only when n was supplied
  double rho2nh = 0.0;      // tapered version (h^4-weighted form)
  double rho_inf = 0.0;     // +inf when coefficients are not summable
  double v_sigma = 0.0;     // +inf likewise; upper bound for multi-term phi
  double norm_inf_V = 0.0;  // sup_u V(phi(u,.)); upper bound for multi-term
  double norm_V_inf = 0.0;  // sup_lambda V(phi(.,lambda)); upper bound ditto
  double norm_V_V = 0.0;
  double norm_inf_inf = 0.0;
};

FunctionalNorms norms(const SpectralFunctional& phi, long n = 0,
                      const Taper* taper = nullptr);

}  // namespace locspec

#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace locspec {

enum class KernelKind { Epanechnikov, Triangular, Uniform };

// Smoothing kernel with support [-1/2, 1/2], unit mass and zero first
// moment. All three shapes are normalized in closed form.
class SmoothingKernel {
 public:
  explicit SmoothingKernel(KernelKind kind = KernelKind::Epanechnikov)
      : kind_(kind) {}

  KernelKind kind() const { return kind_; }

  double operator()(double x) const {
    if (x < -0.5 || x > 0.5) return 0.0;
    switch (kind_) {
      case KernelKind::Epanechnikov:
        return 1.5 * (1.0 - 4.0 * x * x);
      case KernelKind::Triangular:
        return 2.0 - 4.0 * std::abs(x);
      case KernelKind::Uniform:
        return 1.0;
    }
    return 0.0;
  }

  std::string name() const {
    switch (kind_) {
      case KernelKind::Epanechnikov:
        return "epanechnikov";
      case KernelKind::Triangular:
        return "triangular";
      case KernelKind::Uniform:
        return "uniform";
    }
    return "?";
  }

 private:
  KernelKind kind_;
};

inline KernelKind kernel_kind_from_string(const std::string& s) {
  if (s == "epanechnikov") return KernelKind::Epanechnikov;
  if (s == "triangular") return KernelKind::Triangular;
  if (s == "uniform") return KernelKind::Uniform;
  throw std::invalid_argument("unknown kernel: " + s);
}

}  // namespace locspec

#pragma once

#include <Eigen/Core>
#include <stdexcept>
#include <string>

namespace stlmine::gp {

using Point = Eigen::VectorXd;

class KernelError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class KernelFamily { kGaussian, kMatern };

/// Stationary unit-variance kernel. Matérn is restricted to the half-integer
/// smoothness values 0.5, 1.5 and 2.5, which have closed forms.
class Kernel {
 public:
  static Kernel gaussian(double lengthscale);
  static Kernel matern(double lengthscale, double nu = 2.5);

  KernelFamily family() const { return family_; }
  double lengthscale() const { return lengthscale_; }
  double nu() const { return nu_; }

  /// Kernel value as a function of Euclidean distance r >= 0.
  double at_distance(double r) const;

  /// Throws KernelError on dimension mismatch.
  double operator()(const Eigen::Ref<const Eigen::VectorXd>& x1, const Eigen::Ref<const Eigen::VectorXd>& x2) const;

  std::string name() const;

 private:
  Kernel(KernelFamily family, double lengthscale, double nu);

  KernelFamily family_;
  double lengthscale_;
  double nu_;
};

KernelFamily parse_kernel_family(const std::string& name);

}  // namespace stlmine::gp

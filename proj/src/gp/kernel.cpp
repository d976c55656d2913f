#include "stlmine/gp/kernel.hpp"

#include <cmath>

namespace stlmine::gp {

Kernel::Kernel(KernelFamily family, double lengthscale, double nu)
    : family_(family), lengthscale_(lengthscale), nu_(nu) {
  if (!(lengthscale > 0.0) || !std::isfinite(lengthscale)) throw KernelError("kernel lengthscale must be > 0");
}

Kernel Kernel::gaussian(double lengthscale) { return Kernel(KernelFamily::kGaussian, lengthscale, 0.0); }

Kernel Kernel::matern(double lengthscale, double nu) {
  if (nu != 0.5 && nu != 1.5 && nu != 2.5) throw KernelError("Matern nu must be one of 0.5, 1.5, 2.5");
  return Kernel(KernelFamily::kMatern, lengthscale, nu);
}

double Kernel::at_distance(double r) const {
  if (family_ == KernelFamily::kGaussian) return std::exp(-r * r / (2.0 * lengthscale_ * lengthscale_));
  // sqrt(2 nu) r / l, then the half-integer closed forms of the Bessel expression.
  const double z = std::sqrt(2.0 * nu_) * r / lengthscale_;
  if (nu_ == 0.5) return std::exp(-z);
  if (nu_ == 1.5) return (1.0 + z) * std::exp(-z);
  return (1.0 + z + z * z / 3.0) * std::exp(-z);
}

double Kernel::operator()(const Eigen::Ref<const Eigen::VectorXd>& x1,
                          const Eigen::Ref<const Eigen::VectorXd>& x2) const {
  if (x1.size() != x2.size()) {
    throw KernelError("kernel input dimension mismatch: " + std::to_string(x1.size()) + " vs " +
                      std::to_string(x2.size()));
  }
  return at_distance((x1 - x2).norm());
}

std::string Kernel::name() const {
  if (family_ == KernelFamily::kGaussian) return "gaussian";
  return "matern";
}

KernelFamily parse_kernel_family(const std::string& name) {
  if (name == "gaussian" || name == "se" || name == "rbf") return KernelFamily::kGaussian;
  if (name == "matern" || name == "matern52") return KernelFamily::kMatern;
  throw KernelError("unknown kernel '" + name + "' (expected gaussian or matern)");
}

}  // namespace stlmine::gp

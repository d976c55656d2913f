#pragma once

#include <Eigen/Core>
#include <cstddef>
#include <span>
#include <stdexcept>

#include "stlmine/gp/kernel.hpp"

namespace stlmine::gp {

/// The Gram matrix could not be factorized even after the documented jitter.
class FactorizationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Prediction {
  double mean = 0.0;
  double variance = 0.0;
  /// Amount by which a negative variance was raised to zero (normally 0).
  double clipped = 0.0;
};

/// Zero-mean GP posterior under observations y = f(x) + N(0, noise_var).
///
/// Holds the lower Cholesky factor L of K + noise_var * I and the whitened
/// targets w = L^-1 y, so that m(x) = (L^-1 k_x) . w and
/// var(x) = k(x,x) - |L^-1 k_x|^2. Immutable: update() returns a new
/// posterior whose factor extends the old one by a single row.
class GpPosterior {
 public:
  GpPosterior(Kernel kernel, double noise_var);

  /// Batch fit on rows of `inputs`. If the factorization fails, adds
  /// 1e-10 * trace to the diagonal and retries once.
  static GpPosterior fit(Kernel kernel, double noise_var, const Eigen::MatrixXd& inputs,
                         const Eigen::VectorXd& outputs);

  GpPosterior update(const Eigen::Ref<const Eigen::VectorXd>& x, double y) const&;
  GpPosterior update(const Eigen::Ref<const Eigen::VectorXd>& x, double y) &&;

  Prediction predict(const Eigen::Ref<const Eigen::VectorXd>& x) const;

  const Kernel& kernel() const { return kernel_; }
  double noise_var() const { return noise_var_; }
  std::size_t size() const { return static_cast<std::size_t>(outputs_.size()); }
  /// Input dimension; 0 until the first observation.
  std::size_t dim() const { return static_cast<std::size_t>(inputs_.cols()); }
  bool empty() const { return size() == 0; }

  /// Observed inputs, one per row.
  const Eigen::MatrixXd& inputs() const { return inputs_; }
  const Eigen::VectorXd& outputs() const { return outputs_; }
  const Eigen::MatrixXd& factor() const { return factor_; }
  const Eigen::VectorXd& whitened_targets() const { return whitened_; }
  /// Total diagonal jitter added so far.
  double jitter() const { return jitter_; }

 private:
  void append(const Eigen::Ref<const Eigen::VectorXd>& x, double y);

  Kernel kernel_;
  double noise_var_;
  Eigen::MatrixXd inputs_;
  Eigen::VectorXd outputs_;
  Eigen::MatrixXd factor_;
  Eigen::VectorXd whitened_;
  double jitter_ = 0.0;
};

/// 1/2 * sum log(1 + var_t / noise_var) over the predictive variances of the
/// selected points. Throws std::invalid_argument on a negative variance.
double information_gain(std::span<const double> variance_history, double noise_var);

}  // namespace stlmine::gp

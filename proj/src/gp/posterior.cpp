#include "stlmine/gp/posterior.hpp"

#include <Eigen/Cholesky>
#include <cmath>
#include <string>

namespace stlmine::gp {

namespace {

constexpr double kJitterScale = 1e-10;

void check_dim(std::size_t have, std::size_t got) {
  if (have != 0 && have != got) {
    throw KernelError("input dimension mismatch: posterior has " + std::to_string(have) + ", got " +
                      std::to_string(got));
  }
}

}  // namespace

GpPosterior::GpPosterior(Kernel kernel, double noise_var) : kernel_(kernel), noise_var_(noise_var) {
  if (!(noise_var > 0.0) || !std::isfinite(noise_var)) {
    throw std::invalid_argument("GP noise variance must be positive");
  }
}

GpPosterior GpPosterior::fit(Kernel kernel, double noise_var, const Eigen::MatrixXd& inputs,
                             const Eigen::VectorXd& outputs) {
  if (inputs.rows() != outputs.size()) throw std::invalid_argument("GP fit: |X| != |y|");
  GpPosterior gp(kernel, noise_var);
  const Eigen::Index n = inputs.rows();
  if (n == 0) return gp;
  Eigen::MatrixXd gram(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j <= i; ++j) {
      gram(i, j) = gram(j, i) = kernel(inputs.row(i).transpose(), inputs.row(j).transpose());
    }
    gram(i, i) += noise_var;
  }
  Eigen::LLT<Eigen::MatrixXd> llt(gram);
  if (llt.info() != Eigen::Success) {
    const double jitter = kJitterScale * gram.trace();
    gram.diagonal().array() += jitter;
    llt.compute(gram);
    if (llt.info() != Eigen::Success) throw FactorizationError("GP Gram matrix is not positive definite after jitter");
    gp.jitter_ = jitter * static_cast<double>(n);
  }
  gp.inputs_ = inputs;
  gp.outputs_ = outputs;
  gp.factor_ = llt.matrixL();
  gp.whitened_ = gp.factor_.triangularView<Eigen::Lower>().solve(outputs);
  return gp;
}

void GpPosterior::append(const Eigen::Ref<const Eigen::VectorXd>& x, double y) {
  check_dim(dim(), static_cast<std::size_t>(x.size()));
  if (!std::isfinite(y) || !x.allFinite()) throw std::invalid_argument("GP observation must be finite");
  const Eigen::Index n = outputs_.size();

  Eigen::VectorXd k(n);
  for (Eigen::Index i = 0; i < n; ++i) k(i) = kernel_(inputs_.row(i).transpose(), x);
  Eigen::VectorXd row = n > 0 ? Eigen::VectorXd(factor_.triangularView<Eigen::Lower>().solve(k)) : k;
  const double prior = kernel_(x, x) + noise_var_;
  double pivot = prior - row.squaredNorm();
  if (!(pivot > 0.0)) {
    const double jitter = kJitterScale * (factor_.rowwise().squaredNorm().sum() + prior);
    pivot += jitter;
    if (!(pivot > 0.0)) throw FactorizationError("GP update produced a non-positive pivot after jitter");
    jitter_ += jitter;
  }
  const double diag = std::sqrt(pivot);

  inputs_.conservativeResize(n + 1, x.size());
  inputs_.row(n) = x.transpose();
  outputs_.conservativeResize(n + 1);
  outputs_(n) = y;
  factor_.conservativeResize(n + 1, n + 1);
  factor_.row(n).head(n) = row.transpose();
  factor_.col(n).setZero();
  factor_(n, n) = diag;
  whitened_.conservativeResize(n + 1);
  whitened_(n) = (y - row.dot(whitened_.head(n))) / diag;
}

GpPosterior GpPosterior::update(const Eigen::Ref<const Eigen::VectorXd>& x, double y) const& {
  GpPosterior next(*this);
  next.append(x, y);
  return next;
}

GpPosterior GpPosterior::update(const Eigen::Ref<const Eigen::VectorXd>& x, double y) && {
  append(x, y);
  return std::move(*this);
}

Prediction GpPosterior::predict(const Eigen::Ref<const Eigen::VectorXd>& x) const {
  check_dim(dim(), static_cast<std::size_t>(x.size()));
  const double prior = kernel_(x, x);
  if (empty()) return {0.0, prior, 0.0};
  const Eigen::Index n = outputs_.size();
  Eigen::VectorXd k(n);
  for (Eigen::Index i = 0; i < n; ++i) k(i) = kernel_(inputs_.row(i).transpose(), x);
  const Eigen::VectorXd v = factor_.triangularView<Eigen::Lower>().solve(k);
  Prediction p;
  p.mean = v.dot(whitened_);
  p.variance = prior - v.squaredNorm();
  if (p.variance < 0.0) {
    p.clipped = -p.variance;
    p.variance = 0.0;
  }
  return p;
}

double information_gain(std::span<const double> variance_history, double noise_var) {
  if (!(noise_var > 0.0)) throw std::invalid_argument("information_gain: noise variance must be positive");
  double sum = 0.0;
  for (double v : variance_history) {
    if (v < 0.0 || !std::isfinite(v)) throw std::invalid_argument("information_gain: negative variance");
    sum += std::log1p(v / noise_var);
  }
  return 0.5 * sum;
}

}  // namespace stlmine::gp

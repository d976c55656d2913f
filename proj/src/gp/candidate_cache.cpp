#include "stlmine/gp/candidate_cache.hpp"

#include <algorithm>
#include <stdexcept>

namespace stlmine::gp {

CandidateCache::CandidateCache(Eigen::MatrixXd candidates, Kernel kernel)
    : points_(std::move(candidates)), kernel_(kernel) {
  const Eigen::Index n = points_.rows();
  means_ = Eigen::VectorXd::Zero(n);
  raw_variances_ = Eigen::VectorXd::Constant(n, kernel_.at_distance(0.0));
  variances_ = raw_variances_;
}

void CandidateCache::sync(const GpPosterior& posterior) {
  const std::size_t target = posterior.size();
  if (target < synced_) throw std::logic_error("CandidateCache::sync: posterior is older than the cache");
  if (target == synced_) return;
  if (posterior.dim() != static_cast<std::size_t>(points_.cols())) {
    throw KernelError("CandidateCache::sync: candidate dimension does not match posterior");
  }
  const Eigen::Index n_c = points_.rows();
  if (projections_.cols() < static_cast<Eigen::Index>(target)) {
    const Eigen::Index cap = std::max<Eigen::Index>(static_cast<Eigen::Index>(target), 2 * projections_.cols());
    projections_.conservativeResize(n_c, cap);
  }
  const Eigen::MatrixXd& factor = posterior.factor();
  const Eigen::VectorXd& w = posterior.whitened_targets();
  for (std::size_t j = synced_; j < target; ++j) {
    const auto jj = static_cast<Eigen::Index>(j);
    const Eigen::VectorXd xj = posterior.inputs().row(jj).transpose();
    const Eigen::VectorXd dist = (points_.rowwise() - xj.transpose()).rowwise().norm();
    Eigen::VectorXd col = dist.unaryExpr([this](double r) { return kernel_.at_distance(r); });
    if (jj > 0) col.noalias() -= projections_.leftCols(jj) * factor.row(jj).head(jj).transpose();
    col /= factor(jj, jj);
    projections_.col(jj) = col;
    means_.noalias() += w(jj) * col;
    raw_variances_.array() -= col.array().square();
  }
  synced_ = target;
  for (Eigen::Index c = 0; c < n_c; ++c) {
    const double v = raw_variances_(c);
    if (v < 0.0) {
      max_clipped_ = std::max(max_clipped_, -v);
      variances_(c) = 0.0;
    } else {
      variances_(c) = v;
    }
  }
}

}  // namespace stlmine::gp

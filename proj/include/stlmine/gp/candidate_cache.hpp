#pragma once

#include <Eigen/Core>
#include <cstddef>

#include "stlmine/gp/posterior.hpp"

namespace stlmine::gp {

/// Posterior mean and variance on a fixed candidate set, kept current as a
/// posterior grows one observation at a time.
///
/// For candidate c it stores v_c = L^-1 k_c. Each new factor row j extends
/// every v_c by one entry, (k(c, x_j) - v_c[:j] . L[j,:j]) / L[j,j], so
/// absorbing an observation costs O(candidates * n) instead of a fresh
/// triangular solve per candidate.
///
/// sync() requires the posterior to extend the one last synced (same first
/// rows of the factor), which holds for any chain of GpPosterior::update.
class CandidateCache {
 public:
  CandidateCache(Eigen::MatrixXd candidates, Kernel kernel);

  void sync(const GpPosterior& posterior);

  std::size_t size() const { return static_cast<std::size_t>(points_.rows()); }
  std::size_t synced() const { return synced_; }
  const Eigen::MatrixXd& points() const { return points_; }
  const Eigen::VectorXd& means() const { return means_; }
  const Eigen::VectorXd& variances() const { return variances_; }
  /// Largest negative variance clipped to zero so far.
  double max_clipped() const { return max_clipped_; }

 private:
  Eigen::MatrixXd points_;
  Kernel kernel_;
  Eigen::MatrixXd projections_;  // column j holds entry j of every v_c
  Eigen::VectorXd means_;
  Eigen::VectorXd variances_;
  Eigen::VectorXd raw_variances_;
  std::size_t synced_ = 0;
  double max_clipped_ = 0.0;
};

}  // namespace stlmine::gp

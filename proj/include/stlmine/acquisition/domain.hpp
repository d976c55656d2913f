#pragma once

#include <Eigen/Core>
#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

namespace stlmine::acq {

struct Interval {
  double lower;
  double upper;
};

/// Box-shaped search space with a fixed, finite candidate set.
///
/// The GP side works in unit-cube coordinates (each axis mapped to [0,1]) so
/// that a single lengthscale is meaningful across axes of different units.
class Domain {
 public:
  /// Throws std::invalid_argument if a bound is empty, a candidate lies
  /// outside the box, or there are fewer than two candidates.
  Domain(std::vector<Interval> bounds, Eigen::MatrixXd candidates, std::uint64_t seed = 0);

  /// `count` uniform random candidates; with `include_vertices` the 2^d box
  /// corners are appended after them.
  static Domain sample(std::vector<Interval> bounds, std::size_t count, std::uint64_t seed,
                       bool include_vertices = false);

  const std::vector<Interval>& bounds() const { return bounds_; }
  std::size_t dim() const { return bounds_.size(); }
  std::size_t size() const { return static_cast<std::size_t>(candidates_.rows()); }
  std::uint64_t seed() const { return seed_; }
  /// Number of box corners at the end of the candidate list (see sample()).
  std::size_t vertex_count() const { return vertex_count_; }

  /// One candidate per row, original coordinates.
  const Eigen::MatrixXd& candidates() const { return candidates_; }
  /// Same candidates in unit-cube coordinates.
  const Eigen::MatrixXd& unit_candidates() const { return unit_candidates_; }
  Eigen::VectorXd candidate(std::size_t i) const { return candidates_.row(static_cast<Eigen::Index>(i)).transpose(); }

  Eigen::VectorXd to_unit(const Eigen::Ref<const Eigen::VectorXd>& x) const;
  Eigen::VectorXd from_unit(const Eigen::Ref<const Eigen::VectorXd>& u) const;
  Eigen::VectorXd clamp(const Eigen::Ref<const Eigen::VectorXd>& x) const;
  bool contains(const Eigen::Ref<const Eigen::VectorXd>& x) const;

  /// Diameter of the unit cube, sqrt(dim); default lengthscales are a tenth of it.
  double unit_diameter() const;

 private:
  std::vector<Interval> bounds_;
  Eigen::MatrixXd candidates_;
  Eigen::MatrixXd unit_candidates_;
  std::uint64_t seed_;
  std::size_t vertex_count_ = 0;
};

/// Uniform point in the box.
template <typename Rng>
Eigen::VectorXd uniform_point(const std::vector<Interval>& bounds, Rng& rng) {
  Eigen::VectorXd x(static_cast<Eigen::Index>(bounds.size()));
  for (std::size_t i = 0; i < bounds.size(); ++i) {
    std::uniform_real_distribution<double> u(bounds[i].lower, bounds[i].upper);
    x(static_cast<Eigen::Index>(i)) = u(rng);
  }
  return x;
}

}  // namespace stlmine::acq

#include "stlmine/acquisition/domain.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace stlmine::acq {

Domain::Domain(std::vector<Interval> bounds, Eigen::MatrixXd candidates, std::uint64_t seed)
    : bounds_(std::move(bounds)), candidates_(std::move(candidates)), seed_(seed) {
  if (bounds_.empty()) throw std::invalid_argument("domain needs at least one dimension");
  for (const auto& b : bounds_) {
    if (!std::isfinite(b.lower) || !std::isfinite(b.upper) || !(b.lower < b.upper)) {
      throw std::invalid_argument("domain bounds must be finite with lower < upper");
    }
  }
  if (candidates_.cols() != static_cast<Eigen::Index>(bounds_.size())) {
    throw std::invalid_argument("candidate dimension does not match domain bounds");
  }
  if (candidates_.rows() < 2) throw std::invalid_argument("domain needs at least two candidates");
  unit_candidates_.resize(candidates_.rows(), candidates_.cols());
  for (Eigen::Index i = 0; i < candidates_.rows(); ++i) {
    if (!contains(candidates_.row(i).transpose())) throw std::invalid_argument("candidate outside domain bounds");
    unit_candidates_.row(i) = to_unit(candidates_.row(i).transpose()).transpose();
  }
}

Domain Domain::sample(std::vector<Interval> bounds, std::size_t count, std::uint64_t seed, bool include_vertices) {
  const std::size_t d = bounds.size();
  const std::size_t vertices = include_vertices ? (std::size_t{1} << d) : 0;
  Eigen::MatrixXd pts(static_cast<Eigen::Index>(count + vertices), static_cast<Eigen::Index>(d));
  std::mt19937_64 rng(seed);
  for (std::size_t i = 0; i < count; ++i) pts.row(static_cast<Eigen::Index>(i)) = uniform_point(bounds, rng).transpose();
  for (std::size_t v = 0; v < vertices; ++v) {
    for (std::size_t k = 0; k < d; ++k) {
      pts(static_cast<Eigen::Index>(count + v), static_cast<Eigen::Index>(k)) =
          (v >> k) & 1U ? bounds[k].upper : bounds[k].lower;
    }
  }
  Domain domain(std::move(bounds), std::move(pts), seed);
  domain.vertex_count_ = vertices;
  return domain;
}

Eigen::VectorXd Domain::to_unit(const Eigen::Ref<const Eigen::VectorXd>& x) const {
  Eigen::VectorXd u(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    const auto& b = bounds_[static_cast<std::size_t>(i)];
    u(i) = (x(i) - b.lower) / (b.upper - b.lower);
  }
  return u;
}

Eigen::VectorXd Domain::from_unit(const Eigen::Ref<const Eigen::VectorXd>& u) const {
  Eigen::VectorXd x(u.size());
  for (Eigen::Index i = 0; i < u.size(); ++i) {
    const auto& b = bounds_[static_cast<std::size_t>(i)];
    x(i) = b.lower + u(i) * (b.upper - b.lower);
  }
  return x;
}

Eigen::VectorXd Domain::clamp(const Eigen::Ref<const Eigen::VectorXd>& x) const {
  Eigen::VectorXd out(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    const auto& b = bounds_[static_cast<std::size_t>(i)];
    out(i) = std::min(std::max(x(i), b.lower), b.upper);
  }
  return out;
}

bool Domain::contains(const Eigen::Ref<const Eigen::VectorXd>& x) const {
  if (x.size() != static_cast<Eigen::Index>(bounds_.size())) return false;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    const auto& b = bounds_[static_cast<std::size_t>(i)];
    if (!(x(i) >= b.lower && x(i) <= b.upper)) return false;
  }
  return true;
}

double Domain::unit_diameter() const { return std::sqrt(static_cast<double>(bounds_.size())); }

}  // namespace stlmine::acq

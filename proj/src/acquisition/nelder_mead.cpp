#include "stlmine/acquisition/nelder_mead.hpp"

#include <algorithm>
#include <numeric>
#include <optional>
#include <stdexcept>

namespace stlmine::acq {

namespace {

class BudgetedObjective {
 public:
  BudgetedObjective(const Objective& f, const NelderMeadOptions& opt, NelderMeadResult& result)
      : f_(f), opt_(opt), result_(result) {}

  bool exhausted() const { return result_.evaluations >= opt_.budget || result_.stopped_early; }

  std::optional<double> operator()(const Eigen::VectorXd& x) {
    if (exhausted()) return std::nullopt;
    const double v = f_(x);
    ++result_.evaluations;
    return record(x, v);
  }

  double record(const Eigen::VectorXd& x, double v) {
    if (result_.best_point.size() == 0 || v < result_.best_value) {
      result_.best_value = v;
      result_.best_point = x;
    }
    if (opt_.stop && opt_.stop(v)) result_.stopped_early = true;
    return v;
  }

 private:
  const Objective& f_;
  const NelderMeadOptions& opt_;
  NelderMeadResult& result_;
};

Eigen::VectorXd project(const Eigen::VectorXd& x, const std::vector<Interval>& bounds) {
  Eigen::VectorXd out = x;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    const auto& b = bounds[static_cast<std::size_t>(i)];
    out(i) = std::clamp(x(i), b.lower, b.upper);
  }
  return out;
}

}  // namespace

NelderMeadResult nelder_mead(const Objective& objective, const Eigen::VectorXd& start,
                             const std::vector<Interval>& bounds, const NelderMeadOptions& options) {
  if (options.budget < 1) throw std::invalid_argument("nelder_mead: budget must be at least 1");
  if (start.size() != static_cast<Eigen::Index>(bounds.size()) || bounds.empty()) {
    throw std::invalid_argument("nelder_mead: start dimension does not match bounds");
  }
  for (Eigen::Index i = 0; i < start.size(); ++i) {
    const auto& b = bounds[static_cast<std::size_t>(i)];
    if (!(start(i) >= b.lower && start(i) <= b.upper)) throw std::invalid_argument("nelder_mead: start outside bounds");
  }

  constexpr double kReflect = 1.0, kExpand = 2.0, kContract = 0.5, kShrink = 0.5;
  NelderMeadResult result;
  BudgetedObjective eval(objective, options, result);
  const auto d = static_cast<std::size_t>(start.size());

  std::vector<Eigen::VectorXd> pts;
  std::vector<double> vals;
  pts.push_back(start);
  vals.push_back(*eval(start));
  for (std::size_t i = 0; i < d; ++i) {
    const auto& b = bounds[i];
    const double step = options.initial_step * (b.upper - b.lower);
    Eigen::VectorXd p = start;
    const auto ii = static_cast<Eigen::Index>(i);
    p(ii) = p(ii) + step <= b.upper ? p(ii) + step : p(ii) - step;
    const auto v = eval(p);
    if (!v) return result;
    pts.push_back(p);
    vals.push_back(*v);
  }

  std::vector<std::size_t> order(d + 1);
  while (!eval.exhausted()) {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return vals[a] < vals[b]; });
    const std::size_t best = order.front();
    const std::size_t worst = order.back();
    const std::size_t second_worst = order[d - 1];

    double diameter = 0.0;
    for (std::size_t i = 0; i <= d; ++i) diameter = std::max(diameter, (pts[i] - pts[best]).norm());
    if (diameter < options.diameter_tol) break;

    Eigen::VectorXd centroid = Eigen::VectorXd::Zero(start.size());
    for (std::size_t i = 0; i <= d; ++i) {
      if (i != worst) centroid += pts[i];
    }
    centroid /= static_cast<double>(d);

    const Eigen::VectorXd xr = project(centroid + kReflect * (centroid - pts[worst]), bounds);
    const auto fr = eval(xr);
    if (!fr) break;

    if (*fr < vals[best]) {
      const Eigen::VectorXd xe = project(centroid + kExpand * (xr - centroid), bounds);
      const auto fe = eval(xe);
      if (!fe) break;
      if (*fe < *fr) {
        pts[worst] = xe;
        vals[worst] = *fe;
      } else {
        pts[worst] = xr;
        vals[worst] = *fr;
      }
      continue;
    }
    if (*fr < vals[second_worst]) {
      pts[worst] = xr;
      vals[worst] = *fr;
      continue;
    }

    const bool outside = *fr < vals[worst];
    const Eigen::VectorXd xc = outside ? project(centroid + kContract * (xr - centroid), bounds)
                                       : project(centroid + kContract * (pts[worst] - centroid), bounds);
    const auto fc = eval(xc);
    if (!fc) break;
    if (outside ? *fc <= *fr : *fc < vals[worst]) {
      pts[worst] = xc;
      vals[worst] = *fc;
      continue;
    }

    for (std::size_t i = 0; i <= d; ++i) {
      if (i == best) continue;
      pts[i] = pts[best] + kShrink * (pts[i] - pts[best]);
      const auto v = eval(pts[i]);
      if (!v) return result;
      vals[i] = *v;
    }
  }
  return result;
}

}  // namespace stlmine::acq

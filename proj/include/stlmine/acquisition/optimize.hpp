#pragma once

#include <Eigen/Core>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <stdexcept>
#include <vector>

#include "stlmine/acquisition/domain.hpp"
#include "stlmine/acquisition/nelder_mead.hpp"
#include "stlmine/acquisition/strategy.hpp"

namespace stlmine::acq {

inline constexpr std::size_t kNoCandidate = std::numeric_limits<std::size_t>::max();

struct IterationRecord {
  std::size_t t = 0;
  /// Candidate index, or kNoCandidate for Nelder-Mead points.
  std::size_t candidate = kNoCandidate;
  Eigen::VectorXd x;
  /// Observed value (objective plus observation noise), unscaled.
  double y = 0.0;
  /// Objective value without noise.
  double f = 0.0;
  /// Posterior mean / sd at x before observing it, in GP units (xi-scaled).
  /// Zero for Nelder-Mead.
  double mean = 0.0;
  double sigma = 0.0;
  double beta = 0.0;
  double eta = 1.0;
};

struct RunTrace {
  std::vector<IterationRecord> records;
  /// Best observed y after each iteration (max or min by mode).
  std::vector<double> best_observed;
  /// Best noise-free objective value among the points queried so far.
  std::vector<double> best_clean;
  /// Instantaneous regret of the point queried at each iteration, measured
  /// on the noise-free objective (known optimum only).
  std::vector<double> regret;
  /// Regret of the best noise-free value queried so far (known optimum only).
  std::vector<double> best_regret;
  /// Sum of instantaneous regrets (known optimum only).
  std::optional<double> cumulative_regret;
  /// Running sequential information gain 1/2 sum log(1 + sigma^2_{t-1}(x_t) / noise).
  std::vector<double> information_gain;
  double eta_min = 1.0;
  double eta_max = 1.0;
  bool stopped_early = false;
  /// Index into records of the best observation.
  std::size_t best_index = 0;

  std::size_t size() const { return records.size(); }
};

struct OptimizeOptions {
  std::uint64_t seed = 0;
  /// Optimum objective value over the domain, enabling regret bookkeeping.
  std::optional<double> known_optimum;
  /// Early exit predicate on each observed (unscaled) value.
  std::function<bool(double)> stop;
};

/// The objective threw; carries the trace up to the failing call.
class OptimizeError : public std::runtime_error {
 public:
  OptimizeError(const std::string& what, RunTrace partial) : std::runtime_error(what), trace_(std::move(partial)) {}
  const RunTrace& trace() const { return trace_; }

 private:
  RunTrace trace_;
};

/// Runs cfg.budget iterations of candidate selection and observation. The
/// objective returns the noise-free value; Gaussian noise of variance
/// cfg.observation_noise_var is added here. The GP sees xi * y in
/// unit-cube coordinates. Nelder-Mead runs restarts from random points in
/// the box until the budget is spent.
RunTrace optimize(const Objective& objective, const Domain& domain, const AcquisitionConfig& cfg,
                  const OptimizeOptions& options = {});

}  // namespace stlmine::acq

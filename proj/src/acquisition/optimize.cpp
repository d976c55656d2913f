#include "stlmine/acquisition/optimize.hpp"

#include <cmath>
#include <random>

#include "stlmine/gp/candidate_cache.hpp"
#include "stlmine/gp/posterior.hpp"

namespace stlmine::acq {

namespace {

class Recorder {
 public:
  Recorder(const AcquisitionConfig& cfg, const OptimizeOptions& options) : cfg_(cfg), options_(options) {}

  bool better(double a, double b) const { return cfg_.mode == Mode::kMinimize ? a < b : a > b; }

  void add(IterationRecord rec) {
    const bool first = trace_.records.empty();
    rec.t = trace_.records.size() + 1;
    if (first || better(rec.y, trace_.best_observed.back())) {
      trace_.best_index = trace_.records.size();
      trace_.best_observed.push_back(rec.y);
    } else {
      trace_.best_observed.push_back(trace_.best_observed.back());
    }
    const double clean = first || better(rec.f, trace_.best_clean.back()) ? rec.f : trace_.best_clean.back();
    trace_.best_clean.push_back(clean);
    if (options_.known_optimum) {
      const double opt = *options_.known_optimum;
      const double sign = cfg_.mode == Mode::kMinimize ? 1.0 : -1.0;
      const double instant = sign * (rec.f - opt);
      trace_.regret.push_back(instant);
      trace_.best_regret.push_back(sign * (clean - opt));
      trace_.cumulative_regret = trace_.cumulative_regret.value_or(0.0) + instant;
    }
    const double var = rec.sigma * rec.sigma;
    const double prev = first ? 0.0 : trace_.information_gain.back();
    trace_.information_gain.push_back(prev + 0.5 * std::log1p(var / cfg_.noise_var));
    if (first) {
      trace_.eta_min = trace_.eta_max = rec.eta;
    } else {
      trace_.eta_min = std::min(trace_.eta_min, rec.eta);
      trace_.eta_max = std::max(trace_.eta_max, rec.eta);
    }
    if (options_.stop && options_.stop(rec.y)) trace_.stopped_early = true;
    trace_.records.push_back(std::move(rec));
  }

  RunTrace& trace() { return trace_; }

 private:
  const AcquisitionConfig& cfg_;
  const OptimizeOptions& options_;
  RunTrace trace_;
};

struct Observation {
  double f;
  double y;
};

class NoisyOracle {
 public:
  NoisyOracle(const Objective& objective, double noise_var, std::uint64_t seed, Recorder& rec)
      : objective_(objective), noise_(0.0, std::sqrt(noise_var)), rng_(seed), noisy_(noise_var > 0.0), rec_(rec) {}

  Observation operator()(const Eigen::VectorXd& x) {
    double f = 0.0;
    try {
      f = objective_(x);
    } catch (const std::exception& e) {
      throw OptimizeError(std::string("objective failed: ") + e.what(), rec_.trace());
    }
    return {f, noisy_ ? f + noise_(rng_) : f};
  }

 private:
  const Objective& objective_;
  std::normal_distribution<double> noise_;
  std::mt19937_64 rng_;
  bool noisy_;
  Recorder& rec_;
};

void run_gp(NoisyOracle& oracle, Recorder& rec, const Domain& domain, const AcquisitionConfig& cfg) {
  gp::GpPosterior posterior(cfg.kernel, cfg.noise_var);
  gp::CandidateCache cache(domain.unit_candidates(), cfg.kernel);
  std::vector<Selection> pending;
  std::size_t next_pending = 0;
  for (std::size_t t = 1; t <= cfg.budget && !rec.trace().stopped_early; ++t) {
    cache.sync(posterior);
    Selection s;
    if (cfg.strategy == Strategy::kBatchGreedyUcb) {
      if (next_pending >= pending.size()) {
        pending = build_batch(posterior, cache, domain, cfg, t);
        next_pending = 0;
      }
      s = pending[next_pending++];
      // Within a batch the scores come from the posterior at batch start.
      const auto i = static_cast<Eigen::Index>(s.index);
      s.mean = cache.means()(i);
      s.sigma = std::sqrt(cache.variances()(i));
    } else {
      s = select_from_predictions(domain, cfg, t, cache.means(), cache.variances());
    }
    const Observation obs = oracle(s.point);
    const Eigen::VectorXd u = domain.unit_candidates().row(static_cast<Eigen::Index>(s.index)).transpose();
    posterior = std::move(posterior).update(u, cfg.xi * obs.y);
    rec.add(IterationRecord{0, s.index, s.point, obs.y, obs.f, s.mean, s.sigma, s.beta, s.eta});
  }
}

void run_nelder_mead(NoisyOracle& oracle, Recorder& rec, const Domain& domain, const AcquisitionConfig& cfg,
                     std::uint64_t seed) {
  const double sign = cfg.mode == Mode::kMinimize ? 1.0 : -1.0;
  const Objective wrapped = [&](const Eigen::VectorXd& x) {
    const Observation obs = oracle(x);
    rec.add(IterationRecord{0, kNoCandidate, x, obs.y, obs.f, 0.0, 0.0, 0.0, 1.0});
    return sign * obs.y;
  };
  std::mt19937_64 rng(seed);
  while (rec.trace().size() < cfg.budget && !rec.trace().stopped_early) {
    NelderMeadOptions nm;
    nm.budget = cfg.budget - rec.trace().size();
    nm.stop = [&](double) { return rec.trace().stopped_early; };
    nelder_mead(wrapped, uniform_point(domain.bounds(), rng), domain.bounds(), nm);
  }
}

}  // namespace

RunTrace optimize(const Objective& objective, const Domain& domain, const AcquisitionConfig& cfg,
                  const OptimizeOptions& options) {
  cfg.validate();
  Recorder rec(cfg, options);
  // Separate streams for observation noise and Nelder-Mead restarts.
  NoisyOracle oracle(objective, cfg.observation_noise_var, options.seed ^ 0x6A09E667F3BCC909ULL, rec);
  if (cfg.strategy == Strategy::kNelderMead) {
    run_nelder_mead(oracle, rec, domain, cfg, options.seed);
  } else {
    run_gp(oracle, rec, domain, cfg);
  }
  return std::move(rec.trace());
}

}  // namespace stlmine::acq

#include "stlmine/acquisition/strategy.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace stlmine::acq {

std::string to_string(Strategy s) {
  switch (s) {
    case Strategy::kGpAcb: return "gp_acb";
    case Strategy::kGpUcb: return "gp_ucb";
    case Strategy::kBatchGreedyUcb: return "batch_greedy_ucb";
    case Strategy::kExplore: return "explore";
    case Strategy::kExploit: return "exploit";
    case Strategy::kNelderMead: return "nelder_mead";
  }
  return "unknown";
}

Strategy parse_strategy(const std::string& name) {
  for (Strategy s : {Strategy::kGpAcb, Strategy::kGpUcb, Strategy::kBatchGreedyUcb, Strategy::kExplore,
                     Strategy::kExploit, Strategy::kNelderMead}) {
    if (to_string(s) == name) return s;
  }
  throw std::invalid_argument("unknown strategy '" + name + "'");
}

bool uses_gp(Strategy s) { return s != Strategy::kNelderMead; }

void AcquisitionConfig::validate() const {
  if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("delta must lie in (0, 1)");
  if (!(xi > 0.0) || !std::isfinite(xi)) throw std::invalid_argument("xi must be positive");
  if (budget < 1) throw std::invalid_argument("budget must be at least 1");
  if (batch_size < 1) throw std::invalid_argument("batch_size must be at least 1");
  if (!(noise_var > 0.0)) throw std::invalid_argument("noise_var must be positive");
  if (!(observation_noise_var >= 0.0)) throw std::invalid_argument("observation_noise_var must be non-negative");
}

gp::Kernel default_kernel(gp::KernelFamily family, const Domain& domain) {
  const double l = domain.unit_diameter() / 10.0;
  return family == gp::KernelFamily::kGaussian ? gp::Kernel::gaussian(l) : gp::Kernel::matern(l, 2.5);
}

double beta_schedule(std::size_t t, std::size_t domain_size, double delta) {
  const double tt = static_cast<double>(t);
  const double pi_t = std::numbers::pi * std::numbers::pi * tt * tt / 6.0;
  return 2.0 * std::log(static_cast<double>(domain_size) * pi_t / delta);
}

double beta_schedule_continuous(std::size_t t, double delta) { return beta_schedule(t, 1, delta); }

double beta_for(const AcquisitionConfig& cfg, std::size_t t, std::size_t domain_size) {
  return cfg.beta_without_domain_size ? beta_schedule_continuous(t, cfg.delta)
                                      : beta_schedule(t, domain_size, cfg.delta);
}

Eigen::VectorXd eta_normalize(const Eigen::Ref<const Eigen::VectorXd>& means) {
  const double lo = means.minCoeff();
  const double hi = means.maxCoeff();
  if (!(hi > lo)) return Eigen::VectorXd::Ones(means.size());
  Eigen::VectorXd eta = (means.array() - lo) / (hi - lo);
  // Exact 1 at every argmax regardless of rounding in the division.
  for (Eigen::Index i = 0; i < eta.size(); ++i) {
    if (means(i) == hi) eta(i) = 1.0;
  }
  return eta;
}

Eigen::VectorXd acquisition_scores(Strategy strategy, const Eigen::Ref<const Eigen::VectorXd>& means,
                                   const Eigen::Ref<const Eigen::VectorXd>& sigmas, double beta,
                                   const Eigen::Ref<const Eigen::VectorXd>& eta) {
  switch (strategy) {
    case Strategy::kGpAcb:
      return means.array() + (eta.array() * beta).sqrt() * sigmas.array();
    case Strategy::kGpUcb:
    case Strategy::kBatchGreedyUcb:
      return means.array() + std::sqrt(beta) * sigmas.array();
    case Strategy::kExplore:
      return sigmas;
    case Strategy::kExploit:
      return means;
    case Strategy::kNelderMead:
      break;
  }
  throw std::invalid_argument("nelder_mead has no acquisition score");
}

std::size_t argmax_first(const Eigen::Ref<const Eigen::VectorXd>& scores) {
  if (scores.size() == 0) throw std::invalid_argument("argmax of an empty score vector");
  Eigen::Index best = 0;
  for (Eigen::Index i = 1; i < scores.size(); ++i) {
    if (scores(i) > scores(best)) best = i;
  }
  return static_cast<std::size_t>(best);
}

namespace {

Eigen::VectorXd oriented(const AcquisitionConfig& cfg, const Eigen::Ref<const Eigen::VectorXd>& means) {
  return cfg.mode == Mode::kMinimize ? Eigen::VectorXd(-means) : Eigen::VectorXd(means);
}

Selection pick(const Domain& domain, const AcquisitionConfig& cfg, Strategy strategy, double beta,
               const Eigen::Ref<const Eigen::VectorXd>& means, const Eigen::Ref<const Eigen::VectorXd>& variances,
               const std::optional<Eigen::VectorXd>& eta_override) {
  if (means.size() == 0) throw std::invalid_argument("select_next: empty candidate list");
  if (means.size() != variances.size() || means.size() != static_cast<Eigen::Index>(domain.size())) {
    throw std::invalid_argument("select_next: prediction size does not match the candidate set");
  }
  const Eigen::VectorXd m = oriented(cfg, means);
  const Eigen::VectorXd sigma = variances.cwiseMax(0.0).cwiseSqrt();
  Eigen::VectorXd eta = eta_override ? *eta_override : eta_normalize(m);
  if (eta.size() != m.size()) throw std::invalid_argument("select_next: eta override has the wrong size");
  const std::size_t idx = argmax_first(acquisition_scores(strategy, m, sigma, beta, eta));
  const auto i = static_cast<Eigen::Index>(idx);
  return Selection{idx, domain.candidate(idx), means(i), sigma(i), beta, eta(i)};
}

}  // namespace

Selection select_from_predictions(const Domain& domain, const AcquisitionConfig& cfg, std::size_t t,
                                  const Eigen::Ref<const Eigen::VectorXd>& means,
                                  const Eigen::Ref<const Eigen::VectorXd>& variances,
                                  const std::optional<Eigen::VectorXd>& eta_override) {
  if (t < 1) throw std::invalid_argument("select_next: iteration index starts at 1");
  if (cfg.strategy == Strategy::kNelderMead) throw std::invalid_argument("select_next: nelder_mead is not GP-based");
  const double beta = beta_for(cfg, t, domain.size());
  return pick(domain, cfg, cfg.strategy, beta, means, variances, eta_override);
}

Selection select_next(const gp::GpPosterior& gp, const Domain& domain, const AcquisitionConfig& cfg, std::size_t t) {
  if (domain.size() == 0) throw std::invalid_argument("select_next: empty candidate list");
  if (cfg.strategy == Strategy::kNelderMead) throw std::invalid_argument("select_next: nelder_mead is not GP-based");
  gp::CandidateCache cache(domain.unit_candidates(), gp.kernel());
  cache.sync(gp);
  if (cfg.strategy == Strategy::kBatchGreedyUcb) return build_batch(gp, cache, domain, cfg, t).front();
  return select_from_predictions(domain, cfg, t, cache.means(), cache.variances());
}

std::vector<Selection> build_batch(const gp::GpPosterior& gp, const gp::CandidateCache& cache, const Domain& domain,
                                   const AcquisitionConfig& cfg, std::size_t t) {
  if (t < 1) throw std::invalid_argument("build_batch: iteration index starts at 1");
  const double beta = beta_for(cfg, t, domain.size());
  std::vector<Selection> batch;
  batch.reserve(cfg.batch_size);
  gp::GpPosterior fantasy = gp;
  gp::CandidateCache view = cache;
  view.sync(fantasy);
  for (std::size_t b = 0; b < cfg.batch_size; ++b) {
    Selection s = pick(domain, cfg, Strategy::kGpUcb, beta, view.means(), view.variances(), std::nullopt);
    batch.push_back(s);
    if (b + 1 == cfg.batch_size) break;
    const Eigen::VectorXd u = domain.unit_candidates().row(static_cast<Eigen::Index>(s.index)).transpose();
    fantasy = std::move(fantasy).update(u, s.mean);
    view.sync(fantasy);
  }
  return batch;
}

double regret_constant(double noise_var) { return 8.0 / std::log1p(1.0 / noise_var); }

double regret_bound(double T, double beta_T, double gamma_T, double n, double noise_var) {
  return std::sqrt(n * regret_constant(noise_var) * T * beta_T * gamma_T);
}

}  // namespace stlmine::acq

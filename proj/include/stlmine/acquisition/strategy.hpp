#pragma once

#include <Eigen/Core>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "stlmine/acquisition/domain.hpp"
#include "stlmine/gp/candidate_cache.hpp"
#include "stlmine/gp/kernel.hpp"
#include "stlmine/gp/posterior.hpp"

namespace stlmine::acq {

enum class Strategy { kGpAcb, kGpUcb, kBatchGreedyUcb, kExplore, kExploit, kNelderMead };
enum class Mode { kMaximize, kMinimize };

std::string to_string(Strategy s);
/// Accepts gp_acb, gp_ucb, batch_greedy_ucb, explore, exploit, nelder_mead.
Strategy parse_strategy(const std::string& name);
bool uses_gp(Strategy s);

struct AcquisitionConfig {
  Strategy strategy = Strategy::kGpAcb;
  /// Confidence parameter of the beta schedule, in (0, 1).
  double delta = 0.1;
  /// Objective scaling applied to values entering the GP only.
  double xi = 1.0;
  /// Iteration (oracle evaluation) budget T.
  std::size_t budget = 58;
  std::size_t batch_size = 5;
  /// Kernel over unit-cube coordinates of the domain.
  gp::Kernel kernel = gp::Kernel::matern(0.1, 2.5);
  /// GP observation-noise variance (nugget).
  double noise_var = 0.025;
  Mode mode = Mode::kMaximize;
  /// Use the beta schedule without the |D| term (continuous-domain variant).
  bool beta_without_domain_size = false;
  /// Variance of Gaussian noise added to every oracle value; 0 = noiseless.
  double observation_noise_var = 0.0;
  /// Sampling time of the experiment. Kept apart from `delta`; not used by
  /// the optimizer.
  double sampling_time = 0.1;

  /// Throws std::invalid_argument when delta, xi, budget or batch_size is out of range.
  void validate() const;
};

/// Kernel of the given family with lengthscale one tenth of the unit-cube
/// diameter of `domain` (Matérn uses nu = 2.5).
gp::Kernel default_kernel(gp::KernelFamily family, const Domain& domain);

/// beta_t = 2 ln(|D| pi^2 t^2 / (6 delta)).
double beta_schedule(std::size_t t, std::size_t domain_size, double delta);
/// beta_t = 2 ln(pi^2 t^2 / (6 delta)).
double beta_schedule_continuous(std::size_t t, double delta);
double beta_for(const AcquisitionConfig& cfg, std::size_t t, std::size_t domain_size);

/// (m - min m) / (max m - min m); all ones when the means are constant.
Eigen::VectorXd eta_normalize(const Eigen::Ref<const Eigen::VectorXd>& means);

/// Candidate scores for a maximization problem. `means` are already in
/// maximization orientation; `eta` is used by GP-ACB only.
Eigen::VectorXd acquisition_scores(Strategy strategy, const Eigen::Ref<const Eigen::VectorXd>& means,
                                   const Eigen::Ref<const Eigen::VectorXd>& sigmas, double beta,
                                   const Eigen::Ref<const Eigen::VectorXd>& eta);

/// First index of the maximum (ties go to the lowest index).
std::size_t argmax_first(const Eigen::Ref<const Eigen::VectorXd>& scores);

struct Selection {
  std::size_t index = 0;
  Eigen::VectorXd point;
  /// Posterior mean / sd at the chosen candidate, in the GP's value space.
  double mean = 0.0;
  double sigma = 0.0;
  double beta = 0.0;
  double eta = 1.0;
};

/// Chooses the next candidate from precomputed posterior predictions. The
/// GP models xi * y; in minimize mode means are negated before scoring.
/// `eta_override` replaces the normalized mean (used to check the GP-UCB
/// reduction). Batch-greedy returns the first element of a fresh batch.
Selection select_from_predictions(const Domain& domain, const AcquisitionConfig& cfg, std::size_t t,
                                  const Eigen::Ref<const Eigen::VectorXd>& means,
                                  const Eigen::Ref<const Eigen::VectorXd>& variances,
                                  const std::optional<Eigen::VectorXd>& eta_override = std::nullopt);

/// Predicts every candidate with `gp` and selects. Throws std::invalid_argument
/// for an empty candidate set or the nelder_mead strategy.
Selection select_next(const gp::GpPosterior& gp, const Domain& domain, const AcquisitionConfig& cfg, std::size_t t);

/// Greedy batch of cfg.batch_size UCB picks. After each pick the posterior
/// is updated with its own mean as a fantasy observation, which leaves means
/// unchanged and shrinks variances around the pick.
std::vector<Selection> build_batch(const gp::GpPosterior& gp, const gp::CandidateCache& cache, const Domain& domain,
                                   const AcquisitionConfig& cfg, std::size_t t);

/// C1 = 8 / ln(1 + 1/noise_var).
double regret_constant(double noise_var);
/// sqrt(n * C1 * T * beta_T * gamma_T).
double regret_bound(double T, double beta_T, double gamma_T, double n, double noise_var);

}  // namespace stlmine::acq

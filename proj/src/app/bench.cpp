#include "stlmine/app/bench.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "stlmine/acquisition/optimize.hpp"
#include "stlmine/app/worker_pool.hpp"
#include "stlmine/common/number_format.hpp"
#include "stlmine/common/random.hpp"
#include "stlmine/mining/falsify.hpp"
#include "stlmine/systems/ackley.hpp"

namespace stlmine::app {

namespace {

gp::Kernel make_kernel(gp::KernelFamily family, std::size_t dim, std::optional<double> lengthscale) {
  const double l = lengthscale.value_or(std::sqrt(static_cast<double>(dim)) / 10.0);
  return family == gp::KernelFamily::kGaussian ? gp::Kernel::gaussian(l) : gp::Kernel::matern(l, 2.5);
}

std::string kernel_name(gp::KernelFamily f) { return f == gp::KernelFamily::kGaussian ? "gaussian" : "matern"; }

std::vector<double> column_mean(const std::vector<std::vector<double>>& rows) {
  std::vector<double> mean(rows.front().size(), 0.0);
  for (const auto& r : rows) {
    for (std::size_t t = 0; t < r.size(); ++t) mean[t] += r[t];
  }
  for (double& m : mean) m /= static_cast<double>(rows.size());
  return mean;
}

// Runs shorter than the budget (early stop) hold their last value.
std::vector<double> padded(std::vector<double> v, std::size_t n) {
  if (v.empty()) v.push_back(0.0);
  v.resize(n, v.back());
  return v;
}

}  // namespace

std::string Arm::label() const {
  return acq::to_string(strategy) + "(" + kernel_name(kernel) + ",xi=" + format_number(xi) + ")";
}

std::vector<double> AckleyArmReport::final_regrets() const {
  std::vector<double> out;
  for (const auto& t : trials) out.push_back(t.regret.back());
  return out;
}

std::size_t iterations_to_within(const std::vector<double>& curve, double fraction) {
  if (curve.empty()) return 0;
  const double target = curve.back() * (1.0 + fraction);
  for (std::size_t t = 0; t < curve.size(); ++t) {
    if (curve[t] <= target) return t + 1;
  }
  return curve.size();
}

AckleyReport run_ackley_benchmark(const AckleyBenchConfig& cfg) {
  const std::vector<acq::Interval> box(2, acq::Interval{-systems::kAckleyHalfWidth, systems::kAckleyHalfWidth});
  const acq::Objective objective = [](const Eigen::VectorXd& x) { return systems::ackley(x(0), x(1)); };

  AckleyReport report;
  for (const Arm& arm : cfg.arms) {
    AckleyArmReport ar;
    ar.arm = arm;
    ar.trials.resize(cfg.trials);
    acq::AcquisitionConfig acfg;
    acfg.strategy = arm.strategy;
    acfg.delta = cfg.delta;
    acfg.xi = arm.xi;
    acfg.budget = cfg.budget;
    acfg.batch_size = cfg.batch_size;
    acfg.kernel = make_kernel(arm.kernel, box.size(), cfg.lengthscale);
    acfg.noise_var = cfg.noise_var;
    acfg.mode = acq::Mode::kMinimize;
    acfg.beta_without_domain_size = cfg.beta_without_domain_size;
    acfg.observation_noise_var = cfg.observation_noise_var;
    acfg.validate();

    parallel_for(cfg.trials, cfg.jobs, [&](std::size_t i) {
      const acq::Domain domain = acq::Domain::sample(box, cfg.candidates, derive_seed(cfg.seed, 2 * i));
      double optimum = objective(domain.candidate(0));
      for (std::size_t c = 1; c < domain.size(); ++c) optimum = std::min(optimum, objective(domain.candidate(c)));
      acq::OptimizeOptions options;
      options.seed = derive_seed(cfg.seed, 2 * i + 1);
      options.known_optimum = optimum;
      const acq::RunTrace run = acq::optimize(objective, domain, acfg, options);

      AckleyTrial& trial = ar.trials[i];
      trial.trial = i;
      trial.regret = run.regret;
      trial.best_regret = run.best_regret;
      trial.best_observed = run.best_observed;
      trial.cumulative_regret = run.cumulative_regret.value_or(0.0);
      trial.information_gain = run.information_gain.back();
      trial.eta_min = run.eta_min;
      trial.eta_max = run.eta_max;
      trial.beta_final = acq::beta_for(acfg, run.size(), domain.size());
      const double n = arm.strategy == acq::Strategy::kGpAcb ? run.eta_max : 1.0;
      trial.regret_bound = acq::regret_bound(static_cast<double>(run.size()), trial.beta_final,
                                             trial.information_gain, n, cfg.noise_var);
    });

    std::vector<std::vector<double>> regrets, best, observed;
    for (const auto& t : ar.trials) {
      regrets.push_back(padded(t.regret, cfg.budget));
      best.push_back(padded(t.best_regret, cfg.budget));
      observed.push_back(padded(t.best_observed, cfg.budget));
    }
    ar.mean_regret = column_mean(regrets);
    ar.mean_best_regret = column_mean(best);
    ar.mean_best_observed = column_mean(observed);
    report.arms.push_back(std::move(ar));
  }
  return report;
}

acq::AcquisitionConfig falsification_acquisition(const systems::System& system, const Arm& arm,
                                                 const acq::AcquisitionConfig& base,
                                                 std::optional<double> lengthscale) {
  acq::AcquisitionConfig acfg = base;
  acfg.strategy = arm.strategy;
  acfg.xi = arm.xi;
  acfg.kernel = make_kernel(arm.kernel, system.x0_dim(), lengthscale);
  return acfg;
}

double MiningArmReport::mean_simulations() const {
  double sum = 0.0;
  for (const auto& t : trials) sum += static_cast<double>(t.result.total_simulations);
  return trials.empty() ? 0.0 : sum / static_cast<double>(trials.size());
}

MiningReport run_mining_benchmark(const systems::System& system, const MiningBenchConfig& cfg) {
  const mining::Template tmpl = mining::make_template(cfg.template_name, system.horizon(), system.dt());
  MiningReport report;
  report.template_name = tmpl.name;
  report.epsilon = cfg.epsilon.value_or(tmpl.epsilon);
  for (const auto& p : tmpl.formula.params()) report.parameter_names.push_back(p.name);

  for (const Arm& arm : cfg.arms) {
    MiningArmReport ar;
    ar.arm = arm;
    ar.trials.resize(cfg.trials);
    mining::MiningConfig mcfg = cfg.base;
    mcfg.epsilon = report.epsilon;
    mcfg.acquisition = falsification_acquisition(system, arm, cfg.base.acquisition, cfg.lengthscale);
    parallel_for(cfg.trials, cfg.jobs, [&](std::size_t i) {
      mining::MiningConfig local = mcfg;
      local.seed = derive_seed(cfg.seed, i);
      MiningTrial& trial = ar.trials[i];
      trial.trial = i;
      trial.result = mining::mine(system, tmpl.formula, local);
      if (cfg.validate_samples > 0 && trial.result.status == mining::MiningStatus::kMined) {
        const stl::Formula mined = stl::instantiate(tmpl.formula, trial.result.valuation);
        trial.validation_min =
            mining::validate(system, mined, cfg.validate_samples, derive_seed(local.seed, 0xFA11DA7EULL))
                .min_robustness;
      }
    });
    report.arms.push_back(std::move(ar));
  }
  return report;
}

void write_ackley_curves(std::ostream& out, const AckleyReport& report) {
  out << "# stlmine ackley-curves v1\n";
  out << "strategy,kernel,xi,t,mean_regret,mean_best_regret,mean_best_observed\n";
  for (const auto& a : report.arms) {
    for (std::size_t t = 0; t < a.mean_regret.size(); ++t) {
      out << acq::to_string(a.arm.strategy) << ',' << kernel_name(a.arm.kernel) << ',' << format_number(a.arm.xi)
          << ',' << t + 1 << ',' << format_number(a.mean_regret[t]) << ',' << format_number(a.mean_best_regret[t])
          << ',' << format_number(a.mean_best_observed[t])
          << '\n';
    }
  }
}

void write_ackley_trials(std::ostream& out, const AckleyReport& report) {
  out << "# stlmine ackley-trials v1\n";
  out << "strategy,kernel,xi,trial,final_regret,final_best_regret,cumulative_regret,information_gain,"
         "eta_min,eta_max,beta_final,regret_bound,bound_holds\n";
  for (const auto& a : report.arms) {
    for (const auto& t : a.trials) {
      out << acq::to_string(a.arm.strategy) << ',' << kernel_name(a.arm.kernel) << ',' << format_number(a.arm.xi)
          << ',' << t.trial << ',' << format_number(t.regret.back()) << ',' << format_number(t.best_regret.back())
          << ',' << format_number(t.cumulative_regret) << ',' << format_number(t.information_gain) << ','
          << format_number(t.eta_min) << ',' << format_number(t.eta_max) << ',' << format_number(t.beta_final)
          << ',' << format_number(t.regret_bound) << ',' << (t.cumulative_regret <= t.regret_bound ? 1 : 0)
          << '\n';
    }
  }
}

void write_mining_trials(std::ostream& out, const MiningReport& report) {
  out << "# stlmine mining-trials v1\n";
  out << "template,strategy,kernel,xi,trial,status";
  for (const auto& p : report.parameter_names) out << ',' << p;
  out << ",robustness,total_simulations,rounds,validation_min\n";
  for (const auto& a : report.arms) {
    for (const auto& t : a.trials) {
      const auto& r = t.result;
      out << report.template_name << ',' << acq::to_string(a.arm.strategy) << ',' << kernel_name(a.arm.kernel) << ','
          << format_number(a.arm.xi) << ',' << t.trial << ',' << mining::to_string(r.status);
      for (const auto& p : report.parameter_names) {
        const auto it = r.valuation.find(p);
        out << ',' << (it == r.valuation.end() ? std::string() : format_number(it->second));
      }
      out << ',' << format_number(r.min_robustness_on_samples) << ',' << r.total_simulations << ',' << r.rounds << ','
          << (t.validation_min ? format_number(*t.validation_min) : std::string()) << '\n';
    }
  }
}

void write_mining_summary(std::ostream& out, const MiningReport& report) {
  out << "# stlmine mining-summary v1\n";
  out << "template,strategy,kernel,xi,trials,mined,mean_simulations,mean_rounds,mean_robustness\n";
  for (const auto& a : report.arms) {
    std::size_t mined = 0;
    double rounds = 0.0, rob = 0.0;
    for (const auto& t : a.trials) {
      if (t.result.status == mining::MiningStatus::kMined) ++mined;
      rounds += static_cast<double>(t.result.rounds);
      rob += t.result.min_robustness_on_samples;
    }
    const auto n = static_cast<double>(std::max<std::size_t>(1, a.trials.size()));
    out << report.template_name << ',' << acq::to_string(a.arm.strategy) << ',' << kernel_name(a.arm.kernel) << ','
        << format_number(a.arm.xi) << ',' << a.trials.size() << ',' << mined << ','
        << format_number(a.mean_simulations()) << ',' << format_number(rounds / n) << ',' << format_number(rob / n)
        << '\n';
  }
}

}  // namespace stlmine::app

// jarzynski.cc

#include "entropic/jarzynski.h"

#include <atomic>
#include <cmath>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace entropic {

WorkRecord run_trajectory(const StepSystem& system, const Schedule& schedule, uint64_t seed,
                          uint64_t stream, const TrajectoryParams& params) {
  if (params.therm_updates < 0) throw std::invalid_argument("run_trajectory: therm_updates < 0");
  if (params.sweeps_per_step < 1) throw std::invalid_argument("run_trajectory: sweeps_per_step < 1");
  if (schedule.beta != system.spec.beta)
    throw std::invalid_argument("run_trajectory: schedule and lattice disagree on beta");

  CounterRng rng(seed, stream);
  IsingSystem ising(system.links, system.base_couplings, system.n_sites);
  system.apply_lambda(ising, schedule, 0);

  SpinConfiguration spins = ising.random_configuration(rng);
  for (int i = 0; i < params.therm_updates; ++i) ising.swendsen_wang_update(spins, rng);

  WorkRecord record;
  record.seed = seed;
  record.stream = stream;
  record.direction = schedule.direction;
  if (params.record_steps) record.steps.reserve(schedule.n_steps);

  for (int k = 0; k < schedule.n_steps; ++k) {
    if (params.stage_resample_updates > 0 && schedule.protocol == Protocol::P2 && k > 0 &&
        k % schedule.stage_length == 0) {
      // staged-increment variant: re-equilibrate at the frozen couplings
      // before the next subset starts moving (zero work)
      for (int i = 0; i < params.stage_resample_updates; ++i) ising.swendsen_wang_update(spins, rng);
    }
    const double dw = step_work(spins, system, schedule, k);
    record.work += dw;
    if (params.record_steps) record.steps.push_back(dw);
    system.apply_lambda(ising, schedule, k + 1);
    for (int i = 0; i < params.sweeps_per_step; ++i) ising.swendsen_wang_update(spins, rng);
  }
  return record;
}

std::vector<WorkRecord> run_ensemble(const StepSystem& system, const Schedule& schedule,
                                     uint64_t seed, uint64_t stream_base, int n_traj,
                                     int n_workers, const TrajectoryParams& params) {
  if (n_traj < 1) throw std::invalid_argument("run_ensemble: n_traj < 1");
  if (n_workers < 1) n_workers = 1;
  std::vector<WorkRecord> records(n_traj);
  std::atomic<int> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;

  auto worker = [&]() {
    for (;;) {
      const int i = next.fetch_add(1);
      if (i >= n_traj) return;
      try {
        records[i] = run_trajectory(system, schedule, seed, stream_base + i, params);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        return;
      }
    }
  };

  if (n_workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(n_workers);
    for (int w = 0; w < n_workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (error) std::rethrow_exception(error);
  return records;
}

std::vector<double> work_values(const std::vector<WorkRecord>& records) {
  std::vector<double> w;
  w.reserve(records.size());
  for (const WorkRecord& r : records) w.push_back(r.work);
  return w;
}

JarzynskiEstimate estimate_log_ratio(const std::vector<double>& work, StepDirection direction,
                                     int n_steps) {
  const int n = static_cast<int>(work.size());
  if (n < 2) throw std::invalid_argument("estimate_log_ratio: need at least 2 work samples");

  double shift = -work[0];
  double mean_w = 0.0;
  for (double w : work) {
    shift = std::max(shift, -w);
    mean_w += w;
  }
  mean_w /= n;
  double sum = 0.0;
  for (double w : work) sum += std::exp(-w - shift);
  const double log_ratio = shift + std::log(sum / n);

  // Jensen: log <exp(-W)> >= -<W>, with equality iff all W coincide
  if (log_ratio + mean_w < -1e-9 * (1.0 + std::abs(mean_w)))
    throw std::logic_error("estimate_log_ratio: Jensen bound violated, estimator is broken");

  // delete-1 jackknife on the log estimate
  double mean_loo = 0.0;
  std::vector<double> loo(n);
  for (int i = 0; i < n; ++i) {
    const double rest = sum - std::exp(-work[i] - shift);
    loo[i] = shift + std::log(rest / (n - 1));
    mean_loo += loo[i];
  }
  mean_loo /= n;
  double var = 0.0;
  for (int i = 0; i < n; ++i) var += (loo[i] - mean_loo) * (loo[i] - mean_loo);
  var *= static_cast<double>(n - 1) / n;

  JarzynskiEstimate est;
  est.log_ratio = log_ratio;
  est.stat_err = std::sqrt(var);
  est.n_traj = n;
  est.n_steps = n_steps;
  est.direction = direction;
  return est;
}

JarzynskiEstimate estimate_log_ratio(const std::vector<WorkRecord>& records) {
  if (records.size() < 2) throw std::invalid_argument("estimate_log_ratio: need at least 2 records");
  for (const WorkRecord& r : records)
    if (r.direction != records.front().direction)
      throw std::invalid_argument("estimate_log_ratio: mixed directions in one ensemble");
  return estimate_log_ratio(work_values(records), records.front().direction, 0);
}

ConsistencyReport direct_reverse_check(const JarzynskiEstimate& grow,
                                       const JarzynskiEstimate& shrink) {
  ConsistencyReport rep;
  rep.sum = grow.log_ratio + shrink.log_ratio;
  rep.err = std::hypot(grow.stat_err, shrink.stat_err);
  rep.pull = rep.err > 0.0 ? rep.sum / rep.err : (rep.sum == 0.0 ? 0.0 : INFINITY);
  rep.flagged = std::abs(rep.pull) > 3.0;
  return rep;
}

std::pair<double, double> combined_log_ratio(const JarzynskiEstimate& grow,
                                             const JarzynskiEstimate& shrink) {
  // degenerate samples (all work values equal, e.g. beta = 0) carry zero
  // jackknife error; fall back to the plain mean
  if (grow.stat_err == 0.0 || shrink.stat_err == 0.0) {
    const double value = 0.5 * (grow.log_ratio - shrink.log_ratio);
    return {value, 0.5 * std::hypot(grow.stat_err, shrink.stat_err)};
  }
  const double wg = 1.0 / (grow.stat_err * grow.stat_err);
  const double ws = 1.0 / (shrink.stat_err * shrink.stat_err);
  const double value = (wg * grow.log_ratio + ws * (-shrink.log_ratio)) / (wg + ws);
  return {value, std::sqrt(1.0 / (wg + ws))};
}

double sample_variance(const std::vector<double>& values) {
  const size_t n = values.size();
  if (n < 2) throw std::invalid_argument("sample_variance: need at least 2 values");
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= n;
  double var = 0.0;
  for (double v : values) var += (v - mean) * (v - mean);
  return var / (n - 1);
}

}  // namespace entropic

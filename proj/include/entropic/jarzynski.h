// jarzynski.h
//
// Non-equilibrium trajectory ensembles and the conversion of work samples
// into free-energy-difference estimates: <exp(-W)> = Z_f/Z_i over
// trajectories that start in equilibrium at lambda_0 and are driven through
// the schedule.

#pragma once

#include <cstdint>
#include <vector>

#include "entropic/schedule.h"

namespace entropic {

struct WorkRecord {
  double work = 0.0;            // accumulated dimensionless work W
  std::vector<double> steps;    // optional per-step trace (kept only on request)
  uint64_t seed = 0;
  uint64_t stream = 0;
  StepDirection direction = StepDirection::Grow;
};

struct TrajectoryParams {
  int therm_updates = 1000;      // equilibrium updates before the evolution
  int sweeps_per_step = 1;       // cluster updates per lambda increment
  int stage_resample_updates = 0;  // extra equilibrium updates at each P2 stage
                                   // start (the staged increment variant)
  bool record_steps = false;
};

struct JarzynskiEstimate {
  double log_ratio = 0.0;  // estimate of log(Z_f / Z_i)
  double stat_err = 0.0;   // delete-1 jackknife error of the log estimate
  int n_traj = 0;
  int n_steps = 0;
  StepDirection direction = StepDirection::Grow;
};

// One trajectory: thermalize at lambda(0), then for k = 0..N-1 accumulate
// step_work(k) and update at the couplings of lambda(k+1).
WorkRecord run_trajectory(const StepSystem& system, const Schedule& schedule, uint64_t seed,
                          uint64_t stream, const TrajectoryParams& params);

// n_traj trajectories on a pool of workers; trajectory i uses stream
// stream_base + i, results are collected in trajectory order regardless of
// scheduling
std::vector<WorkRecord> run_ensemble(const StepSystem& system, const Schedule& schedule,
                                     uint64_t seed, uint64_t stream_base, int n_traj,
                                     int n_workers, const TrajectoryParams& params);

// log-mean-exp of -W, max-shifted; error from the delete-1 jackknife
JarzynskiEstimate estimate_log_ratio(const std::vector<WorkRecord>& records);
JarzynskiEstimate estimate_log_ratio(const std::vector<double>& work, StepDirection direction,
                                     int n_steps);

struct ConsistencyReport {
  double sum = 0.0;       // grow.log_ratio + shrink.log_ratio; 0 in expectation
  double err = 0.0;
  double pull = 0.0;
  bool flagged = false;   // |pull| > 3
};

// direct/reverse identity <exp(-W)>_grow = 1/<exp(-W)>_shrink
ConsistencyReport direct_reverse_check(const JarzynskiEstimate& grow,
                                       const JarzynskiEstimate& shrink);

// inverse-variance weighted mean of the two one-sided estimates of
// log(Z_n(l)/Z_n(l-1)); (value, error)
std::pair<double, double> combined_log_ratio(const JarzynskiEstimate& grow,
                                             const JarzynskiEstimate& shrink);

double sample_variance(const std::vector<double>& values);
std::vector<double> work_values(const std::vector<WorkRecord>& records);

}  // namespace entropic

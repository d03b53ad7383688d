// schedule.h
//
// Time-dependent coupling protocols interpolating between the replica
// partition functions Z_n(l-1) and Z_n(l), and the per-step work they
// produce. A coupling step drives the edge pairs of one cut column from
// (beta, 0) to (0, beta) through beta^(k,k) = beta*(1-lambda),
// beta^(k,k+1) = beta*lambda.

#pragma once

#include <vector>

#include "entropic/dynamics.h"
#include "entropic/lattice.h"

namespace entropic {

enum class Protocol { P1, P2 };

struct Schedule {
  Protocol protocol = Protocol::P1;
  StepDirection direction = StepDirection::Grow;
  int n_steps = 0;       // N
  int n_subsets = 1;     // 1 for P1; L^(D-2) stage subsets for P2
  int stage_length = 0;  // N / n_subsets (P2)
  double beta = 0.0;
  std::vector<int> stage_order;  // P2 stage permutation; identity by default

  // lambda of stage subset `subset` at discrete time k in [0, N]
  double lambda(int subset, int k) const;
};

// all varied couplings share lambda = m/N (grow) or 1 - m/N (shrink)
Schedule protocol1_schedule(double beta, int n_steps, StepDirection direction);

// the varied pairs are partitioned into `n_subsets` transverse subsets;
// subset j ramps linearly during its stage of length N/n_subsets and is
// frozen otherwise. Shrink is the exact time reversal of grow.
Schedule protocol2_schedule(double beta, int n_steps, int n_subsets, StepDirection direction,
                            std::vector<int> stage_order = {});

// one varied (intra, inter) slot pair of the toggled column
struct VariedPair {
  int32_t site = 0;
  int32_t up_same = 0;
  int32_t up_next = 0;
  size_t intra_link = 0;  // indices into StepSystem::links
  size_t inter_link = 0;
  int subset = 0;         // transverse stage subset (P2)
};

// The simulated system for one coupling step l_low <-> l_high: all static
// links plus BOTH coupling slots of the toggled column. Immutable and
// shareable among trajectory workers.
struct StepSystem {
  LatticeSpec spec;
  int l_high = 0;  // step connects cut l_high-1 (lambda=0) and l_high (lambda=1)
  std::vector<Link> links;
  CouplingAssignment base_couplings;  // all lambda-independent values (beta)
  std::vector<VariedPair> varied;
  long n_sites = 0;

  // couplings at the given lambda assignment, pair by pair
  void apply_lambda(IsingSystem& system, const Schedule& schedule, int k) const;
};

// build the system for the step between cut lengths l_high-1 and l_high
StepSystem make_step_system(const LatticeSpec& spec, int l_high, int tau0 = 0);

// work of advancing the schedule from time k to k+1 on a frozen
// configuration: sum over varied pairs of beta * dlambda * (ss_intra - ss_inter)
double step_work(const SpinConfiguration& spins, const StepSystem& system,
                 const Schedule& schedule, int k);

}  // namespace entropic

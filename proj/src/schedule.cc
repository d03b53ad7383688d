// schedule.cc

#include "entropic/schedule.h"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace entropic {

double Schedule::lambda(int subset, int k) const {
  if (k < 0 || k > n_steps)
    throw std::out_of_range("Schedule::lambda: time " + std::to_string(k) + " outside [0, N=" +
                            std::to_string(n_steps) + "]");
  const int kk = (direction == StepDirection::Grow) ? k : n_steps - k;
  if (protocol == Protocol::P1) return static_cast<double>(kk) / n_steps;
  const int pos = stage_order.empty() ? subset : stage_order[subset];
  const double u = (static_cast<double>(kk) - static_cast<double>(pos) * stage_length) / stage_length;
  return std::clamp(u, 0.0, 1.0);
}

Schedule protocol1_schedule(double beta, int n_steps, StepDirection direction) {
  if (n_steps < 1) throw std::invalid_argument("protocol1_schedule: N must be >= 1");
  Schedule s;
  s.protocol = Protocol::P1;
  s.direction = direction;
  s.n_steps = n_steps;
  s.n_subsets = 1;
  s.stage_length = n_steps;
  s.beta = beta;
  return s;
}

Schedule protocol2_schedule(double beta, int n_steps, int n_subsets, StepDirection direction,
                            std::vector<int> stage_order) {
  if (n_steps < 1) throw std::invalid_argument("protocol2_schedule: N must be >= 1");
  if (n_subsets < 1) throw std::invalid_argument("protocol2_schedule: n_subsets must be >= 1");
  if (n_steps % n_subsets != 0)
    throw std::invalid_argument("protocol2_schedule: N = " + std::to_string(n_steps) +
                                " not divisible by the " + std::to_string(n_subsets) + " stage subsets");
  if (!stage_order.empty()) {
    std::vector<int> sorted = stage_order;
    std::sort(sorted.begin(), sorted.end());
    for (int i = 0; i < n_subsets; ++i)
      if (i >= static_cast<int>(sorted.size()) || sorted[i] != i)
        throw std::invalid_argument("protocol2_schedule: stage_order is not a permutation");
  }
  Schedule s;
  s.protocol = Protocol::P2;
  s.direction = direction;
  s.n_steps = n_steps;
  s.n_subsets = n_subsets;
  s.stage_length = n_steps / n_subsets;
  s.beta = beta;
  s.stage_order = std::move(stage_order);
  return s;
}

StepSystem make_step_system(const LatticeSpec& spec, int l_high, int tau0) {
  if (l_high < 1 || l_high > spec.extent)
    throw std::invalid_argument("make_step_system: step index " + std::to_string(l_high) +
                                " outside [1, L=" + std::to_string(spec.extent) + "]");
  // base geometry at the lower cut; the toggled column l_high-1 gets both
  // coupling slots appended, everything else keeps its static link
  ReplicaLattice base(spec, CutSpec{l_high - 1, tau0});

  StepSystem sys;
  sys.spec = spec;
  sys.l_high = l_high;
  sys.n_sites = base.n_sites();

  std::vector<CutPair> toggled = base.edge_pairs_for_step(l_high - 1, StepDirection::Grow);
  // drop the toggled column's static intra links; they reappear as the
  // lambda-driven pair slots
  for (const Link& l : base.links()) {
    bool is_toggled_intra = false;
    if (l.cls == LinkClass::IntraCut)
      for (const CutPair& p : toggled)
        if (l.a == p.site && l.b == p.up_same) {
          is_toggled_intra = true;
          break;
        }
    if (!is_toggled_intra) sys.links.push_back(l);
  }
  sys.base_couplings.assign(sys.links.size(), spec.beta);

  for (const CutPair& p : toggled) {
    VariedPair v;
    v.site = p.site;
    v.up_same = p.up_same;
    v.up_next = p.up_next;
    v.subset = p.transverse;
    v.intra_link = sys.links.size();
    sys.links.push_back({p.site, p.up_same, LinkClass::IntraCut});
    sys.base_couplings.push_back(spec.beta);  // scaled by (1-lambda) at runtime
    v.inter_link = sys.links.size();
    sys.links.push_back({p.site, p.up_next, LinkClass::InterCut});
    sys.base_couplings.push_back(0.0);
    sys.varied.push_back(v);
  }
  return sys;
}

void StepSystem::apply_lambda(IsingSystem& system, const Schedule& schedule, int k) const {
  for (const VariedPair& v : varied) {
    const double lam = schedule.lambda(v.subset, k);
    system.set_coupling(v.intra_link, spec.beta * (1.0 - lam));
    system.set_coupling(v.inter_link, spec.beta * lam);
  }
}

double step_work(const SpinConfiguration& spins, const StepSystem& system,
                 const Schedule& schedule, int k) {
  if (k < 0 || k >= schedule.n_steps)
    throw std::out_of_range("step_work: step index " + std::to_string(k) + " outside [0, N)");
  double w = 0.0;
  for (const VariedPair& v : system.varied) {
    const double dlam = schedule.lambda(v.subset, k + 1) - schedule.lambda(v.subset, k);
    if (dlam == 0.0) continue;
    const double ss_intra = spins[v.site] * spins[v.up_same];
    const double ss_inter = spins[v.site] * spins[v.up_next];
    w += system.spec.beta * dlam * (ss_intra - ss_inter);
  }
  return w;
}

}  // namespace entropic

// dynamics.h
//
// Equilibrium updates of a spin configuration under an arbitrary
// non-negative per-link coupling assignment: Swendsen-Wang cluster updates
// (primary) and single-site Metropolis sweeps (cross-check), plus the
// reduced-energy bookkeeping they share.

#pragma once

#include <cstdint>
#include <vector>

#include "entropic/lattice.h"
#include "entropic/rng.h"

namespace entropic {

using SpinConfiguration = std::vector<int8_t>;       // entries in {-1, +1}
using CouplingAssignment = std::vector<double>;      // one coupling per link

// -sum_links beta_link * sigma_a * sigma_b
double reduced_energy(const SpinConfiguration& spins, const std::vector<Link>& links,
                      const CouplingAssignment& couplings);

// Owns the link table, coupling values, cached bond-activation
// probabilities and the union-find scratch for one trajectory worker.
// Couplings must stay >= 0 (ferromagnetic).
class IsingSystem {
 public:
  IsingSystem(std::vector<Link> links, CouplingAssignment couplings, long n_sites);

  long n_sites() const { return n_sites_; }
  const std::vector<Link>& links() const { return links_; }
  const CouplingAssignment& couplings() const { return couplings_; }

  void set_coupling(size_t link, double value);

  double reduced_energy(const SpinConfiguration& spins) const;

  // energy change of flipping one spin, from the local field
  double flip_delta(const SpinConfiguration& spins, int site) const;

  // one full cluster update: bonds with equal spins activate with
  // probability 1 - exp(-2*beta_link), components flip with probability 1/2
  void swendsen_wang_update(SpinConfiguration& spins, CounterRng& rng);

  // one lexicographic single-spin Metropolis sweep, acceptance
  // min(1, exp(-dH/T))
  void metropolis_sweep(SpinConfiguration& spins, CounterRng& rng);

  SpinConfiguration random_configuration(CounterRng& rng) const;

 private:
  void check_spins(const SpinConfiguration& spins) const;

  long n_sites_;
  std::vector<Link> links_;
  CouplingAssignment couplings_;
  std::vector<double> activation_;          // per link, 1 - exp(-2*beta)
  std::vector<int32_t> parent_;             // union-find scratch
  std::vector<uint8_t> flip_;               // per-root flip decision
  std::vector<int32_t> adjacency_offset_;   // CSR adjacency for sweeps
  std::vector<std::pair<int32_t, int32_t>> adjacency_;  // (neighbor, link)
};

}  // namespace entropic

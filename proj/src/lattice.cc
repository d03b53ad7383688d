// lattice.cc

#include "entropic/lattice.h"

#include <cmath>
#include <stdexcept>
#include <string>

namespace entropic {

void LatticeSpec::validate() const {
  if (dim != 2 && dim != 3)
    throw std::invalid_argument("LatticeSpec: dim must be 2 or 3, got " + std::to_string(dim));
  if (extent < 2)
    throw std::invalid_argument("LatticeSpec: spatial extent must be >= 2, got " + std::to_string(extent));
  if (time_extent < 2)
    throw std::invalid_argument("LatticeSpec: time extent must be >= 2, got " + std::to_string(time_extent));
  if (n_replicas < 1)
    throw std::invalid_argument("LatticeSpec: n_replicas must be >= 1, got " + std::to_string(n_replicas));
  if (!(beta >= 0.0) || !std::isfinite(beta))
    throw std::invalid_argument("LatticeSpec: beta must be finite and >= 0");
}

long LatticeSpec::transverse_extent() const { return dim == 3 ? extent : 1; }

long LatticeSpec::sites_per_replica() const {
  long slice = static_cast<long>(extent) * transverse_extent();
  return slice * time_extent;
}

long LatticeSpec::total_sites() const { return sites_per_replica() * n_replicas; }

// site index: row-major over (replica, tau, transverse, column); fixed so
// that link enumeration (and therefore every RNG-consuming loop) is
// bit-reproducible for a given seed
int ReplicaLattice::site_index(int replica, int tau, int x, int y) const {
  return static_cast<int>(
      ((static_cast<long>(replica) * spec_.time_extent + tau) * spec_.transverse_extent() + y) *
          spec_.extent +
      x);
}

ReplicaLattice::ReplicaLattice(const LatticeSpec& spec, const CutSpec& cut)
    : spec_(spec), cut_(cut) {
  spec_.validate();
  if (spec_.n_replicas < 2)
    throw std::invalid_argument("ReplicaLattice: replica geometry needs n_replicas >= 2, got " +
                                std::to_string(spec_.n_replicas));
  if (cut_.length < 0 || cut_.length > spec_.extent)
    throw std::invalid_argument("ReplicaLattice: cut length " + std::to_string(cut_.length) +
                                " outside [0, L=" + std::to_string(spec_.extent) + "]");
  if (cut_.tau0 < 0 || cut_.tau0 >= spec_.time_extent)
    throw std::invalid_argument("ReplicaLattice: tau0 " + std::to_string(cut_.tau0) +
                                " outside [0, Ltau)");

  const int D = spec_.dim;
  const int L = spec_.extent;
  const int Lt = spec_.time_extent;
  const int n = spec_.n_replicas;
  const int T = static_cast<int>(spec_.transverse_extent());
  n_sites_ = spec_.total_sites();
  links_.reserve(static_cast<size_t>(D) * n_sites_);

  for (int k = 0; k < n; ++k) {
    for (int t = 0; t < Lt; ++t) {
      for (int y = 0; y < T; ++y) {
        for (int x = 0; x < L; ++x) {
          const int s = site_index(k, t, x, y);
          links_.push_back({s, site_index(k, t, (x + 1) % L, y), LinkClass::Bulk});
          if (D == 3)
            links_.push_back({s, site_index(k, t, x, (y + 1) % T), LinkClass::Bulk});
          if (t == cut_.tau0) {
            const int tn = (t + 1) % Lt;
            if (x < cut_.length)
              links_.push_back({s, site_index((k + 1) % n, tn, x, y), LinkClass::InterCut});
            else
              links_.push_back({s, site_index(k, tn, x, y), LinkClass::IntraCut});
          } else {
            links_.push_back({s, site_index(k, (t + 1) % Lt, x, y), LinkClass::Bulk});
          }
        }
      }
    }
  }

  // cut-slice slot pairs, ordered by (column, transverse, replica)
  cut_pairs_.reserve(static_cast<size_t>(L) * T * n);
  for (int x = 0; x < L; ++x)
    for (int y = 0; y < T; ++y)
      for (int k = 0; k < n; ++k) {
        CutPair p;
        p.site = site_index(k, cut_.tau0, x, y);
        const int tn = (cut_.tau0 + 1) % Lt;
        p.up_same = site_index(k, tn, x, y);
        p.up_next = site_index((k + 1) % n, tn, x, y);
        p.column = x;
        p.transverse = y;
        p.replica = k;
        cut_pairs_.push_back(p);
      }
}

std::vector<double> ReplicaLattice::static_couplings() const {
  return std::vector<double>(links_.size(), spec_.beta);
}

std::vector<CutPair> ReplicaLattice::edge_pairs_for_step(int l, StepDirection dir) const {
  const int L = spec_.extent;
  int target = (dir == StepDirection::Grow) ? l + 1 : l - 1;
  if (l < 0 || l > L || target < 0 || target > L)
    throw std::invalid_argument("edge_pairs_for_step: step " + std::to_string(l) + " -> " +
                                std::to_string(target) + " leaves [0, L=" + std::to_string(L) + "]");
  const int column = (dir == StepDirection::Grow) ? l : l - 1;
  std::vector<CutPair> out;
  out.reserve(spec_.transverse_extent() * spec_.n_replicas);
  for (const CutPair& p : cut_pairs_)
    if (p.column == column) out.push_back(p);
  return out;
}

std::vector<Link> ReplicaLattice::edge_links_for_step(int l, StepDirection dir) const {
  std::vector<Link> out;
  for (const CutPair& p : edge_pairs_for_step(l, dir)) {
    out.push_back({p.site, p.up_same, LinkClass::IntraCut});
    out.push_back({p.site, p.up_next, LinkClass::InterCut});
  }
  return out;
}

ReplicaLattice build_replica_lattice(const LatticeSpec& spec, const CutSpec& cut) {
  return ReplicaLattice(spec, cut);
}

double dual_beta(double beta) {
  if (!(beta > 0.0) || !std::isfinite(beta))
    throw std::domain_error("dual_beta: coupling must be > 0");
  return std::atanh(std::exp(-2.0 * beta));
}

}  // namespace entropic

// dynamics.cc

#include "entropic/dynamics.h"

#include <cmath>
#include <stdexcept>
#include <string>

namespace entropic {

double reduced_energy(const SpinConfiguration& spins, const std::vector<Link>& links,
                      const CouplingAssignment& couplings) {
  if (couplings.size() != links.size())
    throw std::invalid_argument("reduced_energy: couplings size " + std::to_string(couplings.size()) +
                                " != link count " + std::to_string(links.size()));
  double e = 0.0;
  for (size_t i = 0; i < links.size(); ++i)
    e -= couplings[i] * spins[links[i].a] * spins[links[i].b];
  return e;
}

IsingSystem::IsingSystem(std::vector<Link> links, CouplingAssignment couplings, long n_sites)
    : n_sites_(n_sites), links_(std::move(links)), couplings_(std::move(couplings)) {
  if (couplings_.size() != links_.size())
    throw std::invalid_argument("IsingSystem: couplings size != link count");
  activation_.resize(links_.size());
  for (size_t i = 0; i < links_.size(); ++i) {
    if (couplings_[i] < 0.0)
      throw std::invalid_argument("IsingSystem: couplings must be >= 0");
    activation_[i] = -std::expm1(-2.0 * couplings_[i]);
  }
  parent_.resize(n_sites_);
  flip_.resize(n_sites_);

  // CSR adjacency (both directions) for Metropolis local fields
  std::vector<int32_t> degree(n_sites_, 0);
  for (const Link& l : links_) {
    ++degree[l.a];
    ++degree[l.b];
  }
  adjacency_offset_.assign(n_sites_ + 1, 0);
  for (long s = 0; s < n_sites_; ++s) adjacency_offset_[s + 1] = adjacency_offset_[s] + degree[s];
  adjacency_.resize(adjacency_offset_[n_sites_]);
  std::vector<int32_t> cursor(adjacency_offset_.begin(), adjacency_offset_.end() - 1);
  for (size_t i = 0; i < links_.size(); ++i) {
    const Link& l = links_[i];
    adjacency_[cursor[l.a]++] = {l.b, static_cast<int32_t>(i)};
    adjacency_[cursor[l.b]++] = {l.a, static_cast<int32_t>(i)};
  }
}

void IsingSystem::set_coupling(size_t link, double value) {
  if (value < 0.0) throw std::invalid_argument("set_coupling: couplings must be >= 0");
  couplings_[link] = value;
  activation_[link] = -std::expm1(-2.0 * value);
}

void IsingSystem::check_spins(const SpinConfiguration& spins) const {
  if (static_cast<long>(spins.size()) != n_sites_)
    throw std::invalid_argument("spin configuration size " + std::to_string(spins.size()) +
                                " != site count " + std::to_string(n_sites_));
}

double IsingSystem::reduced_energy(const SpinConfiguration& spins) const {
  check_spins(spins);
  return entropic::reduced_energy(spins, links_, couplings_);
}

double IsingSystem::flip_delta(const SpinConfiguration& spins, int site) const {
  double field = 0.0;
  for (int32_t j = adjacency_offset_[site]; j < adjacency_offset_[site + 1]; ++j)
    field += couplings_[adjacency_[j].second] * spins[adjacency_[j].first];
  return 2.0 * spins[site] * field;
}

namespace {
inline int32_t uf_find(std::vector<int32_t>& parent, int32_t s) {
  while (parent[s] != s) {
    parent[s] = parent[parent[s]];  // path halving
    s = parent[s];
  }
  return s;
}
}  // namespace

void IsingSystem::swendsen_wang_update(SpinConfiguration& spins, CounterRng& rng) {
  check_spins(spins);
  const int32_t n = static_cast<int32_t>(n_sites_);
  for (int32_t s = 0; s < n; ++s) parent_[s] = s;

  for (size_t i = 0; i < links_.size(); ++i) {
    const double p = activation_[i];
    if (p <= 0.0) continue;
    const Link& l = links_[i];
    if (spins[l.a] != spins[l.b]) continue;
    if (rng.next_double() >= p) continue;
    int32_t ra = uf_find(parent_, l.a);
    int32_t rb = uf_find(parent_, l.b);
    if (ra == rb) continue;
    // smaller index becomes the representative, so the root of a cluster
    // is always its first site in site order
    if (ra < rb)
      parent_[rb] = ra;
    else
      parent_[ra] = rb;
  }

  for (int32_t s = 0; s < n; ++s) {
    int32_t r = uf_find(parent_, s);
    if (r == s) flip_[s] = rng.next_bool() ? 1 : 0;
    if (flip_[r]) spins[s] = -spins[s];
  }
}

void IsingSystem::metropolis_sweep(SpinConfiguration& spins, CounterRng& rng) {
  check_spins(spins);
  for (int32_t s = 0; s < n_sites_; ++s) {
    const double delta = flip_delta(spins, s);
    if (delta <= 0.0 || rng.next_double() < std::exp(-delta)) spins[s] = -spins[s];
  }
}

SpinConfiguration IsingSystem::random_configuration(CounterRng& rng) const {
  SpinConfiguration spins(n_sites_);
  for (long s = 0; s < n_sites_; ++s) spins[s] = rng.next_bool() ? 1 : -1;
  return spins;
}

}  // namespace entropic

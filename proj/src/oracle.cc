// oracle.cc

#include "entropic/oracle.h"

#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <thread>

#include "json.hpp"

namespace entropic {

namespace {

struct LogSum {
  double max = -std::numeric_limits<double>::infinity();
  double sum = 0.0;
  double comp = 0.0;  // Kahan compensation for the exp-term accumulation

  void kahan_add(double term) {
    const double y = term - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }

  void add(double v) {
    if (v <= max) {
      kahan_add(std::exp(v - max));
    } else {
      const double scale = std::exp(max - v);
      sum *= scale;
      comp *= scale;
      max = v;
      kahan_add(1.0);
    }
  }

  void merge(const LogSum& other) {
    if (other.sum == 0.0) return;
    if (other.max <= max) {
      kahan_add(other.sum * std::exp(other.max - max));
    } else {
      const double scale = std::exp(max - other.max);
      sum *= scale;
      comp *= scale;
      max = other.max;
      kahan_add(other.sum);
    }
  }

  double value() const { return max + std::log(sum); }
};

struct Accumulators {
  LogSum log_z;
  // for <H>: sum of H*exp(-H) tracked as value relative to log_z scale
  double weighted_energy = 0.0;  // sum H * exp(-H - shift) with shift = log_z.max at merge time
};

// enumerate one shard: the top `shard_bits` spins are fixed to `shard`,
// the rest are swept in Gray-code order with incremental energy updates
template <typename Visit>
void enumerate_shard(const std::vector<Link>& links, const CouplingAssignment& couplings,
                     int n_spins, int shard_bits, uint64_t shard, Visit&& visit) {
  const int free_bits = n_spins - shard_bits;
  std::vector<int8_t> spins(n_spins, 1);
  for (int b = 0; b < shard_bits; ++b)
    if ((shard >> b) & 1u) spins[free_bits + b] = -1;

  // adjacency for incremental updates
  std::vector<std::vector<std::pair<int32_t, double>>> adj(n_spins);
  for (size_t i = 0; i < links.size(); ++i) {
    adj[links[i].a].push_back({links[i].b, couplings[i]});
    adj[links[i].b].push_back({links[i].a, couplings[i]});
  }

  // Kahan-compensated incremental energy: millions of +-2*beta*field
  // updates would otherwise drift at the 1e-11 level
  double energy = reduced_energy(spins, links, couplings);
  double comp = 0.0;
  visit(energy);
  const uint64_t n_states = 1ull << free_bits;
  for (uint64_t i = 1; i < n_states; ++i) {
    const int flip = std::countr_zero(i);  // Gray-code bit to toggle
    double field = 0.0;
    for (const auto& [nb, c] : adj[flip]) field += c * spins[nb];
    const double delta = 2.0 * spins[flip] * field - comp;
    const double next = energy + delta;
    comp = (next - energy) - delta;
    energy = next;
    spins[flip] = -spins[flip];
    visit(energy);
  }
}

void check_budget(long n_sites, const std::vector<Link>& links, const CouplingAssignment& couplings,
                  const OracleBudget& budget) {
  if (n_sites > budget.max_spins)
    throw std::invalid_argument("oracle: " + std::to_string(n_sites) + " spins exceed enumeration budget of " +
                                std::to_string(budget.max_spins));
  if (couplings.size() != links.size())
    throw std::invalid_argument("oracle: couplings size != link count");
}

int shard_bits_for(const OracleBudget& budget, long n_sites) {
  int bits = 0;
  while ((1 << bits) < budget.n_shards) ++bits;
  if (bits >= n_sites) bits = 0;
  return bits;
}

}  // namespace

double exact_log_z(const std::vector<Link>& links, const CouplingAssignment& couplings,
                   long n_sites, const OracleBudget& budget) {
  check_budget(n_sites, links, couplings, budget);
  const int bits = shard_bits_for(budget, n_sites);
  const uint64_t n_shards = 1ull << bits;
  // shards are reduced in fixed order, so the result does not depend on
  // how workers are scheduled
  std::vector<LogSum> partial(n_shards);
  auto work = [&](uint64_t shard) {
    LogSum& acc = partial[shard];
    enumerate_shard(links, couplings, static_cast<int>(n_sites), bits, shard,
                    [&acc](double e) { acc.add(-e); });
  };
  if (n_shards == 1) {
    work(0);
  } else {
    std::vector<std::thread> workers;
    workers.reserve(n_shards);
    for (uint64_t shard = 0; shard < n_shards; ++shard) workers.emplace_back(work, shard);
    for (auto& w : workers) w.join();
  }
  LogSum total;
  for (const LogSum& p : partial) total.merge(p);
  return total.value();
}

double exact_log_z(const ReplicaLattice& lattice, const OracleBudget& budget) {
  return exact_log_z(lattice.links(), lattice.static_couplings(), lattice.n_sites(), budget);
}

double exact_mean_energy(const std::vector<Link>& links, const CouplingAssignment& couplings,
                         long n_sites, const OracleBudget& budget) {
  check_budget(n_sites, links, couplings, budget);
  // two passes: get log Z first, then the weighted average with a stable shift
  const double log_z = exact_log_z(links, couplings, n_sites, budget);
  double acc = 0.0;
  enumerate_shard(links, couplings, static_cast<int>(n_sites), 0, 0,
                  [&](double e) { acc += e * std::exp(-e - log_z); });
  return acc;
}

double exact_renyi(const LatticeSpec& spec, int cut_length, const OracleBudget& budget) {
  const int n = spec.n_replicas;
  if (n < 2) throw std::invalid_argument("exact_renyi: n_replicas must be >= 2");
  ReplicaLattice replica(spec, CutSpec{cut_length, 0});
  // single-replica links: with l = 0 the replicas of the cut geometry are
  // fully decoupled, so replica 0 of an uncut two-replica system is exactly
  // the single lattice
  LatticeSpec single = spec;
  single.n_replicas = 1;
  const long n1 = single.total_sites();
  std::vector<Link> links;
  {
    LatticeSpec s2 = spec;
    s2.n_replicas = 2;
    ReplicaLattice two(s2, CutSpec{0, 0});
    for (const Link& l : two.links())
      if (l.a < n1 && l.b < n1) links.push_back(l);
  }
  CouplingAssignment couplings(links.size(), spec.beta);
  const double log_z1 = exact_log_z(links, couplings, n1, budget);
  const double log_zn = exact_log_z(replica, budget);
  return (log_zn - n * log_z1) / (1.0 - n);
}

double exact_log_ratio(const LatticeSpec& spec, int l_from, int l_to, const OracleBudget& budget) {
  const double a = exact_log_z(ReplicaLattice(spec, CutSpec{l_from, 0}), budget);
  const double b = exact_log_z(ReplicaLattice(spec, CutSpec{l_to, 0}), budget);
  return b - a;
}

std::string golden_json(const std::vector<GoldenEntry>& entries) {
  nlohmann::json out = nlohmann::json::array();
  for (const GoldenEntry& g : entries) {
    out.push_back({{"dim", g.spec.dim},
                   {"extent", g.spec.extent},
                   {"time_extent", g.spec.time_extent},
                   {"n_replicas", g.spec.n_replicas},
                   {"beta", g.spec.beta},
                   {"cut_length", g.cut_length},
                   {"renyi", g.renyi}});
  }
  return out.dump(2);
}

std::vector<GoldenEntry> read_golden_json(const std::string& text) {
  nlohmann::json in = nlohmann::json::parse(text);
  std::vector<GoldenEntry> out;
  for (const auto& e : in) {
    GoldenEntry g;
    g.spec.dim = e.at("dim").get<int>();
    g.spec.extent = e.at("extent").get<int>();
    g.spec.time_extent = e.at("time_extent").get<int>();
    g.spec.n_replicas = e.at("n_replicas").get<int>();
    g.spec.beta = e.at("beta").get<double>();
    g.cut_length = e.at("cut_length").get<int>();
    g.renyi = e.at("renyi").get<double>();
    out.push_back(g);
  }
  return out;
}

std::vector<GoldenEntry> compute_golden(const LatticeSpec& spec, const OracleBudget& budget) {
  std::vector<GoldenEntry> out;
  for (int l = 0; l <= spec.extent; ++l)
    out.push_back({spec, l, exact_renyi(spec, l, budget)});
  return out;
}

}  // namespace entropic

// oracle.h
//
// Exact brute-force evaluation of partition functions, replica partition
// functions, and Renyi entropies on small lattices. Deliberately the
// slowest, most obviously correct route: full Gray-code enumeration of all
// 2^spins configurations with incremental energy updates.

#pragma once

#include <string>
#include <vector>

#include "entropic/dynamics.h"
#include "entropic/lattice.h"

namespace entropic {

struct OracleBudget {
  int max_spins = 24;   // enumeration refuses inputs above this
  int n_shards = 1;     // configuration space split over the top spins
};

// log sum_{configs} exp(-H/T) over all 2^n_sites states
double exact_log_z(const std::vector<Link>& links, const CouplingAssignment& couplings,
                   long n_sites, const OracleBudget& budget = {});
double exact_log_z(const ReplicaLattice& lattice, const OracleBudget& budget = {});

// S_n(l) = (1/(1-n)) * [log Z_n(cut l) - n * log Z]
double exact_renyi(const LatticeSpec& spec, int cut_length, const OracleBudget& budget = {});

// log( Z_n(l_to) / Z_n(l_from) )
double exact_log_ratio(const LatticeSpec& spec, int l_from, int l_to,
                       const OracleBudget& budget = {});

// <H/T> at equilibrium, same enumeration; used by update-algorithm tests
double exact_mean_energy(const std::vector<Link>& links, const CouplingAssignment& couplings,
                         long n_sites, const OracleBudget& budget = {});

// Golden-value files: exact Renyi entropies for a spec, JSON with the full
// input embedded. Regenerated by `cfun golden`, never hand-typed.
struct GoldenEntry {
  LatticeSpec spec;
  int cut_length = 0;
  double renyi = 0.0;
};

std::string golden_json(const std::vector<GoldenEntry>& entries);
std::vector<GoldenEntry> read_golden_json(const std::string& text);
std::vector<GoldenEntry> compute_golden(const LatticeSpec& spec, const OracleBudget& budget = {});

}  // namespace entropic

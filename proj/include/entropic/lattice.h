// lattice.h
//
// Replica-coupled hypercubic Ising lattice with a cut: geometry, link
// classes, edge-link bookkeeping for the coupling steps, and the 2D
// self-dual map.

#pragma once

#include <cstdint>
#include <vector>

namespace entropic {

struct LatticeSpec {
  int dim = 2;          // spacetime dimensions D (2 or 3)
  int extent = 0;       // spatial extent L (both spatial directions in D=3)
  int time_extent = 0;  // Euclidean-time extent Ltau
  int n_replicas = 2;
  double beta = 0.0;

  void validate() const;              // throws std::invalid_argument
  long sites_per_replica() const;     // L^(D-1) * Ltau
  long total_sites() const;           // n * L^(D-1) * Ltau
  long transverse_extent() const;     // L^(D-2): 1 in D=2, L in D=3
};

struct CutSpec {
  int length = 0;  // l, in [0, L]
  int tau0 = 0;    // time slice the cut sits on (links tau0 -> tau0+1)
};

enum class LinkClass : uint8_t { Bulk, IntraCut, InterCut };

struct Link {
  int32_t a = 0;
  int32_t b = 0;
  LinkClass cls = LinkClass::Bulk;
};

enum class StepDirection { Grow, Shrink };

// The (intra, inter) coupling slot pair of one cut-slice site: `site` at
// tau0 couples either to `up_same` (same replica, tau0+1) or to `up_next`
// (next replica, tau0+1). During a coupling step both slots are live.
struct CutPair {
  int32_t site = 0;
  int32_t up_same = 0;
  int32_t up_next = 0;
  int32_t column = 0;      // coordinate along the cut direction, 0..L-1
  int32_t transverse = 0;  // transverse coordinate, 0 in D=2
  int32_t replica = 0;
};

class ReplicaLattice {
 public:
  ReplicaLattice(const LatticeSpec& spec, const CutSpec& cut);

  const LatticeSpec& spec() const { return spec_; }
  const CutSpec& cut() const { return cut_; }
  long n_sites() const { return n_sites_; }

  // static link list: one link per bond slot, D*n*L^(D-1)*Ltau entries;
  // cut-slice time links carry IntraCut or InterCut depending on the side
  const std::vector<Link>& links() const { return links_; }

  // uniform couplings (beta on every link) for the static geometry
  std::vector<double> static_couplings() const;

  // cut-slice bookkeeping for every column, grouped by column then
  // transverse coordinate then replica
  const std::vector<CutPair>& cut_pairs() const { return cut_pairs_; }

  // pairs of the single column toggled by the step l -> l+1 (Grow) or
  // l -> l-1 (Shrink); 2*L^(D-2)*n coupling slots
  std::vector<CutPair> edge_pairs_for_step(int l, StepDirection dir) const;

  // same set flattened to links, each pair contributing its IntraCut and
  // InterCut slot
  std::vector<Link> edge_links_for_step(int l, StepDirection dir) const;

  int site_index(int replica, int tau, int x, int y = 0) const;

 private:
  LatticeSpec spec_;
  CutSpec cut_;
  long n_sites_ = 0;
  std::vector<Link> links_;
  std::vector<CutPair> cut_pairs_;
};

ReplicaLattice build_replica_lattice(const LatticeSpec& spec, const CutSpec& cut);

// Kramers-Wannier dual coupling: exp(-2*beta) = tanh(beta*). A strictly
// decreasing involution on (0, inf) with fixed point log(1+sqrt(2))/2.
double dual_beta(double beta);

inline constexpr double kBetaCritical2D = 0.4406867935097715;  // log(1+sqrt 2)/2
inline constexpr double kBetaCritical3D = 0.221654626;

}  // namespace entropic

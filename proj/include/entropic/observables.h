// observables.h
//
// Free-energy-difference estimates turned into physics: Renyi increments
// dS_n, symmetrized entropic c-functions, reconstructed entropy curves,
// the zero-temperature antisymmetry diagnostic, and the midpoint
// discretization systematics.

#pragma once

#include <optional>
#include <vector>

#include "entropic/fit.h"
#include "entropic/jarzynski.h"
#include "entropic/special.h"

namespace entropic {

struct DeltaRenyi {
  double value = 0.0;     // S_n(l) - S_n(l-1), per unit lattice spacing
  double stat_err = 0.0;
  int l = 0;              // upper cut of the increment l-1 -> l
};

struct CFunctionPoint {
  double x = 0.0;  // midpoint (l - 0.5)/L
  double c_value = 0.0;
  double stat_err = 0.0;
  double sys_err = 0.0;
  int l = 0;
  int extent = 0;   // L
  int dim = 0;      // D
  int renyi_n = 2;
  double beta = 0.0;
};

struct EntropyPoint {
  int l = 0;
  double value = 0.0;  // S_n(l) - S_n(0)
  double err = 0.0;
};
using EntropyCurve = std::vector<EntropyPoint>;

// dS_n = -(1/(n-1)) log(Z_n(l+1)/Z_n(l)); sign such that S_n grows when
// Z_n shrinks with the cut
DeltaRenyi delta_renyi(double log_ratio, double stat_err, int renyi_n, int l_high);
DeltaRenyi delta_renyi(const JarzynskiEstimate& grow_estimate, int renyi_n, int l_high);

// C_n = [L sin(pi x)/pi]^(D-1) / (2 L^(D-2)) * dS_n at x = (l-0.5)/L
double cfunction_prefactor(int l, int extent, int dim);
CFunctionPoint entropic_cfunction(const DeltaRenyi& ds, int extent, int dim, int renyi_n,
                                  double beta);

// cumulative sum with S(0) = 0; increments must be contiguous from l = 1
EntropyCurve reconstruct_entropy(const std::vector<DeltaRenyi>& increments);

struct AntisymmetryPair {
  int l_left = 0;
  int l_right = 0;
  double sum = 0.0;   // C(x) + C(1-x)
  double err = 0.0;
  double pull = 0.0;
};

struct AntisymmetryReport {
  std::vector<AntisymmetryPair> pairs;
  double max_abs_pull = 0.0;
  bool passed = true;  // no pair beyond 3 sigma
};

// zero-temperature condition C_n(x) = -C_n(1-x), pairing l with L+1-l
AntisymmetryReport zero_temperature_check(const std::vector<CFunctionPoint>& points);

// one-shot Appendix-C style systematics from a fixed model curve:
// sys_i = 1/(48 L^2) * sin(pi x_i)^(D-1)/pi^(D-1) * |g'''(x_i)|
std::vector<double> discretization_error(const std::vector<CFunctionPoint>& points, ModelId model,
                                         std::span<const double> params);

struct SystematicsResult {
  std::vector<CFunctionPoint> points;  // sys_err filled
  FitResult fit;                       // fit at the final iteration
  int iterations = 0;
  bool converged = false;
};

// fit -> systematics -> refit until every sys_err moves by < 1%;
// throws after max_iterations without convergence
SystematicsResult iterate_systematics(std::vector<CFunctionPoint> points, ModelId model,
                                      const std::vector<bool>& mask = {}, int max_iterations = 20);

// a c-function point's full error, statistical and systematic in quadrature
double total_error(const CFunctionPoint& p);
std::vector<FitPoint> to_fit_points(const std::vector<CFunctionPoint>& points);

// Model-independent alternative to the curve-based systematics: the O(a^2)
// term of the midpoint difference, estimated from neighboring increments,
//   dS'(m_l) = D_l - (D_{l+1} - 2 D_l + D_{l-1})/24 + O(a^4).
// Returns |correction| mapped through the c-function prefactor; the first
// and last increments have no neighbors and get 0. Increments must be
// contiguous in l.
std::vector<double> higher_order_systematics(const std::vector<DeltaRenyi>& increments, int extent,
                                             int dim);

}  // namespace entropic

// fit.h
//
// Weighted least-squares fits of entropy / c-function data to the model
// curves. Every in-scope model is linear in its parameters, so the fit is
// closed-form weighted linear least squares with covariance from the
// normal equations.

#pragma once

#include <span>
#include <vector>

#include "entropic/special.h"

namespace entropic {

struct FitPoint {
  double x = 0.0;
  double y = 0.0;
  double err = 0.0;  // must be > 0
};

struct FitResult {
  ModelId model = ModelId::F2d;
  std::vector<double> params;
  std::vector<double> param_errs;
  double chi2 = 0.0;
  int ndof = 0;
  double chi2_reduced = 0.0;
  int points_used = 0;
};

// mask: empty = use all; otherwise one flag per point, true = included
FitResult weighted_fit(std::span<const FitPoint> points, ModelId model, double extent = 0.0,
                       const std::vector<bool>& mask = {});

// chi^2 with externally supplied parameters (e.g. the parameter-free
// scaling-function comparison); returns (chi2, chi2/ndof) where
// ndof = included points (no parameters subtracted)
std::pair<double, double> chi2_against(std::span<const FitPoint> points, ModelId model,
                                       std::span<const double> params, double extent = 0.0,
                                       const std::vector<bool>& mask = {});

// convenience mask: drop the first `head` and last `tail` points
std::vector<bool> exclusion_mask(size_t n_points, size_t head, size_t tail);

}  // namespace entropic

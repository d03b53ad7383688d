// fit.cc

#include "entropic/fit.h"

#include <cmath>
#include <stdexcept>
#include <string>

namespace entropic {

namespace {

// solve the k x k normal system (k <= 2) and invert it for the covariance
void solve_normal(const double a[2][2], const double b[2], int k, double x[2], double cov[2][2]) {
  if (k == 1) {
    if (a[0][0] <= 0.0) throw std::runtime_error("weighted_fit: singular normal matrix");
    x[0] = b[0] / a[0][0];
    cov[0][0] = 1.0 / a[0][0];
    return;
  }
  const double det = a[0][0] * a[1][1] - a[0][1] * a[1][0];
  const double scale = std::abs(a[0][0] * a[1][1]) + std::abs(a[0][1] * a[1][0]);
  if (!(std::abs(det) > 1e-12 * scale))
    throw std::runtime_error("weighted_fit: singular normal matrix (degenerate abscissas?)");
  x[0] = (b[0] * a[1][1] - b[1] * a[0][1]) / det;
  x[1] = (a[0][0] * b[1] - a[1][0] * b[0]) / det;
  cov[0][0] = a[1][1] / det;
  cov[1][1] = a[0][0] / det;
  cov[0][1] = cov[1][0] = -a[0][1] / det;
}

void check_points(std::span<const FitPoint> points, const std::vector<bool>& mask) {
  if (!mask.empty() && mask.size() != points.size())
    throw std::invalid_argument("fit: mask size != point count");
  for (size_t i = 0; i < points.size(); ++i) {
    if (!mask.empty() && !mask[i]) continue;
    if (!(points[i].err > 0.0))
      throw std::invalid_argument("fit: point errors must be > 0 (point " + std::to_string(i) + ")");
  }
}

}  // namespace

FitResult weighted_fit(std::span<const FitPoint> points, ModelId model, double extent,
                       const std::vector<bool>& mask) {
  check_points(points, mask);
  const ModelInfo info = model_info(model);
  const int k = info.arity;

  double a[2][2] = {{0, 0}, {0, 0}};
  double b[2] = {0, 0};
  int used = 0;
  for (size_t i = 0; i < points.size(); ++i) {
    if (!mask.empty() && !mask[i]) continue;
    double offset;
    double basis[2];
    model_basis(model, points[i].x, extent, offset, std::span<double>(basis, k));
    const double w = 1.0 / (points[i].err * points[i].err);
    const double r = points[i].y - offset;
    for (int p = 0; p < k; ++p) {
      b[p] += w * basis[p] * r;
      for (int q = 0; q < k; ++q) a[p][q] += w * basis[p] * basis[q];
    }
    ++used;
  }
  if (used < k + 1)
    throw std::invalid_argument("weighted_fit: " + std::to_string(used) +
                                " points cannot constrain " + std::to_string(k) + " parameters");

  double params[2], cov[2][2] = {{0, 0}, {0, 0}};
  solve_normal(a, b, k, params, cov);

  FitResult result;
  result.model = model;
  result.params.assign(params, params + k);
  for (int p = 0; p < k; ++p) result.param_errs.push_back(std::sqrt(cov[p][p]));
  auto [chi2, chi2_red] = chi2_against(points, model, result.params, extent, mask);
  result.chi2 = chi2;
  result.points_used = used;
  result.ndof = used - k;
  result.chi2_reduced = result.ndof > 0 ? chi2 / result.ndof : 0.0;
  return result;
}

std::pair<double, double> chi2_against(std::span<const FitPoint> points, ModelId model,
                                       std::span<const double> params, double extent,
                                       const std::vector<bool>& mask) {
  check_points(points, mask);
  double chi2 = 0.0;
  int used = 0;
  for (size_t i = 0; i < points.size(); ++i) {
    if (!mask.empty() && !mask[i]) continue;
    const double r = (points[i].y - model_eval(model, points[i].x, params, extent)) / points[i].err;
    chi2 += r * r;
    ++used;
  }
  return {chi2, used > 0 ? chi2 / used : 0.0};
}

std::vector<bool> exclusion_mask(size_t n_points, size_t head, size_t tail) {
  std::vector<bool> mask(n_points, true);
  for (size_t i = 0; i < head && i < n_points; ++i) mask[i] = false;
  for (size_t i = 0; i < tail && i < n_points; ++i) mask[n_points - 1 - i] = false;
  return mask;
}

}  // namespace entropic

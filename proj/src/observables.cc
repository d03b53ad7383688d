// observables.cc

#include "entropic/observables.h"

#include <cmath>
#include <stdexcept>
#include <string>

namespace entropic {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

DeltaRenyi delta_renyi(double log_ratio, double stat_err, int renyi_n, int l_high) {
  if (renyi_n < 2) throw std::invalid_argument("delta_renyi: Renyi order must be >= 2");
  DeltaRenyi ds;
  ds.value = -log_ratio / (renyi_n - 1);
  ds.stat_err = stat_err / (renyi_n - 1);
  ds.l = l_high;
  return ds;
}

DeltaRenyi delta_renyi(const JarzynskiEstimate& grow_estimate, int renyi_n, int l_high) {
  return delta_renyi(grow_estimate.log_ratio, grow_estimate.stat_err, renyi_n, l_high);
}

double cfunction_prefactor(int l, int extent, int dim) {
  if (l < 1 || l > extent)
    throw std::invalid_argument("cfunction_prefactor: l outside [1, L]");
  const double x = (l - 0.5) / extent;
  const double arc = extent * std::sin(kPi * x) / kPi;
  const double boundary = 2.0 * std::pow(static_cast<double>(extent), dim - 2);
  return std::pow(arc, dim - 1) / boundary;
}

CFunctionPoint entropic_cfunction(const DeltaRenyi& ds, int extent, int dim, int renyi_n,
                                  double beta) {
  const double pref = cfunction_prefactor(ds.l, extent, dim);
  CFunctionPoint p;
  p.x = (ds.l - 0.5) / extent;
  p.c_value = pref * ds.value;
  p.stat_err = pref * ds.stat_err;
  p.sys_err = 0.0;
  p.l = ds.l;
  p.extent = extent;
  p.dim = dim;
  p.renyi_n = renyi_n;
  p.beta = beta;
  return p;
}

EntropyCurve reconstruct_entropy(const std::vector<DeltaRenyi>& increments) {
  EntropyCurve curve;
  curve.push_back({0, 0.0, 0.0});
  double sum = 0.0, var = 0.0;
  int expected = 1;
  for (const DeltaRenyi& ds : increments) {
    if (ds.l != expected)
      throw std::invalid_argument("reconstruct_entropy: increments must be contiguous from l=1, got l=" +
                                  std::to_string(ds.l) + " where " + std::to_string(expected) +
                                  " was expected");
    sum += ds.value;
    var += ds.stat_err * ds.stat_err;
    curve.push_back({ds.l, sum, std::sqrt(var)});
    ++expected;
  }
  return curve;
}

AntisymmetryReport zero_temperature_check(const std::vector<CFunctionPoint>& points) {
  AntisymmetryReport report;
  for (size_t i = 0; i < points.size(); ++i) {
    for (size_t j = i; j < points.size(); ++j) {
      // partner in x <-> 1-x, i.e. l <-> L+1-l on the same lattice
      if (points[j].extent != points[i].extent) continue;
      if (points[j].l != points[i].extent + 1 - points[i].l) continue;
      if (points[j].l < points[i].l) continue;
      AntisymmetryPair pair;
      pair.l_left = points[i].l;
      pair.l_right = points[j].l;
      if (i == j) {
        // the midpoint pairs with itself; antisymmetry there means C = 0
        pair.sum = points[i].c_value;
        pair.err = total_error(points[i]);
      } else {
        pair.sum = points[i].c_value + points[j].c_value;
        pair.err = std::hypot(total_error(points[i]), total_error(points[j]));
      }
      pair.pull = pair.err > 0.0 ? pair.sum / pair.err : (pair.sum == 0.0 ? 0.0 : INFINITY);
      report.pairs.push_back(pair);
      report.max_abs_pull = std::max(report.max_abs_pull, std::abs(pair.pull));
    }
  }
  report.passed = report.max_abs_pull <= 3.0;
  return report;
}

std::vector<double> discretization_error(const std::vector<CFunctionPoint>& points, ModelId model,
                                         std::span<const double> params) {
  std::vector<double> sys;
  sys.reserve(points.size());
  for (const CFunctionPoint& p : points) {
    const double third = model_entropy_d3(model, p.x, params, p.extent);
    const double geom = std::pow(std::sin(kPi * p.x) / kPi, p.dim - 1);
    sys.push_back(std::abs(third) * geom / (48.0 * static_cast<double>(p.extent) * p.extent));
  }
  return sys;
}

double total_error(const CFunctionPoint& p) { return std::hypot(p.stat_err, p.sys_err); }

std::vector<FitPoint> to_fit_points(const std::vector<CFunctionPoint>& points) {
  std::vector<FitPoint> out;
  out.reserve(points.size());
  for (const CFunctionPoint& p : points) out.push_back({p.x, p.c_value, total_error(p)});
  return out;
}

std::vector<double> higher_order_systematics(const std::vector<DeltaRenyi>& increments, int extent,
                                             int dim) {
  for (size_t i = 1; i < increments.size(); ++i)
    if (increments[i].l != increments[i - 1].l + 1)
      throw std::invalid_argument("higher_order_systematics: increments must be contiguous in l");
  std::vector<double> sys(increments.size(), 0.0);
  for (size_t i = 1; i + 1 < increments.size(); ++i) {
    const double second =
        increments[i + 1].value - 2.0 * increments[i].value + increments[i - 1].value;
    sys[i] = cfunction_prefactor(increments[i].l, extent, dim) * std::abs(second) / 24.0;
  }
  return sys;
}

SystematicsResult iterate_systematics(std::vector<CFunctionPoint> points, ModelId model,
                                      const std::vector<bool>& mask, int max_iterations) {
  if (points.empty()) throw std::invalid_argument("iterate_systematics: no points");
  const double extent = points.front().extent;

  SystematicsResult result;
  result.points = std::move(points);
  std::vector<double> previous(result.points.size(), 0.0);
  for (int it = 1; it <= max_iterations; ++it) {
    result.fit = weighted_fit(to_fit_points(result.points), model, extent, mask);
    std::vector<double> sys = discretization_error(result.points, model, result.fit.params);
    bool converged = true;
    for (size_t i = 0; i < sys.size(); ++i) {
      const double delta = std::abs(sys[i] - previous[i]);
      if (delta > 0.01 * std::abs(previous[i]) && delta > 1e-14) converged = false;
      result.points[i].sys_err = sys[i];
    }
    previous = std::move(sys);
    result.iterations = it;
    if (converged) {
      result.converged = true;
      return result;
    }
  }
  throw std::runtime_error("iterate_systematics: no convergence after " +
                           std::to_string(max_iterations) + " iterations");
}

}  // namespace entropic

// special.cc

#include "entropic/special.h"

#include <cmath>
#include <stdexcept>

#include "entropic/quadrature.h"

namespace entropic {

namespace {

constexpr double kPi = 3.14159265358979323846;

void require_positive_t(double t, const char* who) {
  if (!(t > 0.0) || !std::isfinite(t))
    throw std::domain_error(std::string(who) + ": argument t must be > 0");
}

// direct q-series, adequate for t >= 1 where q <= exp(-2*pi)
double eta_series(double t) {
  const double q = std::exp(-2.0 * kPi * t);
  double prod = 1.0;
  double qm = 1.0;
  for (int m = 1; m <= 64; ++m) {
    qm *= q;
    prod *= 1.0 - qm;
    if (qm < 1e-18) break;
  }
  return std::exp(-kPi * t / 12.0) * prod;
}

double theta3_series(double t) {
  const double q = std::exp(-kPi * t);
  double sum = 1.0;
  for (int m = 1; m <= 64; ++m) {
    const double term = 2.0 * std::pow(q, static_cast<double>(m) * m);
    sum += term;
    if (term < 1e-18) break;
  }
  return sum;
}

LogDerivs log_eta_series_derivs(double t) {
  LogDerivs out;
  out.value = -kPi * t / 12.0;
  out.d1 = -kPi / 12.0;
  const double q = std::exp(-2.0 * kPi * t);
  double qm = 1.0;
  for (int m = 1; m <= 64; ++m) {
    qm *= q;
    if (qm < 1e-18) break;
    const double b = 2.0 * kPi * m;
    const double om = 1.0 - qm;
    out.value += std::log1p(-qm);
    out.d1 += b * qm / om;
    out.d2 -= b * b * qm / (om * om);
    out.d3 += b * b * b * qm * (1.0 + qm) / (om * om * om);
  }
  return out;
}

LogDerivs log_theta3_series_derivs(double t) {
  const double q = std::exp(-kPi * t);
  double th = 1.0, th1 = 0.0, th2 = 0.0, th3 = 0.0;
  for (int m = 1; m <= 64; ++m) {
    const double a = kPi * m * m;
    const double e = 2.0 * std::pow(q, static_cast<double>(m) * m);
    if (e < 1e-18) break;
    th += e;
    th1 -= a * e;
    th2 += a * a * e;
    th3 -= a * a * a * e;
  }
  LogDerivs out;
  out.value = std::log(th);
  const double l1 = th1 / th;
  out.d1 = l1;
  out.d2 = th2 / th - l1 * l1;
  out.d3 = th3 / th - 3.0 * (th2 / th) * l1 + 2.0 * l1 * l1 * l1;
  return out;
}

// modular map: f(i*t) = f(i/t)/sqrt(t) for both eta and theta3, so
// log f(i*t) = F(1/t) + log(u)/2 with u = 1/t and F = log f(i*u)
LogDerivs modular_transform(const LogDerivs& F, double t) {
  const double u = 1.0 / t;
  LogDerivs out;
  out.value = F.value + 0.5 * std::log(u);
  out.d1 = -u * u * F.d1 - 0.5 * u;
  out.d2 = u * u * u * u * F.d2 + 2.0 * u * u * u * F.d1 + 0.5 * u * u;
  out.d3 = -std::pow(u, 6) * F.d3 - 6.0 * std::pow(u, 5) * F.d2 - 6.0 * std::pow(u, 4) * F.d1 -
           u * u * u;
  return out;
}

}  // namespace

double dedekind_eta(double t) {
  require_positive_t(t, "dedekind_eta");
  if (t >= 1.0) return eta_series(t);
  return eta_series(1.0 / t) * std::sqrt(1.0 / t);
}

double jacobi_theta3(double t) {
  require_positive_t(t, "jacobi_theta3");
  if (t >= 1.0) return theta3_series(t);
  return theta3_series(1.0 / t) * std::sqrt(1.0 / t);
}

LogDerivs log_eta_derivs(double t) {
  require_positive_t(t, "log_eta_derivs");
  if (t >= 1.0) return log_eta_series_derivs(t);
  return modular_transform(log_eta_series_derivs(1.0 / t), t);
}

LogDerivs log_theta3_derivs(double t) {
  require_positive_t(t, "log_theta3_derivs");
  if (t >= 1.0) return log_theta3_series_derivs(t);
  return modular_transform(log_theta3_series_derivs(1.0 / t), t);
}

// ---------------------------------------------------------------- RVB ----

double rvb_entropy_shape(double x) {
  if (!(x > 0.0 && x < 1.0)) throw std::domain_error("rvb_entropy_shape: x outside (0,1)");
  static const double c0 = 2.0 * log_eta_derivs(1.0).value - log_theta3_derivs(2.0).value -
                           log_theta3_derivs(0.5).value;
  const double s = c0 + log_theta3_derivs(2.0 * x).value + log_theta3_derivs(2.0 * (1.0 - x)).value -
                   log_eta_derivs(2.0 * x).value - log_eta_derivs(2.0 * (1.0 - x)).value;
  return -2.0 * s;
}

double rvb_entropy_dx(double x) {
  if (!(x > 0.0 && x < 1.0)) throw std::domain_error("rvb_entropy_dx: x outside (0,1)");
  auto diff1 = [](double t) { return log_theta3_derivs(t).d1 - log_eta_derivs(t).d1; };
  return -4.0 * (diff1(2.0 * x) - diff1(2.0 * (1.0 - x)));
}

double rvb_entropy_d3x(double x) {
  if (!(x > 0.0 && x < 1.0)) throw std::domain_error("rvb_entropy_d3x: x outside (0,1)");
  auto diff3 = [](double t) { return log_theta3_derivs(t).d3 - log_eta_derivs(t).d3; };
  return -16.0 * (diff3(2.0 * x) - diff3(2.0 * (1.0 - x)));
}

// ---------------------------------------------------------------- AdS ----

namespace {

// absolute goal for O(1) integrals; the relative goal matters only for the
// chi -> 1 peak of the x(chi) integrand, where the GK error estimate floors
// at roundoff on values of order 1/(1-chi)
constexpr double kQuadAbs = 1e-12;
constexpr double kQuadRel = 1e-9;
constexpr double kSplitY = 0.5;  // y-space below, u-space (y = 1-u^2) above

double ads_P(double chi, double y) { return 1.0 - chi * y * y * y - (1.0 - chi) * y * y * y * y; }

// P(chi, 1-u^2) = u^2 * Q(chi, u); Q is regular and positive on [0,1)
double ads_Q(double chi, double u) {
  const double u2 = u * u;
  return (4.0 - chi) + u2 * (-(6.0 - 3.0 * chi) + u2 * ((4.0 - 3.0 * chi) - u2 * (1.0 - chi)));
}

void require_chi(double chi, const char* who) {
  if (!(chi > 0.0 && chi < 1.0)) throw std::domain_error(std::string(who) + ": chi outside (0,1)");
}

double shape_integral(double chi) {  // Int_0^1 dy/y^2 (1/sqrt(P) - 1)
  auto f_y = [chi](double y) {
    const double w = y * y * y * (chi + (1.0 - chi) * y);
    return std::expm1(-0.5 * std::log1p(-w)) / (y * y);
  };
  auto f_u = [chi](double u) {
    const double u2 = u * u;
    const double om = 1.0 - u2;
    return (2.0 / std::sqrt(ads_Q(chi, u)) - 2.0 * u) / (om * om);
  };
  return integrate(f_y, 0.0, kSplitY, kQuadAbs, kQuadRel) +
         integrate(f_u, 0.0, std::sqrt(1.0 - kSplitY), kQuadAbs, kQuadRel);
}

double x_integral(double chi) {  // Int_0^1 y^2 dy / ((1 - chi y^3) sqrt(P))
  auto f_y = [chi](double y) {
    return y * y / ((1.0 - chi * y * y * y) * std::sqrt(ads_P(chi, y)));
  };
  auto f_u = [chi](double u) {
    const double y = 1.0 - u * u;
    const double y2 = y * y;
    return 2.0 * y2 / ((1.0 - chi * y * y2) * std::sqrt(ads_Q(chi, u)));
  };
  return integrate(f_y, 0.0, kSplitY, kQuadAbs, kQuadRel) +
         integrate(f_u, 0.0, std::sqrt(1.0 - kSplitY), kQuadAbs, kQuadRel);
}

double shape_integral_dchi(double chi) {  // (1/2) Int y (1-y) P^(-3/2)
  auto f_y = [chi](double y) { return y * (1.0 - y) * std::pow(ads_P(chi, y), -1.5); };
  auto f_u = [chi](double u) {
    return 2.0 * (1.0 - u * u) * std::pow(ads_Q(chi, u), -1.5);
  };
  return 0.5 * (integrate(f_y, 0.0, kSplitY, kQuadAbs, kQuadRel) +
                integrate(f_u, 0.0, std::sqrt(1.0 - kSplitY), kQuadAbs, kQuadRel));
}

double x_integral_dchi(double chi) {
  auto f_y = [chi](double y) {
    const double y3 = y * y * y;
    const double denom = 1.0 - chi * y3;
    const double P = ads_P(chi, y);
    return y * y * y3 / (denom * denom * std::sqrt(P)) +
           0.5 * y * y * y3 * (1.0 - y) / (denom * std::pow(P, 1.5));
  };
  auto f_u = [chi](double u) {
    const double y = 1.0 - u * u;
    const double y3 = y * y * y;
    const double denom = 1.0 - chi * y3;
    const double y5 = y3 * y * y;
    const double Q = ads_Q(chi, u);
    return 2.0 * y5 / (denom * denom * std::sqrt(Q)) + y5 / (denom * std::pow(Q, 1.5));
  };
  return integrate(f_y, 0.0, kSplitY, kQuadAbs, kQuadRel) +
         integrate(f_u, 0.0, std::sqrt(1.0 - kSplitY), kQuadAbs, kQuadRel);
}

}  // namespace

double ads_x_of_chi(double chi) {
  require_chi(chi, "ads_x_of_chi");
  return 3.0 / (2.0 * kPi) * std::cbrt(chi) * std::sqrt(1.0 - chi) * x_integral(chi);
}

double ads_entropy_shape(double chi) {
  if (!(chi > 0.0 && chi <= 1.0)) throw std::domain_error("ads_entropy_shape: chi outside (0,1]");
  return (shape_integral(chi) - 1.0) / std::cbrt(chi);
}

double ads_entropy_shape_dchi(double chi) {
  require_chi(chi, "ads_entropy_shape_dchi");
  const double cb = std::cbrt(chi);
  return -(shape_integral(chi) - 1.0) / (3.0 * chi * cb) + shape_integral_dchi(chi) / cb;
}

double ads_dx_dchi(double chi) {
  require_chi(chi, "ads_dx_dchi");
  const double J = x_integral(chi);
  const double Jp = x_integral_dchi(chi);
  const double cb = std::cbrt(chi);
  const double sq = std::sqrt(1.0 - chi);
  return 3.0 / (2.0 * kPi) *
         (cb / (3.0 * chi) * sq * J - 0.5 * cb / sq * J + cb * sq * Jp);
}

double ads_chi_of_x(double x) {
  if (!(x > 0.0)) throw std::domain_error("ads_chi_of_x: x must be > 0");
  // x(chi) -> 1/2 like sqrt(1-chi); this cap supports x up to ~0.49997,
  // i.e. midpoint grids for any extent below ~10^4
  static const double chi_hi = 1.0 - 1e-8;
  static const double x_sup = ads_x_of_chi(chi_hi);
  if (x >= x_sup)
    throw std::domain_error("ads_chi_of_x: x = " + std::to_string(x) +
                            " beyond the attainable range (sup ~ 0.5)");
  double lo = 1e-12, hi = chi_hi;
  if (x <= ads_x_of_chi(lo))
    throw std::domain_error("ads_chi_of_x: x = " + std::to_string(x) + " below the inversion bracket");
  // bisection on the monotone map until the bracket is 1e-10 tight in x
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double xm = ads_x_of_chi(mid);
    if (xm < x)
      lo = mid;
    else
      hi = mid;
    if (std::abs(xm - x) < 1e-11 || hi - lo < 1e-15) break;
  }
  return 0.5 * (lo + hi);
}

double ads_entropy_dx(double x) {
  if (!(x > 0.0 && x < 0.5)) throw std::domain_error("ads_entropy_dx: x outside (0, 1/2)");
  const double chi = ads_chi_of_x(x);
  return ads_entropy_shape_dchi(chi) / ads_dx_dchi(chi);
}

// -------------------------------------------------------------- models ----

ModelInfo model_info(ModelId id) {
  switch (id) {
    case ModelId::Cft2dPlane:     return {2, 2, false, false, "cft2d_plane"};
    case ModelId::Cft2dCylinder:  return {2, 2, false, false, "cft2d_cylinder"};
    case ModelId::Fit2dCorrected: return {1, 2, true, true, "fit2d_corrected"};
    case ModelId::G2d:            return {2, 3, false, false, "g2d"};
    case ModelId::Grvb:           return {2, 3, false, false, "g_rvb"};
    case ModelId::Gads:           return {2, 3, false, false, "g_ads"};
    case ModelId::F2d:            return {1, 3, true, false, "f2d"};
    case ModelId::Frvb:           return {1, 3, true, false, "f_rvb"};
    case ModelId::Fads:           return {1, 3, true, false, "f_ads"};
    case ModelId::Cosine:         return {2, 2, false, false, "cosine"};
  }
  throw std::invalid_argument("model_info: unknown model id");
}

ModelId model_from_name(const std::string& name) {
  for (ModelId id : {ModelId::Cft2dPlane, ModelId::Cft2dCylinder, ModelId::Fit2dCorrected,
                     ModelId::G2d, ModelId::Grvb, ModelId::Gads, ModelId::F2d, ModelId::Frvb,
                     ModelId::Fads, ModelId::Cosine})
    if (name == model_info(id).name) return id;
  throw std::invalid_argument("unknown model name: " + name);
}

namespace {

void check_model_args(ModelId id, double x, size_t n_params, double extent) {
  const ModelInfo info = model_info(id);
  if (static_cast<int>(n_params) != info.arity)
    throw std::invalid_argument(std::string("model ") + info.name + " takes " +
                                std::to_string(info.arity) + " parameters, got " +
                                std::to_string(n_params));
  if (!(x > 0.0 && x < 1.0))
    throw std::domain_error(std::string("model ") + info.name + ": x outside (0,1)");
  if (info.needs_extent && !(extent > 0.0))
    throw std::invalid_argument(std::string("model ") + info.name + " needs the lattice extent L");
}

// g_AdS pieces with the x <-> 1-x reflection; chi(x) reaches 1 only in the
// x -> 1/2 limit, so a narrow window around the midpoint is evaluated at
// the endpoint values (shape there is finite, the slope vanishes by
// symmetry)
constexpr double kAdsMidpointWindow = 1e-4;

double gads_shape_of_x(double x) {
  const double xm = std::min(x, 1.0 - x);
  if (xm > 0.5 - kAdsMidpointWindow) return ads_entropy_shape(1.0);
  return ads_entropy_shape(ads_chi_of_x(xm));
}

double gads_dx_of_x(double x) {
  const double xm = std::min(x, 1.0 - x);
  if (xm > 0.5 - kAdsMidpointWindow) return 0.0;
  return x < 0.5 ? ads_entropy_dx(x) : -ads_entropy_dx(1.0 - x);
}

}  // namespace

void model_basis(ModelId id, double x, double extent, double& offset, std::span<double> basis) {
  check_model_args(id, x, basis.size(), extent);
  offset = 0.0;
  const double s = std::sin(kPi * x);
  const double c = std::cos(kPi * x);
  const double cfn = s * s / (2.0 * kPi * kPi);  // c-function prefactor on dg/dx, D=3
  switch (id) {
    case ModelId::Cft2dPlane:
      basis[0] = 0.25 * std::log(x);
      basis[1] = 1.0;
      return;
    case ModelId::Cft2dCylinder:
      basis[0] = 0.25 * std::log(s);
      basis[1] = 1.0;
      return;
    case ModelId::Fit2dCorrected:
      offset = c / 16.0;
      basis[0] = c / (2.0 * extent * s);
      return;
    case ModelId::G2d:
      basis[0] = std::log(s);
      basis[1] = 1.0;
      return;
    case ModelId::Grvb:
      basis[0] = rvb_entropy_shape(x);
      basis[1] = 1.0;
      return;
    case ModelId::Gads:
      basis[0] = gads_shape_of_x(x);
      basis[1] = 1.0;
      return;
    case ModelId::F2d:
      basis[0] = s * c / (2.0 * kPi);
      return;
    case ModelId::Frvb:
      basis[0] = cfn * rvb_entropy_dx(x);
      return;
    case ModelId::Fads:
      basis[0] = cfn * gads_dx_of_x(x);
      return;
    case ModelId::Cosine:
      basis[0] = c;
      basis[1] = 1.0;
      return;
  }
  throw std::invalid_argument("model_basis: unknown model id");
}

double model_eval(ModelId id, double x, std::span<const double> params, double extent) {
  check_model_args(id, x, params.size(), extent);
  const ModelInfo info = model_info(id);
  double offset = 0.0;
  std::vector<double> basis(info.arity);
  model_basis(id, x, extent, offset, basis);
  double v = offset;
  for (int j = 0; j < info.arity; ++j) v += params[j] * basis[j];
  return v;
}

namespace {

// third derivative of log sin(pi x)
double d3_log_sin(double x) {
  const double s = std::sin(kPi * x);
  const double c = std::cos(kPi * x);
  return 2.0 * kPi * kPi * kPi * c / (s * s * s);
}

// third derivative of csc(pi x)
double d3_csc(double x) {
  const double s = std::sin(kPi * x);
  const double c = std::cos(kPi * x);
  return -kPi * kPi * kPi * c * (2.0 * s * s + 3.0 + 3.0 * c * c) / (s * s * s * s);
}

// Richardson-extrapolated second difference of the analytic first
// derivative; only used for the holographic curve, where an exact third
// derivative buys nothing for an error estimate
double d3_ads(double x) {
  const double xm = std::min(x, 1.0 - x);
  double h = 5e-3;
  h = std::min(h, 0.25 * xm);
  h = std::min(h, 0.25 * (0.5 - xm));
  if (h < 1e-6) return 0.0;  // flat region around x = 1/2
  auto second_diff = [&](double step) {
    return (gads_dx_of_x(x + step) - 2.0 * gads_dx_of_x(x) + gads_dx_of_x(x - step)) /
           (step * step);
  };
  const double d_h = second_diff(h);
  const double d_h2 = second_diff(0.5 * h);
  return (4.0 * d_h2 - d_h) / 3.0;
}

}  // namespace

double model_entropy_d3(ModelId id, double x, std::span<const double> params, double extent) {
  check_model_args(id, x, params.size(), extent);
  switch (id) {
    case ModelId::Cft2dPlane:
      return params[0] * 0.5 / (x * x * x);
    case ModelId::Cft2dCylinder:
      return params[0] * 0.25 * d3_log_sin(x);
    case ModelId::Fit2dCorrected:
      return 0.125 * d3_log_sin(x) - params[0] / extent * d3_csc(x);
    case ModelId::G2d:
    case ModelId::F2d:
      return params[0] * d3_log_sin(x);
    case ModelId::Grvb:
    case ModelId::Frvb:
      return params[0] * rvb_entropy_d3x(x);
    case ModelId::Gads:
    case ModelId::Fads:
      return params[0] * d3_ads(x);
    case ModelId::Cosine:
      return params[0] * kPi * kPi * kPi * std::sin(kPi * x);
  }
  throw std::invalid_argument("model_entropy_d3: unknown model id");
}

}  // namespace entropic

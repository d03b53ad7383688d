// special.h
//
// Special functions and model curves: Dedekind eta and Jacobi theta-3 on
// the imaginary axis, the RVB torus entropy, the holographic slab entropy
// with its chi(x) inversion, the 2D CFT forms, and a uniform evaluation
// interface for fitting. Everything here is pure and reentrant.

#pragma once

#include <span>
#include <string>
#include <vector>

namespace entropic {

// eta(i*t) = q^(1/24) prod_{m>=1} (1-q^m), q = exp(-2*pi*t); t > 0
double dedekind_eta(double t);

// theta3(i*t) = 1 + 2 sum_{m>=1} q^(m^2), q = exp(-pi*t); t > 0
double jacobi_theta3(double t);

// log f(i*t) and its first three t-derivatives; series for t >= 1, the
// modular map t -> 1/t below
struct LogDerivs {
  double value = 0.0;
  double d1 = 0.0;
  double d2 = 0.0;
  double d3 = 0.0;
};
LogDerivs log_eta_derivs(double t);
LogDerivs log_theta3_derivs(double t);

// ---- holographic slab (torus) entropy ----
// P(chi, y) = 1 - chi*y^3 - (1-chi)*y^4; the y=1 endpoint singularity is
// removed by the substitution y = 1 - u^2.

// x(chi) = 3/(2*pi) chi^(1/3) (1-chi)^(1/2) Int_0^1 y^2 dy /((1-chi y^3) sqrt(P))
double ads_x_of_chi(double chi);
// monotone inversion of the above; throws std::domain_error past sup x = 1/2
double ads_chi_of_x(double x);
// shape chi^(-1/3) * (Int_0^1 dy/y^2 (1/sqrt(P) - 1) - 1); multiplies c in the
// entropy model
double ads_entropy_shape(double chi);
// d(shape)/dchi and dx/dchi, by differentiation under the integral
double ads_entropy_shape_dchi(double chi);
double ads_dx_dchi(double chi);
// d(shape)/dx via the chain rule, as a function of x in (0, 1/2)
double ads_entropy_dx(double x);

// ---- RVB torus entropy (tau = i, square spatial torus) ----
// shape multiplying c in g_RVB, and its first/third x-derivatives
double rvb_entropy_shape(double x);
double rvb_entropy_dx(double x);
double rvb_entropy_d3x(double x);

// ---- model curves ----
enum class ModelId {
  Cft2dPlane,      // entropy, D=2 plane:      (c/4) log x + k
  Cft2dCylinder,   // entropy, D=2 cylinder:   (c/4) log sin(pi x) + k
  Fit2dCorrected,  // c-function, D=2:         cos(pi x)/16 + (k/2L) cot(pi x)
  G2d,             // entropy, D=3:            c log sin(pi x) + k
  Grvb,            // entropy, D=3:            c * rvb_shape(x) + k
  Gads,            // entropy, D=3:            c * ads_shape(chi(x)) + k
  F2d,             // c-function, D=3:         (c/2pi) sin(pi x) cos(pi x)
  Frvb,            // c-function, D=3:         sin^2(pi x)/(2 pi^2) d g_rvb/dx
  Fads,            // c-function, D=3:         sin^2(pi x)/(2 pi^2) d g_ads/dx
  Cosine,          // entropy, analytic test curve: c cos(pi x) + k
};

struct ModelInfo {
  int arity = 0;            // free parameters: 1 (c or k) or 2 (c, k)
  int dim = 0;              // dimension the curve describes
  bool is_cfunction = false;
  bool needs_extent = false;  // Fit2dCorrected carries an explicit 1/L factor
  const char* name = "";
};
ModelInfo model_info(ModelId id);
ModelId model_from_name(const std::string& name);

// evaluate the named closed form; params arity must match model_info
double model_eval(ModelId id, double x, std::span<const double> params, double extent = 0.0);

// linear decomposition value(x) = offset(x) + sum_j params[j] * basis[j](x)
void model_basis(ModelId id, double x, double extent, double& offset, std::span<double> basis);

// third derivative of the model's entropy form g(x), used by the
// finite-difference systematics; analytic except for the holographic curve
double model_entropy_d3(ModelId id, double x, std::span<const double> params, double extent = 0.0);

}  // namespace entropic

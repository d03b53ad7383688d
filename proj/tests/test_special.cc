// test_special.cc

#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "entropic/special.h"

using namespace entropic;

namespace {
constexpr double kPi = 3.14159265358979323846;

// five-point central difference of f at x
template <class F>
double fd1(const F& f, double x, double h) {
  return (-f(x + 2 * h) + 8 * f(x + h) - 8 * f(x - h) + f(x - 2 * h)) / (12 * h);
}
}  // namespace

TEST_CASE("eta and theta3 against their closed forms") {
  // eta(i) = Gamma(1/4) / (2 pi^(3/4)), theta3(i) = pi^(1/4) / Gamma(3/4)
  const double eta_i = std::tgamma(0.25) / (2.0 * std::pow(kPi, 0.75));
  const double th3_i = std::pow(kPi, 0.25) / std::tgamma(0.75);
  CHECK(dedekind_eta(1.0) == doctest::Approx(eta_i).epsilon(1e-13));
  CHECK(dedekind_eta(1.0) == doctest::Approx(0.7682254223260566).epsilon(1e-14));
  CHECK(jacobi_theta3(1.0) == doctest::Approx(th3_i).epsilon(1e-13));
  CHECK(jacobi_theta3(1.0) == doctest::Approx(1.0864348112133080).epsilon(1e-14));

  CHECK(dedekind_eta(2.0) == doctest::Approx(0.5923827813324159).epsilon(1e-14));
  CHECK(jacobi_theta3(0.5) == doctest::Approx(1.4194954880837661).epsilon(1e-14));

  CHECK_THROWS_AS(dedekind_eta(0.0), std::domain_error);
  CHECK_THROWS_AS(jacobi_theta3(-1.0), std::domain_error);
}

TEST_CASE("modular symmetry and limits") {
  for (double t : {2.0, 3.5, 1.25}) {
    CHECK(dedekind_eta(1.0 / t) == doctest::Approx(std::sqrt(t) * dedekind_eta(t)).epsilon(1e-13));
    CHECK(jacobi_theta3(1.0 / t) == doctest::Approx(std::sqrt(t) * jacobi_theta3(t)).epsilon(1e-13));
  }
  // large t: eta ~ exp(-pi t/12), theta3 -> 1
  CHECK(dedekind_eta(40.0) == doctest::Approx(std::exp(-kPi * 40.0 / 12.0)).epsilon(1e-12));
  CHECK(jacobi_theta3(40.0) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("log-derivative bundles agree with finite differences") {
  for (double t : {0.31, 0.8, 1.7, 2.9}) {
    auto eta = log_eta_derivs(t);
    auto th = log_theta3_derivs(t);
    CHECK(eta.value == doctest::Approx(std::log(dedekind_eta(t))).epsilon(1e-12));
    CHECK(th.value == doctest::Approx(std::log(jacobi_theta3(t))).epsilon(1e-12));

    auto eta_v = [](double s) { return std::log(dedekind_eta(s)); };
    auto th_v = [](double s) { return std::log(jacobi_theta3(s)); };
    const double h = 1e-3;
    CHECK(eta.d1 == doctest::Approx(fd1(eta_v, t, h)).epsilon(1e-8));
    CHECK(th.d1 == doctest::Approx(fd1(th_v, t, h)).epsilon(1e-8));

    auto eta_d1 = [](double s) { return log_eta_derivs(s).d1; };
    auto th_d1 = [](double s) { return log_theta3_derivs(s).d1; };
    CHECK(eta.d2 == doctest::Approx(fd1(eta_d1, t, h)).epsilon(1e-8));
    CHECK(th.d2 == doctest::Approx(fd1(th_d1, t, h)).epsilon(1e-8));

    auto eta_d2 = [](double s) { return log_eta_derivs(s).d2; };
    auto th_d2 = [](double s) { return log_theta3_derivs(s).d2; };
    CHECK(eta.d3 == doctest::Approx(fd1(eta_d2, t, h)).epsilon(1e-7));
    CHECK(th.d3 == doctest::Approx(fd1(th_d2, t, h)).epsilon(1e-7));
  }
}

TEST_CASE("RVB entropy shape against an independent evaluation") {
  CHECK(rvb_entropy_shape(0.25) == doctest::Approx(-0.11308699671963243).epsilon(1e-12));
  CHECK(rvb_entropy_shape(0.5) == doctest::Approx(0.37645281291919543).epsilon(1e-12));
  CHECK(rvb_entropy_shape(0.1) == doctest::Approx(-1.8117025828761188).epsilon(1e-12));
  CHECK(rvb_entropy_dx(0.25) == doctest::Approx(4.8247806512797755).epsilon(1e-11));
  CHECK(rvb_entropy_d3x(0.25) == doctest::Approx(370.62396734844801).epsilon(1e-9));

  // symmetry about x = 1/2
  for (double x : {0.1, 0.23, 0.42}) {
    CHECK(rvb_entropy_shape(x) == doctest::Approx(rvb_entropy_shape(1.0 - x)).epsilon(1e-12));
    CHECK(rvb_entropy_dx(x) == doctest::Approx(-rvb_entropy_dx(1.0 - x)).epsilon(1e-12));
  }
  CHECK(rvb_entropy_dx(0.5) == 0.0);
}

TEST_CASE("holographic x(chi) quadrature against an independent evaluation") {
  CHECK(ads_x_of_chi(0.3) == doctest::Approx(0.20807732822991281).epsilon(1e-10));
  CHECK(ads_x_of_chi(0.5) == doctest::Approx(0.26405612608516404).epsilon(1e-10));
  CHECK(ads_x_of_chi(0.6) == doctest::Approx(0.29205100279553859).epsilon(1e-10));
  CHECK(ads_entropy_shape(0.5) == doctest::Approx(-0.65523466890489031).epsilon(1e-10));
  CHECK(ads_entropy_shape(0.3) == doctest::Approx(-0.82563070474966132).epsilon(1e-10));

  CHECK(ads_x_of_chi(0.3) < ads_x_of_chi(0.6));
  CHECK(ads_x_of_chi(1e-9) < 1e-3);  // chi^(1/3) prefactor wins

  CHECK_THROWS_AS(ads_x_of_chi(0.0), std::domain_error);
  CHECK_THROWS_AS(ads_x_of_chi(1.0), std::domain_error);
}

TEST_CASE("chi(x) inversion round trips") {
  CHECK(ads_chi_of_x(0.25) == doctest::Approx(0.44882017423647809).epsilon(1e-8));
  for (double x : {0.1, 0.25, 0.4, 0.45}) {
    CHECK(ads_x_of_chi(ads_chi_of_x(x)) == doctest::Approx(x).epsilon(1e-8));
  }
  for (double chi : {0.25, 0.5, 0.75}) {
    CHECK(ads_chi_of_x(ads_x_of_chi(chi)) == doctest::Approx(chi).epsilon(1e-7));
  }
  CHECK_THROWS_AS(ads_chi_of_x(0.51), std::domain_error);
  CHECK_THROWS_AS(ads_chi_of_x(0.4999999999), std::domain_error);
}

TEST_CASE("f/g derivative consistency for every model pair") {
  const double c = 0.12, k = 0.37;
  struct Pair {
    ModelId g, f;
  };
  for (const Pair& pair : {Pair{ModelId::G2d, ModelId::F2d}, Pair{ModelId::Grvb, ModelId::Frvb},
                           Pair{ModelId::Gads, ModelId::Fads}}) {
    for (int i = 0; i < 20; ++i) {
      const double x = 0.025 + 0.45 * i / 19.0;  // interior, clear of 1/2
      const double gparams[2] = {c, k};
      const double fparams[1] = {c};
      auto g = [&](double xx) { return model_eval(pair.g, xx, std::span(gparams, 2)); };
      const double fd = fd1(g, x, 1e-3) * std::sin(kPi * x) * std::sin(kPi * x) / (2 * kPi * kPi);
      const double f = model_eval(pair.f, x, std::span(fparams, 1));
      CHECK(f == doctest::Approx(fd).epsilon(1e-6));
    }
  }
}

TEST_CASE("model closed-form spot values") {
  const double c = 0.135;
  const double params1[1] = {c};
  const double params2[2] = {c, 0.4};

  CHECK(model_eval(ModelId::F2d, 0.5, std::span(params1, 1)) == doctest::Approx(0.0).scale(1.0));
  CHECK(model_eval(ModelId::G2d, 0.5, std::span(params2, 2)) == doctest::Approx(0.4).epsilon(1e-14));
  CHECK(model_eval(ModelId::Frvb, 0.5, std::span(params1, 1)) == doctest::Approx(0.0).scale(1.0));
  CHECK(model_eval(ModelId::Fads, 0.5, std::span(params1, 1)) == doctest::Approx(0.0).scale(1.0));

  // corrected 2D fit function at the midpoint: both terms vanish
  const double kk[1] = {0.162};
  CHECK(model_eval(ModelId::Fit2dCorrected, 0.5, std::span(kk, 1), 32.0) ==
        doctest::Approx(0.0).scale(1.0));
  // and reproduces cos/16 + (k/2L) cot elsewhere
  const double x = 0.25;
  CHECK(model_eval(ModelId::Fit2dCorrected, x, std::span(kk, 1), 32.0) ==
        doctest::Approx(std::cos(kPi * x) / 16.0 +
                        0.162 / 64.0 * std::cos(kPi * x) / std::sin(kPi * x))
            .epsilon(1e-14));

  // antisymmetry of every c-function model
  for (ModelId id : {ModelId::F2d, ModelId::Frvb, ModelId::Fads}) {
    for (double xx : {0.1, 0.3, 0.45}) {
      CHECK(model_eval(id, xx, std::span(params1, 1)) ==
            doctest::Approx(-model_eval(id, 1.0 - xx, std::span(params1, 1))).epsilon(1e-9));
    }
  }

  CHECK_THROWS_AS(model_eval(ModelId::F2d, 0.5, std::span(params2, 2)), std::invalid_argument);
  CHECK_THROWS_AS(model_eval(ModelId::G2d, 1.5, std::span(params2, 2)), std::domain_error);
  CHECK_THROWS_AS(model_eval(ModelId::Fit2dCorrected, 0.5, std::span(kk, 1)),
                  std::invalid_argument);  // missing extent
}

TEST_CASE("holographic integrand is regular at both endpoints") {
  // the g_AdS integrand (1/y^2)(1/sqrt(P) - 1) stays finite for y -> 0
  auto integrand = [](double chi, double y) {
    const double P = 1.0 - chi * y * y * y - (1.0 - chi) * y * y * y * y;
    return (1.0 / std::sqrt(P) - 1.0) / (y * y);
  };
  CHECK(std::abs(integrand(0.5, 1e-6)) < 1e-5);
  CHECK(integrand(0.5, 1e-6) == doctest::Approx(0.5 * 0.5 * 1e-6).epsilon(1e-3));
}

TEST_CASE("model registry") {
  CHECK(model_info(ModelId::G2d).arity == 2);
  CHECK(model_info(ModelId::F2d).arity == 1);
  CHECK(model_info(ModelId::Fads).is_cfunction);
  CHECK_FALSE(model_info(ModelId::Gads).is_cfunction);
  CHECK(model_from_name("f_ads") == ModelId::Fads);
  CHECK(model_from_name("fit2d_corrected") == ModelId::Fit2dCorrected);
  CHECK_THROWS_AS(model_from_name("nope"), std::invalid_argument);
}

// test_fit.cc

#include <cmath>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "entropic/fit.h"

using namespace entropic;

namespace {

std::vector<FitPoint> synthetic(ModelId model, std::span<const double> params, double extent,
                                int n, double err) {
  std::vector<FitPoint> pts;
  for (int i = 0; i < n; ++i) {
    const double x = (i + 0.5) / n;
    pts.push_back({x, model_eval(model, x, params, extent), err});
  }
  return pts;
}

}  // namespace

TEST_CASE("noiseless linear recovery is exact") {
  const double c[1] = {0.135};
  auto pts = synthetic(ModelId::F2d, std::span(c, 1), 0, 12, 0.01);
  auto fit = weighted_fit(pts, ModelId::F2d);
  CHECK(fit.params[0] == doctest::Approx(0.135).epsilon(1e-12));
  CHECK(fit.chi2 == doctest::Approx(0.0).scale(1.0).epsilon(1e-18));
  CHECK(fit.ndof == 11);

  const double ck[2] = {0.078, 0.33};
  auto pts2 = synthetic(ModelId::Grvb, std::span(ck, 2), 0, 10, 0.02);
  auto fit2 = weighted_fit(pts2, ModelId::Grvb);
  CHECK(fit2.params[0] == doctest::Approx(0.078).epsilon(1e-10));
  CHECK(fit2.params[1] == doctest::Approx(0.33).epsilon(1e-10));
}

TEST_CASE("hand-solved one-parameter normal equation") {
  // y = c * s(x) with two observations; the F2d basis shape is
  // s(x) = sin(pi x) cos(pi x) / (2 pi), so feed x values whose shapes are
  // known and solve by hand: with equal errors, c = sum(s y)/sum(s^2)
  std::vector<FitPoint> pts{{0.15, 0.5, 0.1}, {0.35, 1.0, 0.1}};
  auto shape = [](double x) { return std::sin(M_PI * x) * std::cos(M_PI * x) / (2 * M_PI); };
  const double expected = (shape(0.15) * 0.5 + shape(0.35) * 1.0) /
                          (shape(0.15) * shape(0.15) + shape(0.35) * shape(0.35));
  auto fit = weighted_fit(pts, ModelId::F2d);
  CHECK(fit.params[0] == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("uniform error rescaling leaves parameters, scales chi2") {
  const double ck[2] = {0.1, 0.2};
  auto pts = synthetic(ModelId::G2d, std::span(ck, 2), 0, 14, 0.05);
  // perturb to get nonzero residuals, deterministically
  for (size_t i = 0; i < pts.size(); ++i) pts[i].y += (i % 2 ? 1 : -1) * 0.03;
  auto fit1 = weighted_fit(pts, ModelId::G2d);
  for (auto& p : pts) p.err *= 3.0;
  auto fit2 = weighted_fit(pts, ModelId::G2d);
  CHECK(fit1.params[0] == doctest::Approx(fit2.params[0]).epsilon(1e-12));
  CHECK(fit1.params[1] == doctest::Approx(fit2.params[1]).epsilon(1e-12));
  CHECK(fit1.chi2 == doctest::Approx(9.0 * fit2.chi2).epsilon(1e-10));
  CHECK(fit2.param_errs[0] == doctest::Approx(3.0 * fit1.param_errs[0]).epsilon(1e-10));
}

TEST_CASE("best fit minimizes chi2") {
  const double ck[2] = {0.115, 0.4};
  auto pts = synthetic(ModelId::Gads, std::span(ck, 2), 0, 9, 0.02);
  for (size_t i = 0; i < pts.size(); ++i) pts[i].y += (i % 3 == 0 ? 0.01 : -0.005);
  auto fit = weighted_fit(pts, ModelId::Gads);
  const double at_best = chi2_against(pts, ModelId::Gads, fit.params).first;
  for (double eps : {1e-3, -1e-3}) {
    std::vector<double> bumped = fit.params;
    bumped[0] += eps;
    CHECK(chi2_against(pts, ModelId::Gads, bumped).first > at_best);
    bumped = fit.params;
    bumped[1] += eps;
    CHECK(chi2_against(pts, ModelId::Gads, bumped).first > at_best);
  }
}

TEST_CASE("chi2 closed forms and masks") {
  const double c[1] = {0.2};
  auto pts = synthetic(ModelId::F2d, std::span(c, 1), 0, 8, 0.1);
  CHECK(chi2_against(pts, ModelId::F2d, std::span(c, 1)).first == doctest::Approx(0.0).scale(1.0));

  auto off = pts;
  off[3].y += 2.0 * off[3].err;
  CHECK(chi2_against(off, ModelId::F2d, std::span(c, 1)).first == doctest::Approx(4.0).epsilon(1e-10));

  // mask away the offending point
  auto mask = exclusion_mask(off.size(), 0, 0);
  mask[3] = false;
  CHECK(chi2_against(off, ModelId::F2d, std::span(c, 1), 0, mask).first ==
        doctest::Approx(0.0).scale(1.0));

  auto head_tail = exclusion_mask(8, 2, 2);
  CHECK(head_tail == std::vector<bool>{false, false, true, true, true, true, false, false});
}

TEST_CASE("degenerate inputs are rejected") {
  std::vector<FitPoint> same{{0.3, 1.0, 0.1}, {0.3, 1.1, 0.1}, {0.3, 0.9, 0.1}};
  CHECK_THROWS_AS(weighted_fit(same, ModelId::G2d), std::runtime_error);

  std::vector<FitPoint> few{{0.3, 1.0, 0.1}, {0.4, 1.1, 0.1}};
  CHECK_THROWS_AS(weighted_fit(few, ModelId::G2d), std::invalid_argument);

  std::vector<FitPoint> bad_err{{0.3, 1.0, 0.0}, {0.4, 1.1, 0.1}, {0.5, 1.0, 0.1}};
  CHECK_THROWS_AS(weighted_fit(bad_err, ModelId::G2d), std::invalid_argument);
}

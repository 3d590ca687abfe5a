#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "yamabe/errors.hpp"
#include "yamabe/expr/parser.hpp"
#include "yamabe/geometry/curvature.hpp"
#include "yamabe/geometry/local_geometry.hpp"
#include "yamabe/soliton/identities.hpp"
#include "yamabe/soliton/sampling.hpp"
#include "yamabe/warped/charts.hpp"
#include "yamabe/warped/closed_form.hpp"
#include "yamabe/warped/cross_check.hpp"
#include "yamabe/warped/product.hpp"

using namespace yamabe;

namespace {

Expr radial(const std::string& s) {
  const std::vector<std::string> declared{"r"};
  return parse(s, declared);
}

WarpedProfilePoint cosh_point(int n, double r, double fiber_scalar = 2.0) {
  return profile_from_expression(n, fiber_scalar, radial("cosh(r)"), r);
}

}  // namespace

TEST(Profile, JetDerivatives) {
  const auto w = cosh_point(3, 0.5);
  EXPECT_NEAR(w.d1, std::cosh(0.5), 1e-15);
  EXPECT_NEAR(w.d2, std::sinh(0.5), 1e-15);
  EXPECT_NEAR(w.d3, std::cosh(0.5), 1e-14);
  ASSERT_TRUE(w.d4);
  EXPECT_NEAR(*w.d4, std::sinh(0.5), 1e-14);
}

TEST(Profile, Preconditions) {
  EXPECT_THROW(validate({3, 2.0, 0.0, 0.0, 0.0, 0.0, {}}), DomainError);
  EXPECT_THROW(validate({3, 2.0, 0.0, -1.0, 0.0, 0.0, {}}), DomainError);
  EXPECT_THROW(validate({2, 2.0, 0.0, 1.0, 0.0, 0.0, {}}), DimensionError);
  EXPECT_THROW(validate({3, 2.0, 0.0, 1.0, NAN, 0.0, {}}), DomainError);
  EXPECT_THROW(profile_from_expression(3, 2.0, radial("r"), -0.5), DomainError);
  EXPECT_THROW(closed_form_curvature({3, 2.0, 0.0, -1.0, 0.0, 0.0, {}}), DomainError);
  EXPECT_THROW(ric_radial({3, 2.0, 0.0, 0.0, 0.0, 0.0, {}}), DomainError);
}

TEST(ClosedForm, FlatSphericalCoordinates) {
  for (double r : {0.3, 1.0, 2.5}) {
    const auto c = closed_form_curvature({3, 2.0, r, r, 1.0, 0.0, {}});
    EXPECT_NEAR(c.scalar, 0.0, 1e-14);
    EXPECT_NEAR(c.ricci_radial, 0.0, 1e-14);
    EXPECT_NEAR(c.ricci_fiber, 0.0, 1e-14);
    EXPECT_NEAR(c.radial_mixed, 0.0, 1e-14);
    EXPECT_NEAR(c.fiber_block, 0.0, 1e-14);
  }
}

TEST(ClosedForm, ConstantWarping) {
  for (double a : {0.5, 1.0, 3.0}) {
    for (double rbar : {-2.0, 2.0, 5.0}) {
      const auto c = closed_form_curvature({3, rbar, 0.0, a, 0.0, 0.0, {}});
      EXPECT_NEAR(c.scalar, rbar / (a * a), 1e-14);
      EXPECT_EQ(c.ricci_radial, 0.0);
      EXPECT_NEAR(c.ricci_fiber, 0.5 * c.scalar * a * a, 1e-14);
    }
  }
}

TEST(ClosedForm, FourDimensionalCoshAgreesWithEngine) {
  const auto report = cross_check(4, 6.0, radial("cosh(r)"), 0.5, 0.5, 1);
  EXPECT_LE(report.riemann, 1e-8);
  EXPECT_LE(report.ricci, 1e-8);
  EXPECT_LE(report.scalar, 1e-8);
  EXPECT_LE(report.cotton, 1e-8);
}

TEST(ClosedForm, ThreeDimensionalReductions) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int t = 0; t < 200; ++t) {
    const WarpedProfilePoint w{3, u(rng), 0.0, 0.1 + std::abs(u(rng)), u(rng), u(rng), {}};
    const auto c = closed_form_curvature(w);
    EXPECT_NEAR(c.ricci_radial, -2.0 * w.d3 / w.d1, 1e-12);
    EXPECT_NEAR(c.ricci_fiber, 0.5 * c.scalar * w.d1 * w.d1 + w.d1 * w.d3, 1e-10 * (1.0 + std::abs(c.ricci_fiber)));
  }
}

TEST(ClosedForm, TraceIdentity) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int t = 0; t < 500; ++t) {
    const int n = 3 + t % 3;
    const WarpedProfilePoint w{n, 3.0 * u(rng), 0.0, 0.2 + std::abs(u(rng)), u(rng), u(rng), {}};
    const auto c = closed_form_curvature(w);
    const double trace = c.ricci_radial + (n - 1) * c.ricci_fiber / (w.d1 * w.d1);
    EXPECT_LE(std::abs(trace - c.scalar), 1e-12 * std::max(1.0, std::abs(c.scalar)));
  }
}

TEST(ClosedForm, ExpandMatchesEngineOnExplicitChart) {
  for (int n = 3; n <= 5; ++n) {
    const double rbar = (n - 1) * (n - 2) * -0.7;
    const MetricField chart = warped_chart(n, rbar, radial("1 + r^2"));
    const MetricField fiber = fiber_metric(n - 1, rbar);
    auto p = fiber_base_point(n - 1, rbar);
    TensorValue gbar(n - 1, {Slot::Covariant, Slot::Covariant});
    for (int a = 0; a < n - 1; ++a)
      for (int b = 0; b < n - 1; ++b) gbar({a, b}) = eval_scalar(fiber.component(a, b), fiber.bindings(), p);
    p.insert(p.begin(), 0.8);
    const auto w = profile_from_expression(n, rbar, radial("1 + r^2"), 0.8);
    const auto closed = expand(w, gbar);
    const auto pack = curvature_pack(chart, p, 3, false);
    EXPECT_LE(max_abs_difference(closed.metric, pack.metric), 1e-13);
    EXPECT_LE(max_abs_difference(closed.riemann, pack.riemann), 1e-10);
    EXPECT_LE(max_abs_difference(closed.ricci, pack.ricci), 1e-10);
    EXPECT_NEAR(closed.scalar, pack.scalar, 1e-10);
    ASSERT_TRUE(closed.cotton);
    EXPECT_LE(max_abs_difference(*closed.cotton, pack.cotton), 1e-9);
  }
}

TEST(ClosedForm, RadialChristoffel) {
  const MetricField chart = fixture::warped3("cosh(r)");
  const std::vector<double> p{0.7, 1.1, 0.4};
  const auto gamma = christoffel(chart, p);
  const double d1 = std::cosh(0.7), d2 = std::sinh(0.7);
  EXPECT_NEAR(gamma({0, 1, 1}), -d1 * d2, 1e-13);
  EXPECT_NEAR(gamma({0, 2, 2}), -d1 * d2 * std::sin(1.1) * std::sin(1.1), 1e-13);
  EXPECT_NEAR(gamma({1, 0, 1}), d2 / d1, 1e-13);
}

TEST(RadialCotton, FlatAndConstantExamples) {
  const auto flat = radial_cotton_c({3, 2.0, 1.3, 1.3, 1.0, 0.0, 0.0});
  EXPECT_NEAR(flat.c, 0.0, 1e-15);
  EXPECT_NEAR(*flat.cotton_component, 0.0, 1e-14);
  for (double a : {0.5, 2.0}) {
    const auto cst = radial_cotton_c({3, 4.0, 0.0, a, 0.0, 0.0, 0.0});
    const double scalar = 4.0 / (a * a);
    EXPECT_NEAR(cst.c, scalar * a * a / 4.0, 1e-14);
    EXPECT_NEAR(*cst.dc_dr, 0.0, 1e-14);
    EXPECT_NEAR(*cst.cotton_component, 0.0, 1e-14);
  }
  EXPECT_FALSE(radial_cotton_c({3, 2.0, 0.0, 1.0, 0.0, 0.0, {}}).dc_dr);
  EXPECT_THROW(radial_cotton_c(cosh_point(4, 0.5)), DimensionError);
  EXPECT_THROW(radial_cotton_coefficient({3, 2.0, 0.0, 1.0, 0.0, 0.0, {}}), PreconditionError);
}

TEST(RadialCotton, CoshMatchesGenericCotton) {
  const MetricField chart = fixture::warped3("cosh(r)");
  for (double r : {0.3, 1.0, 1.8}) {
    const auto rc = radial_cotton_c(cosh_point(3, r));
    const std::vector<double> p{r, 1.1, 0.4};
    const TensorValue c = cotton(chart, p);
    const double sin2 = std::sin(1.1) * std::sin(1.1);
    EXPECT_NEAR(*rc.cotton_component, c({0, 1, 1}), 1e-7);
    EXPECT_NEAR(*rc.cotton_component * sin2, c({0, 2, 2}), 1e-7);
    EXPECT_NEAR(-*rc.cotton_component, c({1, 0, 1}), 1e-7);
  }
}

TEST(RadialCotton, ConservedQuantityRelation) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int t = 0; t < 300; ++t) {
    const WarpedProfilePoint w{3, 2.0 * u(rng), 0.0, 0.2 + std::abs(u(rng)), u(rng), u(rng), u(rng)};
    const auto rc = radial_cotton_c(w);
    const double scale = 1.0 + std::abs(rc.c) + w.d2 * w.d2;
    EXPECT_LE(std::abs(w.d2 * w.d2 + 2.0 * rc.c - 0.5 * w.fiber_scalar), 1e-12 * scale);
    EXPECT_LE(std::abs(*rc.dc_dr + w.d2 * w.d3), 1e-10 * (scale + std::abs(w.d3 * w.d4.value())));
    EXPECT_LE(std::abs(*rc.cotton_component), 1e-10 * (scale + std::abs(w.d3 * w.d4.value())));
  }
}

TEST(RadialCotton, DerivativeOfCMatchesDifferences) {
  const double h = 1e-3;
  for (double r : {0.4, 1.2}) {
    auto c_at = [](double s) { return radial_cotton_c(cosh_point(3, s)).c; };
    const double fd = (c_at(r - 2 * h) - 8 * c_at(r - h) + 8 * c_at(r + h) - c_at(r + 2 * h)) / (12 * h);
    EXPECT_NEAR(*radial_cotton_c(cosh_point(3, r)).dc_dr, fd, 1e-9);
  }
}

TEST(RadialCotton, CoefficientMatchesEngineForGeneralDimension) {
  for (int n = 4; n <= 5; ++n) {
    const auto report = cross_check(n, (n - 1.0) * (n - 2.0), radial("exp(r/2)"), 0.2, 2.0, 4);
    EXPECT_LE(report.cotton, 1e-8);
  }
}

TEST(RadialLaplacian, Examples) {
  EXPECT_EQ(radial_laplacian_R(cosh_point(3, 0.5), 0.0, 0.0), 0.0);
  EXPECT_EQ(radial_laplacian_R({3, 2.0, 0.0, 1.0, 0.0, 0.0, {}}, 0.7, 5.0), 5.0);
  EXPECT_THROW(radial_laplacian_R({3, 2.0, 0.0, 0.0, 0.0, 0.0, {}}, 0.0, 0.0), DomainError);
}

TEST(RadialLaplacian, MatchesGenericLaplacianOfScalarCurvature) {
  // R(r) for dr^2 + cosh(r)^2 gS2
  const Expr scalar = radial("2/cosh(r)^2 - 2*tanh(r)^2 - 4");
  const MetricField chart = fixture::warped3("cosh(r)");
  for (double r : {0.3, 1.1}) {
    const Jet rj = eval_jet(scalar, {{"r"}, {}}, make_base_point({r}), 2);
    const double closed = radial_laplacian_R(cosh_point(3, r), rj.partial({1}), rj.partial({2}));
    const std::vector<double> p{r, 1.1, 0.4};
    const LocalGeometry geo(chart, p, 4);
    EXPECT_NEAR(geo.scalar().value(), rj.value(), 1e-12);
    EXPECT_NEAR(geo.laplacian(geo.scalar()).value(), closed, 1e-6);
  }
}

TEST(RicRadial, ExamplesAndSign) {
  EXPECT_EQ(ric_radial({3, 2.0, 0.0, 1.5, 0.3, 0.0, {}}), 0.0);
  EXPECT_EQ(ric_radial({3, 2.0, 0.0, 2.0, 0.3, -1.0, {}}), 4.0);
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int t = 0; t < 500; ++t) {
    const WarpedProfilePoint w{3 + t % 4, u(rng), 0.0, 0.01 + std::abs(u(rng)), u(rng), u(rng), {}};
    const double v = ric_radial(w);
    EXPECT_EQ(w.d3 >= 0.0, v <= 0.0) << w.d3 << " " << v;
    const auto c = closed_form_curvature(w);
    EXPECT_NEAR(v, w.d1 * w.d1 * c.ricci_radial, 1e-12 * (1.0 + std::abs(v)));
  }
}

TEST(Product, ShrinkingAndExpanding) {
  const struct {
    SolitonKind kind;
    double rho;
  } cases[] = {{SolitonKind::Shrinking, 2.0}, {SolitonKind::Expanding, -2.0}, {SolitonKind::Shrinking, 0.7},
               {SolitonKind::Expanding, -3.0}};
  for (const auto& c : cases) {
    for (double a : {1.0, 0.6}) {
      const ProductSoliton ps = build_product_soliton(c.kind, a, c.rho);
      EXPECT_DOUBLE_EQ(ps.fiber_scalar, c.rho * a * a);
      EXPECT_DOUBLE_EQ(ps.effective_fiber_curvature, c.rho / 2.0);
      EXPECT_EQ(ps.spec.kind, c.kind);
      const auto pts = sample_points(ps.spec.box, {32, 4, 0.05});
      for (const auto& p : pts) {
        const auto res = soliton_residual(ps.spec, p);
        EXPECT_LE(res.norm, 1e-10);
        const auto [ric, scalar] = ricci_scalar(ps.spec.metric, p);
        EXPECT_LE(std::abs(scalar - c.rho), 1e-10);
      }
    }
  }
}

TEST(Product, UnitShrinkingIsRoundSphereFiber) {
  const ProductSoliton ps = build_product_soliton(SolitonKind::Shrinking, 1.0, 2.0);
  const auto report = identity_report(ps.spec, sample_points(ps.spec.box, {16, 1, 0.05}), {});
  EXPECT_TRUE(report.all_passed());
  const auto* p3 = report.find(IdentityKey::P3);
  ASSERT_NE(p3, nullptr);
  EXPECT_LE(p3->max_residual, 1e-8);
}

TEST(Product, Preconditions) {
  EXPECT_THROW(build_product_soliton(SolitonKind::Shrinking, 1.0, -1.0), PreconditionError);
  EXPECT_THROW(build_product_soliton(SolitonKind::Expanding, 1.0, 1.0), PreconditionError);
  EXPECT_THROW(build_product_soliton(SolitonKind::Steady, 1.0, 0.0), PreconditionError);
  EXPECT_THROW(build_product_soliton(SolitonKind::Shrinking, 0.0, 1.0), PreconditionError);
}

TEST(Charts, FiberMetricsHaveRequestedScalarCurvature) {
  for (int dim = 2; dim <= 4; ++dim) {
    for (double s : {-3.0, 0.0, 2.0, 12.0}) {
      const MetricField f = fiber_metric(dim, s);
      const auto p = fiber_base_point(dim, s);
      EXPECT_NEAR(ricci_scalar(f, p).second, s, 1e-10) << dim << " " << s;
    }
  }
  EXPECT_THROW(fiber_metric(1, 1.0), DimensionError);
  EXPECT_THROW(warped_chart(2, 1.0, radial("r")), DimensionError);
}

TEST(CrossCheck, Examples) {
  const auto flat = cross_check(3, 2.0, radial("r"), 0.3, 2.0, 5);
  EXPECT_EQ(flat.radii.size(), 5u);
  EXPECT_LE(flat.worst(), 1e-9);
  for (int n = 3; n <= 5; ++n) {
    EXPECT_LE(cross_check(n, -(n - 1.0), radial("1.7"), 0.0, 1.0, 3).worst(), 1e-9);
  }
  EXPECT_LE(cross_check(3, 2.0, radial("cosh(r)"), 0.2, 2.0, 7).worst(), 1e-7);
  EXPECT_THROW(cross_check(3, 2.0, radial("r"), 0.3, 2.0, 0), PreconditionError);
}

TEST(CrossCheck, RandomProfiles) {
  const std::vector<std::string> profiles{"cosh(r)", "1 + r^2", "exp(r/2)"};
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> u(0.2, 2.0);
  for (int t = 0; t < 12; ++t) {
    const int n = 3 + t % 3;
    const double rbar = (n - 1.0) * (n - 2.0) * (t % 2 == 0 ? 1.0 : -0.5);
    const double r = u(rng);
    const auto rep = cross_check(n, rbar, radial(profiles[static_cast<std::size_t>(t) % 3]), r, r, 1);
    EXPECT_LE(std::max({rep.riemann, rep.ricci, rep.scalar}), 1e-7);
  }
}

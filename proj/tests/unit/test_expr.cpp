#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "yamabe/errors.hpp"
#include "yamabe/expr/expr.hpp"
#include "yamabe/expr/jet.hpp"
#include "yamabe/expr/parser.hpp"

using namespace yamabe;

namespace {

const std::vector<std::string> kXY{"x", "y"};
const std::vector<std::string> kXYZ{"x", "y", "z"};

Jet jet_of(const std::string& src, const std::vector<std::string>& vars, std::vector<double> at, int order) {
  Bindings b{vars, {}};
  return eval_jet(parse(src, vars), b, make_base_point(std::move(at)), order);
}

std::size_t binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return static_cast<std::size_t>(std::lround(r));
}

}  // namespace

TEST(Parse, PrecedenceOfPowerOverProduct) {
  const std::vector<std::string> decl{"r", "theta"};
  const Expr e = parse("r^2*sin(theta)^2", decl);
  const Expr expected = Expr::binary(NodeKind::Mul, pow(Expr::symbol("r"), Expr::number(2)),
                                     pow(Expr::call(Elementary::Sin, Expr::symbol("theta")), Expr::number(2)));
  EXPECT_TRUE(structurally_equal(e, expected)) << to_string(e);
}

TEST(Parse, TrailingOperatorReportsOffset) {
  try {
    parse("2*", kXY);
    FAIL() << "expected ParseError";
  } catch (const ParseError& err) {
    EXPECT_EQ(err.offset(), 2u);
  }
}

TEST(Parse, ParametersAreSymbols) {
  const std::vector<std::string> decl{"r", "rho"};
  const Expr e = parse("exp(-rho*r^2/2)", decl);
  EXPECT_EQ(e.kind(), NodeKind::Call);
  EXPECT_EQ(symbols_of(e), (std::vector<std::string>{"r", "rho"}));
}

TEST(Parse, UnknownSymbolAndFunction) {
  EXPECT_THROW(parse("x + w", kXY), ParseError);
  EXPECT_THROW(parse("erf(x)", kXY), ParseError);
  EXPECT_THROW(parse("", kXY), ParseError);
  EXPECT_THROW(parse("(x + y", kXY), ParseError);
  EXPECT_THROW(parse("x y", kXY), ParseError);
}

TEST(Parse, Associativity) {
  const Expr sub = parse("x - y - 1", kXY);
  EXPECT_TRUE(structurally_equal(sub, (Expr::symbol("x") - Expr::symbol("y")) - Expr::number(1)));
  const Expr p = parse("x^y^2", kXY);
  EXPECT_TRUE(structurally_equal(p, pow(Expr::symbol("x"), pow(Expr::symbol("y"), Expr::number(2)))));
  const Expr neg = parse("-x^2", kXY);
  EXPECT_TRUE(structurally_equal(neg, -pow(Expr::symbol("x"), Expr::number(2))));
  const Expr exp_neg = parse("x^-2", kXY);
  EXPECT_TRUE(structurally_equal(exp_neg, pow(Expr::symbol("x"), -Expr::number(2))));
}

TEST(Parse, NoConstantFolding) {
  const Expr e = parse("2*3", kXY);
  EXPECT_EQ(e.kind(), NodeKind::Mul);
}

TEST(Parse, RoundTripOnRandomExpressions) {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 200; ++i) {
    const Expr e = parse(oracle::random_expression(rng, kXYZ, 3), kXYZ);
    const std::string printed = to_string(e);
    const Expr back = parse(printed, kXYZ);
    ASSERT_TRUE(structurally_equal(e, back)) << printed;
    EXPECT_EQ(to_string(back), printed);
  }
}

TEST(Parse, RoundTripEdgeCases) {
  for (const char* src : {"-(x - y)", "(-x)^2", "x/(y*x)", "x - (y - 1)", "(x^y)^2", "1e-300*x", "0.1 + 1/3",
                          "-(-x)", "x*-y", "2^-x^2"}) {
    const Expr e = parse(src, kXY);
    const Expr back = parse(to_string(e), kXY);
    EXPECT_TRUE(structurally_equal(e, back)) << src << " -> " << to_string(e);
  }
}

TEST(Eval, UnboundSymbolIsPrecondition) {
  const Expr e = parse("x + y", kXY);
  Bindings b{{"x"}, {}};
  EXPECT_THROW(eval_jet(e, b, make_base_point({1.0}), 2), PreconditionError);
  const double p[] = {1.0};
  EXPECT_THROW(eval_scalar(e, b, p), PreconditionError);
}

TEST(Eval, ProductJet) {
  const Jet j = jet_of("x*y", kXY, {2, 3}, 2);
  EXPECT_EQ(j.coefficients().size(), binomial(4, 2));
  EXPECT_DOUBLE_EQ(j.coefficient({0, 0}), 6);
  EXPECT_DOUBLE_EQ(j.coefficient({1, 0}), 3);
  EXPECT_DOUBLE_EQ(j.coefficient({0, 1}), 2);
  EXPECT_DOUBLE_EQ(j.coefficient({1, 1}), 1);
  EXPECT_DOUBLE_EQ(j.coefficient({2, 0}), 0);
  EXPECT_DOUBLE_EQ(j.coefficient({0, 2}), 0);
}

TEST(Eval, SineMaclaurin) {
  const Jet j = jet_of("sin(x)", {"x"}, {0.0}, 3);
  EXPECT_DOUBLE_EQ(j.coefficient({0}), 0);
  EXPECT_DOUBLE_EQ(j.coefficient({1}), 1);
  EXPECT_DOUBLE_EQ(j.coefficient({2}), 0);
  EXPECT_NEAR(j.coefficient({3}), -1.0 / 6.0, 1e-16);
}

TEST(Eval, GaussianAgainstFiniteDifferences) {
  const Jet j = jet_of("exp(x^2)", {"x"}, {0.7}, 4);
  const oracle::ScalarFn f = [](std::span<const double> p) { return std::exp(p[0] * p[0]); };
  const double x[] = {0.7};
  for (int k = 0; k <= 4; ++k) {
    const int alpha[] = {k};
    const double fd = oracle::fd_partial(f, x, alpha, 0.02, 8);
    EXPECT_NEAR(j.partial(alpha), fd, 1e-6 * std::abs(fd)) << "k=" << k;
  }
}

TEST(Eval, CoefficientCountIsBinomial) {
  for (int d = 1; d <= 4; ++d)
    for (int k = 0; k <= 6; ++k) {
      std::vector<std::string> vars;
      for (int v = 0; v < d; ++v) vars.push_back("x" + std::to_string(v));
      const Jet j = Jet(k, make_base_point(std::vector<double>(static_cast<std::size_t>(d), 0.0)));
      EXPECT_EQ(j.coefficients().size(), binomial(d + k, k));
    }
}

TEST(Eval, DomainErrorCarriesSubtree) {
  try {
    jet_of("1 + sqrt(x - 2)", {"x"}, {1.0}, 2);
    FAIL() << "expected DomainError";
  } catch (const DomainError& e) {
    EXPECT_EQ(e.subtree(), "sqrt(x - 2)");
  }
  try {
    jet_of("y + x/(y - 3)", kXY, {1.0, 3.0}, 1);
    FAIL() << "expected DomainError";
  } catch (const DomainError& e) {
    EXPECT_EQ(e.subtree(), "x / (y - 3)");
  }
  EXPECT_THROW(jet_of("log(x)", {"x"}, {0.0}, 1), DomainError);
  EXPECT_THROW(jet_of("x^0.5", {"x"}, {-1.0}, 1), DomainError);
}

TEST(Eval, ScalarMatchesDegreeZero) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int i = 0; i < 50; ++i) {
    const Expr e = parse(oracle::random_expression(rng, kXYZ, 3), kXYZ);
    std::vector<double> p{u(rng), u(rng), u(rng)};
    Bindings b{kXYZ, {}};
    const double s = eval_scalar(e, b, p);
    const Jet j = eval_jet(e, b, make_base_point(p), 3);
    EXPECT_EQ(j.value(), s) << to_string(e);
  }
}

TEST(JetArith, SquareAndGeometricSeries) {
  auto base1 = make_base_point({1.0});
  const Jet x = Jet::variable(2, base1, 0);
  const Jet sq = x * x;
  EXPECT_DOUBLE_EQ(sq.coefficient({0}), 1);
  EXPECT_DOUBLE_EQ(sq.coefficient({1}), 2);
  EXPECT_DOUBLE_EQ(sq.coefficient({2}), 1);
  EXPECT_DOUBLE_EQ(sq.partial({2}), 2);
  EXPECT_DOUBLE_EQ(sq.partial({0}), 1);

  auto base0 = make_base_point({0.0});
  const Jet one = Jet::constant(3, base0, 1.0);
  const Jet q = one / (one + Jet::variable(3, base0, 0));
  const double expected[] = {1, -1, 1, -1};
  for (int k = 0; k <= 3; ++k) EXPECT_DOUBLE_EQ(q.coefficient({k}), expected[k]);
}

TEST(JetArith, GroupIdentityAndErrors) {
  const Jet a = jet_of("sin(x)*exp(y)", kXY, {0.3, -0.2}, 4);
  const Jet b = jet_of("x^3 - y", kXY, {0.3, -0.2}, 4);
  const Jet c = a + (b - b);
  for (std::size_t k = 0; k < a.coefficients().size(); ++k) EXPECT_EQ(c.coefficients()[k], a.coefficients()[k]);

  const Jet other_base = jet_of("x", kXY, {0.3, -0.1}, 4);
  EXPECT_THROW(a + other_base, MismatchError);
  const Jet other_order = jet_of("x", kXY, {0.3, -0.2}, 3);
  EXPECT_THROW(a * other_order, MismatchError);
  const Jet zero_const = jet_of("x - 0.3", kXY, {0.3, -0.2}, 4);
  EXPECT_THROW(a / zero_const, DomainError);
}

TEST(JetApply, ExpSqrtAndPartials) {
  auto base = make_base_point({0.0, 0.0});
  const Jet e = exp(Jet(3, base));
  EXPECT_TRUE(e.is_constant());
  EXPECT_DOUBLE_EQ(e.value(), 1.0);

  const Jet s = jet_of("sqrt((1 + x)^2)", {"x"}, {0.0}, 2);
  EXPECT_NEAR(s.coefficient({0}), 1, 1e-15);
  EXPECT_NEAR(s.coefficient({1}), 1, 1e-15);
  EXPECT_NEAR(s.coefficient({2}), 0, 1e-15);

  const Jet sc = jet_of("sin(x)*cos(y)", kXY, {0.0, 0.0}, 3);
  EXPECT_DOUBLE_EQ(sc.partial({1, 1}), 0.0);
  EXPECT_DOUBLE_EQ(sc.partial({1, 0}), 1.0);
  EXPECT_THROW(sc.partial({2, 2}), OrderError);
}

TEST(JetApply, LogExpRoundTrip) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-0.3, 0.3);
  auto base = make_base_point({0.1, 0.2, 0.3});
  for (int trial = 0; trial < 100; ++trial) {
    Jet a(5, base);
    for (double& c : a.coefficients()) c = u(rng);
    const Jet back = log(exp(a));
    for (std::size_t k = 0; k < a.coefficients().size(); ++k)
      ASSERT_NEAR(back.coefficients()[k], a.coefficients()[k], 1e-12);
  }
}

TEST(JetApply, EveryElementaryAgainstFiniteDifferences) {
  const double x0 = 0.4;
  for (auto f : {Elementary::Sin, Elementary::Cos, Elementary::Tan, Elementary::Exp, Elementary::Log,
                 Elementary::Sqrt, Elementary::Sinh, Elementary::Cosh, Elementary::Tanh}) {
    const Jet j = apply(f, Jet::variable(5, make_base_point({x0}), 0));
    const oracle::ScalarFn fn = [f](std::span<const double> p) { return apply(f, p[0]); };
    const double x[] = {x0};
    for (int k = 0; k <= 4; ++k) {
      const int alpha[] = {k};
      const double fd = oracle::fd_partial(fn, x, alpha, 0.01, 8);
      EXPECT_NEAR(j.partial(alpha), fd, 1e-6 * std::max(1.0, std::abs(fd))) << to_string(f) << " k=" << k;
    }
  }
}

TEST(JetApply, IntegerAndRealPowers) {
  const Jet a = jet_of("(1 + x*y)^3", kXY, {0.5, 0.7}, 4);
  const Jet b = jet_of("(1 + x*y)*(1 + x*y)*(1 + x*y)", kXY, {0.5, 0.7}, 4);
  for (std::size_t k = 0; k < a.coefficients().size(); ++k)
    EXPECT_NEAR(a.coefficients()[k], b.coefficients()[k], 1e-13);
  const Jet inv = jet_of("(2 + x)^-2", {"x"}, {0.0}, 3);
  EXPECT_NEAR(inv.coefficient({0}), 0.25, 1e-15);
  EXPECT_NEAR(inv.coefficient({1}), -0.25, 1e-15);
  const Jet half = jet_of("x^0.5", {"x"}, {4.0}, 2);
  EXPECT_NEAR(half.coefficient({1}), 0.25, 1e-15);
  EXPECT_NEAR(half.coefficient({2}), -1.0 / 64.0, 1e-15);
  const Jet var = jet_of("x^y", kXY, {2.0, 3.0}, 2);
  EXPECT_NEAR(var.value(), 8.0, 1e-14);
  EXPECT_NEAR(var.partial({0, 1}), 8.0 * std::log(2.0), 1e-13);
}

// Every partial up to order 4 of random smooth expressions against central differences.
TEST(JetProperty, ChainAndProductRulesAgainstFiniteDifferences) {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> u(-0.5, 0.5);
  for (int trial = 0; trial < 12; ++trial) {
    const Expr e = parse(oracle::random_expression(rng, kXYZ, 2), kXYZ);
    Bindings b{kXYZ, {}};
    const std::vector<double> p{u(rng), u(rng), u(rng)};
    const Jet j = eval_jet(e, b, make_base_point(p), 4);
    const oracle::ScalarFn f = [&](std::span<const double> q) { return eval_scalar(e, b, q); };
    const auto& layout = j.layout();
    for (std::size_t k = 1; k < layout.size(); ++k) {
      const auto alpha = layout.multi_index(k);
      const double fd = oracle::fd_partial_adaptive(f, p, alpha);
      const double ad = j.partial(alpha);
      ASSERT_NEAR(ad, fd, 1e-6 * std::max(1.0, std::abs(ad))) << to_string(e);
    }
  }
}

TEST(JetProperty, TruncationConsistency) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const std::string src = oracle::random_expression(rng, kXYZ, 3);
    const Jet hi = jet_of(src, kXYZ, {0.1, -0.2, 0.3}, 5);
    const Jet lo = jet_of(src, kXYZ, {0.1, -0.2, 0.3}, 4);
    const Jet cut = hi.truncated(4);
    ASSERT_EQ(cut.coefficients().size(), lo.coefficients().size());
    for (std::size_t k = 0; k < lo.coefficients().size(); ++k)
      EXPECT_NEAR(cut.coefficients()[k], lo.coefficients()[k], 1e-13 * std::max(1.0, std::abs(lo.coefficients()[k])));
  }
}

TEST(JetProperty, LinearityIsExact) {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 20; ++trial) {
    const std::string s1 = oracle::random_expression(rng, kXYZ, 2);
    const std::string s2 = oracle::random_expression(rng, kXYZ, 2);
    const std::vector<double> p{0.2, 0.1, -0.4};
    const Jet lhs = jet_of("2*(" + s1 + ") + 0.5*(" + s2 + ")", kXYZ, p, 4);
    const Jet rhs = 2.0 * jet_of(s1, kXYZ, p, 4) + 0.5 * jet_of(s2, kXYZ, p, 4);
    for (std::size_t k = 0; k < lhs.coefficients().size(); ++k)
      EXPECT_EQ(lhs.coefficients()[k], rhs.coefficients()[k]);
  }
}

TEST(JetProperty, DerivativeShiftsCoefficients) {
  const Jet j = jet_of("exp(x)*sin(2*y)", kXY, {0.3, 0.1}, 4);
  const Jet dy = j.derivative(1);
  const Jet ref = jet_of("2*exp(x)*cos(2*y)", kXY, {0.3, 0.1}, 3);
  for (std::size_t k = 0; k < ref.coefficients().size(); ++k)
    EXPECT_NEAR(dy.coefficients()[k], ref.coefficients()[k], 1e-13);
}

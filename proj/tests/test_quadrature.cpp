#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "henon4/quadrature.hpp"

using namespace henon4;

namespace {
constexpr double pi = std::numbers::pi;
}

TEST(Integrate, ZeroIntegrand) { EXPECT_EQ(integrate([](double) { return 0.0; }, 0.0, 1.0).value, 0.0); }

TEST(Integrate, CubicIsExact) {
  const auto r = integrate([](double x) { return x * x * x; }, 0.0, 1.0);
  EXPECT_NEAR(r.value, 0.25, 1e-15);
  EXPECT_GE(r.error_estimate, 0.0);
}

TEST(Integrate, LogEndpointSingularity) {
  const auto r = integrate([](double x) { return -x * x * x * std::log(x); }, 0.0, 1.0);
  EXPECT_NEAR(r.value, 1.0 / 16.0, 1e-12);
}

TEST(Integrate, InverseSqrtSingularity) {
  const auto r = integrate([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0);
  EXPECT_NEAR(r.value, 2.0, 1e-9);
}

TEST(Integrate, ErrorEstimateWithinTarget) {
  const QuadratureSpec spec;
  const auto r = integrate([](double x) { return std::sin(10.0 * x) * std::exp(x); }, 0.0, 3.0, spec);
  EXPECT_LE(r.error_estimate, std::max(spec.rel_tol * std::fabs(r.value), spec.abs_tol));
}

TEST(Integrate, RespectsBreaks) {
  const std::vector<double> breaks{0.3};
  const auto r = integrate([](double x) { return x < 0.3 ? 1.0 : 2.0; }, 0.0, 1.0, {}, breaks);
  EXPECT_NEAR(r.value, 0.3 + 1.4, 1e-13);
}

TEST(Integrate, Linearity) {
  auto f = [](double x) { return std::cos(3.0 * x); };
  auto g = [](double x) { return x * std::exp(-x); };
  const double a = 2.5, b = -0.75;
  const double lhs = integrate([&](double x) { return a * f(x) + b * g(x); }, 0.0, 2.0).value;
  const double rhs = a * integrate(f, 0.0, 2.0).value + b * integrate(g, 0.0, 2.0).value;
  EXPECT_NEAR(lhs, rhs, 1e-10 * (std::fabs(lhs) + 1.0));
}

TEST(Integrate, NonFiniteInteriorValueThrows) {
  EXPECT_THROW(integrate([](double x) { return x > 0.5 ? std::nan("") : 1.0; }, 0.0, 1.0), NonFinite);
}

TEST(Integrate, BudgetExhaustedThrows) {
  QuadratureSpec tight{1e-15, 1e-300, 2};
  EXPECT_THROW(integrate([](double x) { return std::sin(200.0 * x) / std::sqrt(x); }, 0.0, 1.0, tight),
               NonConvergence);
}

TEST(Integrate, BadIntervalRejected) {
  EXPECT_THROW(integrate([](double x) { return x; }, 1.0, 0.0), DomainError);
}

TEST(Halfline, UnitExponential) {
  EXPECT_NEAR(integrate_halfline([](double t) { return std::exp(-t); }, 0.0).value, 1.0, 1e-10);
}

TEST(Halfline, GammaTwo) {
  EXPECT_NEAR(integrate_halfline([](double t) { return t * std::exp(-t); }, 0.0).value, 1.0, 1e-10);
}

TEST(Halfline, GammaSubstitution) {
  const double expected = 15.0 * std::sqrt(pi) / 8.0 * std::pow(2.0, 3.5);
  EXPECT_NEAR(expected, 37.599424119465, 1e-11);
  const auto r = integrate_halfline([](double t) { return std::pow(t, 2.5) * std::exp(-0.5 * t); }, 0.0);
  EXPECT_NEAR(r.value, expected, 1e-9 * expected);
}

TEST(Halfline, AlgebraicTail) {
  const auto r = integrate_halfline([](double t) { return 1.0 / ((1.0 + t) * (1.0 + t)); }, 0.0);
  EXPECT_NEAR(r.value, 1.0, 1e-8);
}

TEST(Halfline, ShiftedStart) {
  const auto r = integrate_halfline([](double t) { return std::exp(-t); }, 2.0);
  EXPECT_NEAR(r.value, std::exp(-2.0), 1e-12);
}

TEST(Halfline, ConstantIntegrandIsDivergent) {
  EXPECT_THROW(integrate_halfline([](double) { return 1.0; }, 0.0), Divergent);
}

TEST(Halfline, GrowingIntegrandIsDivergent) {
  EXPECT_THROW(integrate_halfline([](double t) { return std::exp(0.1 * t); }, 0.0), Divergent);
}

TEST(GammaFn, Values) {
  EXPECT_NEAR(gamma_fn(1.0), 1.0, 1e-14);
  EXPECT_NEAR(gamma_fn(3.0), 2.0, 1e-14);
  EXPECT_NEAR(gamma_fn(1.5), std::sqrt(pi) / 2.0, 1e-14);
  EXPECT_NEAR(gamma_fn(1.5), 0.886227, 1e-6);
}

TEST(GammaFn, Recursion) {
  for (int k = 1; k <= 20; ++k) {
    const double x = 0.5 * k;
    EXPECT_NEAR(gamma_fn(x + 1.0), x * gamma_fn(x), 1e-12 * gamma_fn(x + 1.0)) << x;
  }
}

TEST(GammaFn, RejectsNonPositive) {
  EXPECT_THROW(gamma_fn(0.0), DomainError);
  EXPECT_THROW(gamma_fn(-1.5), DomainError);
}

TEST(QuadratureSpec, ValidationRejectsBadTolerances) {
  EXPECT_THROW((QuadratureSpec{0.0, 1e-14, 10}.validate()), ValidationError);
  EXPECT_THROW((QuadratureSpec{1e-10, -1.0, 10}.validate()), ValidationError);
  EXPECT_THROW((QuadratureSpec{1e-10, 1e-14, 0}.validate()), ValidationError);
  EXPECT_NO_THROW(QuadratureSpec{}.validate());
}

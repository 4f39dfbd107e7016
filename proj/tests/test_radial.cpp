#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "henon4/corpus.hpp"
#include "henon4/radial.hpp"
#include "henon4/rearrangement.hpp"

using namespace henon4;

namespace {

constexpr double pi = std::numbers::pi;

RadialProfile zero_profile() {
  return profile_in_square([](double) { return 0.0; }, [](double) { return 0.0; }, [](double) { return 0.0; },
                           BoundaryKind::Dirichlet, "zero");
}

double rel(double a, double b) { return std::fabs(a - b) / std::max(std::fabs(b), 1e-300); }

}  // namespace

TEST(Constants, SphereAndBall) {
  EXPECT_DOUBLE_EQ(kOmega3, 2.0 * pi * pi);
  EXPECT_DOUBLE_EQ(kBallVolume, pi * pi / 2.0);
  EXPECT_DOUBLE_EQ(kAdams, 32.0 * pi * pi);
}

TEST(FunctionalParams, SigmaAlpha) {
  FunctionalParams p{4.0, 1.0, std::nullopt};
  EXPECT_NEAR(p.sigma_alpha(), 64.0 * pi * pi, 1e-12);
  EXPECT_NEAR(p.sigma_alpha(), (4.0 + p.alpha) * 4.0 * kOmega3, 1e-12);
  EXPECT_THROW((FunctionalParams{-1.0, 1.0, std::nullopt}.validate()), ValidationError);
  EXPECT_THROW((FunctionalParams{0.0, 0.0, std::nullopt}.validate()), ValidationError);
}

TEST(Corpus, ProfilesAreAdmissible) {
  for (const auto& name : corpus_names()) {
    const auto u = profile_by_name(name);
    EXPECT_TRUE(profile_violations(u).empty()) << name;
  }
  EXPECT_THROW(profile_by_name("nope"), ValidationError);
  EXPECT_THROW(profile_by_name("moser:abc:navier"), ValidationError);
}

TEST(Corpus, DerivativesMatchFiniteDifferences) {
  for (const auto& name : corpus_base_names()) {
    const auto u = profile_by_name(name);
    for (double r : {0.13, 0.37, 0.61, 0.88}) {
      const double h = 1e-5;
      const double fd1 = (u.eval(r + h) - u.eval(r - h)) / (2 * h);
      const double fd2 = (u.d1(r + h) - u.d1(r - h)) / (2 * h);
      EXPECT_NEAR(u.d1(r), fd1, 1e-6 * std::max(1.0, std::fabs(fd1))) << name << " r=" << r;
      EXPECT_NEAR(u.d2(r), fd2, 1e-6 * std::max(1.0, std::fabs(fd2))) << name << " r=" << r;
    }
  }
}

TEST(Laplacian, ClosedForms) {
  EXPECT_EQ(laplacian_l2_sq(zero_profile()), 0.0);
  EXPECT_NEAR(laplacian_l2_sq(profile_by_name("poly2")), 32.0 * pi * pi, 1e-9 * 32.0 * pi * pi);
  EXPECT_NEAR(laplacian_l2_sq(profile_by_name("poly4")), 16.0 * pi * pi, 1e-9 * 16.0 * pi * pi);
  EXPECT_NEAR(32.0 * pi * pi, 315.827, 1e-3);
}

TEST(Laplacian, Homogeneity) {
  for (const auto& name : {"poly2", "ring", "wave", "logcap"}) {
    const auto u = profile_by_name(name);
    const double base = laplacian_l2_sq(u);
    for (double c : {0.5, 2.0, 10.0}) EXPECT_LT(rel(laplacian_l2_sq(u.scaled(c)), c * c * base), 1e-10) << name;
  }
}

TEST(TruncatedExp, SeriesRemainderMatchesDirect) {
  for (double x : {1e-6, 0.01, 0.3, 0.49, 0.51, 2.0, 10.0})
    EXPECT_NEAR(truncated_exp(x, 0), std::expm1(x), 1e-15 * std::expm1(x));
  for (double x : {0.3, 0.49, 0.51, 2.0, 10.0})
    EXPECT_NEAR(truncated_exp(x, 1), std::expm1(x) - x, 1e-13 * (std::expm1(x) - x));
  for (double x : {1e-6, 1e-3}) {
    double series = 0.0, term = x;
    for (int k = 2; k < 12; ++k) series += (term *= x / k);
    EXPECT_NEAR(truncated_exp(x, 1), series, 1e-15 * series);
  }
  EXPECT_EQ(truncated_exp(0.0, 1), 0.0);
  EXPECT_EQ(truncated_exp(0.0, std::nullopt), 1.0);
}

TEST(WeightedFunctional, ZeroProfile) {
  EXPECT_EQ(weighted_functional(zero_profile(), {2.0, 5.0, 1}), 0.0);
  EXPECT_NEAR(weighted_functional(zero_profile(), {0.0, 5.0, std::nullopt}), pi * pi / 2.0, 1e-12);
}

TEST(WeightedFunctional, Poly4AtAdamsConstant) {
  const auto u = profile_by_name("poly4").scaled(1.0 / (4.0 * pi));
  const FunctionalParams p{0.0, 32.0 * pi * pi, 1};
  const double centre = 32.0 * pi * pi * u.eval(1e-12) * u.eval(1e-12);
  EXPECT_NEAR(truncated_exp(centre, 1), std::exp(2.0) - 3.0, 1e-12);

  // Composite Simpson rule on 10^6 panels.
  const int n = 1000000;
  auto integrand = [&](double r) { return r * r * r * truncated_exp(p.sigma * u.eval(r) * u.eval(r), 1); };
  double s = integrand(0.0) + integrand(1.0);
  for (int i = 1; i < n; ++i) s += (i % 2 ? 4.0 : 2.0) * integrand(static_cast<double>(i) / n);
  const double oracle = kOmega3 * s / (3.0 * n);
  EXPECT_NEAR(oracle, 0.32053394064444151, 1e-12);
  EXPECT_NEAR(weighted_functional(u, p), oracle, 1e-10 * oracle);
}

TEST(WeightedLpNorm, ClosedForms) {
  const auto u = profile_by_name("poly2");
  EXPECT_EQ(weighted_lp_norm_p(zero_profile(), 2.0, 0.0), 0.0);
  EXPECT_NEAR(weighted_lp_norm_p(u, 2.0, 0.0), pi * pi / 12.0, 1e-12);
  EXPECT_NEAR(weighted_lp_norm_p(u, 2.0, 4.0), 2.0 * pi * pi / 120.0, 1e-12);
  EXPECT_THROW(weighted_lp_norm_p(u, 0.5, 0.0), DomainError);
}

TEST(EmbeddingBound, ClosedForms) {
  EXPECT_NEAR(embedding_bound(2.0, 0.0, 1.0), 1.0 / 64.0, 1e-16);
  // p = 2k form: k! eps^{1+k} / 4^{1+2k} omega3^{1-k}
  for (int k = 1; k <= 3; ++k) {
    for (double alpha : {0.0, 4.0, 12.0}) {
      const double eps = 4.0 / (4.0 + alpha);
      const double expected =
          std::tgamma(k + 1.0) * std::pow(eps, 1 + k) / std::pow(4.0, 1 + 2 * k) * std::pow(kOmega3, 1 - k);
      EXPECT_NEAR(embedding_bound(2.0 * k, alpha, 1.0), expected, 1e-13 * expected);
    }
  }
  EXPECT_EQ(embedding_bound(3.0, 1.0, 0.0), 0.0);
  EXPECT_NEAR(embedding_bound(4.0, 1.0, 2.0), 16.0 * embedding_bound(4.0, 1.0, 1.0), 1e-15);
}

TEST(SeriesBound, ClosedForms) {
  FunctionalParams half{0.0, 16.0 * pi * pi, std::nullopt};
  EXPECT_NEAR(series_upper_bound(half, 1.0), pi * pi, 1e-12);
  FunctionalParams tiny{0.0, 1e-12, std::nullopt};
  EXPECT_NEAR(series_upper_bound(tiny, 1.0), kOmega3 / 4.0, 1e-10);
  for (double alpha : {0.0, 3.0, 16.0}) {
    FunctionalParams full{alpha, 0.0, std::nullopt};
    full.sigma = 0.7 * full.sigma_alpha();
    FunctionalParams m0 = full;
    m0.m = 0;
    EXPECT_NEAR(series_upper_bound(m0, 1.0), series_upper_bound(full, 1.0) - kOmega3 / (4.0 + alpha), 1e-12);
  }
  FunctionalParams at{0.0, 32.0 * pi * pi, 1};
  EXPECT_THROW(series_upper_bound(at, 1.0), ThresholdError);
  EXPECT_THROW(series_upper_bound(half, 1.5), PreconditionError);
}

TEST(PointwiseLogBound, Examples) {
  const auto u = profile_by_name("poly2");
  const double ratio_at_inv_e = (1.0 - std::exp(-2.0)) * 2.0 * std::sqrt(kOmega3) / std::sqrt(32.0 * pi * pi);
  EXPECT_NEAR(ratio_at_inv_e, 0.432, 1e-3);
  const double margin = pointwise_log_bound_margin(u);
  EXPECT_GE(margin, ratio_at_inv_e);
  EXPECT_LE(margin, 1.0);
  EXPECT_EQ(pointwise_log_bound_margin(zero_profile()), 0.0);
  EXPECT_LE(pointwise_log_bound_margin(profile_by_name("moser:1e-4:navier")), 1.0);
}

TEST(PointwiseLogBound, GridCoversDeclaredRange) {
  const auto grid = log_bound_grid();
  ASSERT_GE(grid.size(), 512u);
  EXPECT_NEAR(grid.front(), 1e-6, 1e-18);
  EXPECT_NEAR(grid.back(), 1.0 - 1e-6, 1e-15);
}

TEST(Properties, EmbeddingOverCorpus) {
  for (const auto& name : corpus_names()) {
    const auto u = profile_by_name(name);
    const double lap = std::sqrt(laplacian_l2_sq(u));
    for (double pexp : {2.0, 4.0, 6.0})
      for (double alpha : {0.0, 1.0, 4.0, 16.0})
        EXPECT_LE(weighted_lp_norm_p(u, pexp, alpha), embedding_bound(pexp, alpha, lap) * (1.0 + 1e-8))
            << name << " p=" << pexp << " alpha=" << alpha;
  }
}

TEST(Properties, SeriesBoundAndMonotoneInM) {
  for (const auto& name : corpus_names()) {
    const auto u = normalized(profile_by_name(name));
    for (double alpha : {0.0, 4.0}) {
      double prev = std::numeric_limits<double>::infinity();
      for (std::optional<int> m : {std::optional<int>{}, std::optional<int>{0}, std::optional<int>{1},
                                   std::optional<int>{2}}) {
        FunctionalParams p{alpha, 0.0, m};
        p.sigma = 0.9 * p.sigma_alpha();
        const double v = weighted_functional(u, p);
        EXPECT_LE(v, series_upper_bound(p, 1.0) * (1.0 + 1e-8)) << name;
        EXPECT_LE(v, prev) << name;
        prev = v;
      }
    }
  }
}

TEST(Properties, LogBoundOverCorpus) {
  for (const auto& name : corpus_names())
    EXPECT_LE(pointwise_log_bound_margin(profile_by_name(name)), 1.0 + 1e-9) << name;
}

TEST(Rearrangement, LinearProfile) {
  RadialProfile u;
  u.eval = [](double r) { return r; };
  u.d1 = [](double) { return 1.0; };
  u.d2 = [](double) { return 0.0; };
  u.description = "r";
  const auto s = decreasing_rearrangement(u, 20000);
  for (double rho : {0.1, 0.3, 0.5, 0.7, 0.9, 0.99})
    EXPECT_NEAR(s.eval(rho), std::pow(1.0 - std::pow(rho, 4), 0.25), 2e-4) << rho;
}

TEST(Rearrangement, ConstantAndDecreasing) {
  RadialProfile c;
  c.eval = [](double) { return 2.5; };
  c.d1 = c.d2 = [](double) { return 0.0; };
  const auto cs = decreasing_rearrangement(c, 1000);
  for (double rho : {0.0, 0.2, 0.8, 1.0}) EXPECT_NEAR(cs.eval(rho), 2.5, 1e-14);

  const auto u = profile_by_name("poly2");
  const auto us = decreasing_rearrangement(u, 20000);
  for (double rho : {0.05, 0.4, 0.75, 0.95}) EXPECT_NEAR(us.eval(rho), u.eval(rho), 1e-6);
}

TEST(Rearrangement, Cavalieri) {
  for (const auto& name : corpus_names()) {
    const auto u = profile_by_name(name);
    const auto re = rearrange(u);
    const double direct = weighted_lp_norm_p(u, 2.0, 0.0);
    EXPECT_LT(rel(re.lp_integral(2.0), direct), 1e-6) << name;
  }
}

TEST(Talenti, ConstantSources) {
  RadialProfile f;
  f.eval = [](double) { return 8.0; };
  f.d1 = f.d2 = [](double) { return 0.0; };
  const auto u = talenti_radial_solve(f);
  for (double rho : {0.0, 0.25, 0.5, 0.9, 1.0}) EXPECT_NEAR(u.eval(rho), 1.0 - rho * rho, 1e-12) << rho;

  f.eval = [](double) { return 4.0; };
  const auto v = talenti_radial_solve(f);
  for (double rho : {0.1, 0.6}) EXPECT_NEAR(v.eval(rho), 0.5 * (1.0 - rho * rho), 1e-12);

  f.eval = [](double) { return 0.0; };
  const auto z = talenti_radial_solve(f);
  EXPECT_EQ(z.eval(0.3), 0.0);
}

TEST(Talenti, NonIntegrableSourceIsNonFinite) {
  RadialProfile f;
  f.eval = [](double r) { return r < 0.5 ? std::numeric_limits<double>::infinity() : 1.0; };
  f.d1 = f.d2 = [](double) { return 0.0; };
  EXPECT_THROW(talenti_radial_solve(f), NonFinite);
}

TEST(Talenti, ComparisonOnSeededProfile) {
  const auto v = seeded_smooth_profile(7, 3);
  const auto rep = talenti_comparison_check(v, {}, 50000, 500);
  EXPECT_TRUE(rep.holds) << rep.min_gap;
  EXPECT_LE(rep.l2_rel_diff, 1e-8);
  EXPECT_TRUE(rep.mass_ok);
}

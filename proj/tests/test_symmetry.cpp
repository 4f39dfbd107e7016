#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <numbers>

#include "henon4/corpus.hpp"
#include "henon4/symmetry.hpp"

using namespace henon4;

namespace {

constexpr double pi = std::numbers::pi;
const std::vector<double> kGrid{16, 32, 64, 128, 256, 512};

FunctionalParams sweep_params(int m) { return {0.0, kAdams, m}; }

const SweepReport& default_sweep(int m) {
  static std::map<int, SweepReport> cache;
  auto it = cache.find(m);
  if (it == cache.end()) it = cache.emplace(m, crossover_detect(sweep_params(m), kGrid, make_bump("poly4"))).first;
  return it->second;
}

}  // namespace

TEST(Bump, Poly4Normalizer) {
  const auto b = make_bump("poly4");
  EXPECT_NEAR(b.normalizer, 1.0 / (4.0 * pi), 1e-14);
  EXPECT_NEAR(laplacian_l2_sq(b.profile), 1.0, 1e-10);
  EXPECT_NEAR(b.profile.eval(1.0), 0.0, 1e-15);
  EXPECT_NEAR(b.profile.d1(1.0), 0.0, 1e-15);
}

TEST(Bump, Cos2NormalizedAndClamped) {
  const auto b = make_bump("cos2");
  EXPECT_NEAR(laplacian_l2_sq(b.profile), 1.0, 1e-10);
  EXPECT_NEAR(b.profile.eval(1.0), 0.0, 1e-15);
  EXPECT_NEAR(b.profile.d1(1.0), 0.0, 1e-15);
  for (double r : {0.0, 0.3, 0.9}) EXPECT_GT(b.profile.eval(r), 0.0);
  EXPECT_THROW(make_bump("square"), ValidationError);
}

TEST(Bump, ScaleInvariance) {
  const auto b = make_bump("poly4");
  const double alpha = 8.0;
  RadialProfile s;
  s.eval = [&](double r) { return r < 1.0 / alpha ? b.profile.eval(alpha * r) : 0.0; };
  s.d1 = [&](double r) { return r < 1.0 / alpha ? alpha * b.profile.d1(alpha * r) : 0.0; };
  s.d2 = [&](double r) { return r < 1.0 / alpha ? alpha * alpha * b.profile.d2(alpha * r) : 0.0; };
  s.breaks = {1.0 / alpha};
  EXPECT_NEAR(laplacian_l2_sq(s), 1.0, 1e-8);
}

TEST(TranslatedBump, PrefactorAtSixtyFour) {
  EXPECT_NEAR(std::pow(1.0 - 2.0 / 64.0, 64.0), 0.13108403247847505, 1e-15);
  EXPECT_NEAR(std::pow(1.0 - 2.0 / 64.0, 64.0) * std::exp(2.0), 1.0, 0.04);
}

TEST(TranslatedBump, MinorantChain) {
  const auto b = make_bump("poly4");
  for (int m : {1, 2}) {
    for (double alpha : {4.0, 16.0, 64.0, 512.0}) {
      const double v = translated_bump_value(alpha, sweep_params(m), b);
      const double lb = translated_bump_paper_bound(alpha, sweep_params(m), b);
      EXPECT_GT(lb, 0.0);
      EXPECT_LE(lb / v, 1.0) << "alpha=" << alpha;
    }
  }
}

TEST(TranslatedBump, BaseIntegralMatchesFunctionalOracle) {
  const auto b = make_bump("poly4");
  EXPECT_NEAR(bump_base_integral(sweep_params(1), b), 0.32053394064444151, 1e-10);
}

TEST(TranslatedBump, LimitOfScaledBound) {
  const auto b = make_bump("poly4");
  const double target = std::exp(-2.0) * 0.32053394064444151;
  double prev_err = std::numeric_limits<double>::infinity();
  for (double alpha : {64.0, 128.0, 256.0, 512.0, 1024.0}) {
    const double scaled = std::pow(alpha, 4.0) * translated_bump_paper_bound(alpha, sweep_params(1), b);
    const double err = std::fabs(scaled - target);
    EXPECT_LT(err, prev_err);
    prev_err = err;
  }
  EXPECT_LT(prev_err / target, 3e-3);
}

TEST(TranslatedBump, OrderingWithM) {
  const auto b = make_bump("poly4");
  FunctionalParams m0{0.0, kAdams, 0};
  for (double alpha : {16.0, 128.0}) {
    EXPECT_LE(translated_bump_paper_bound(alpha, sweep_params(1), b), translated_bump_paper_bound(alpha, m0, b));
    EXPECT_LE(translated_bump_value(alpha, sweep_params(2), b), translated_bump_value(alpha, sweep_params(1), b));
  }
}

TEST(TranslatedBump, SmallSigmaVanishes) {
  const auto b = make_bump("poly4");
  EXPECT_LT(translated_bump_value(16.0, {0.0, 1e-12, 1}, b), 1e-25);
}

TEST(TranslatedBump, HypothesesEnforced) {
  const auto b = make_bump("poly4");
  EXPECT_THROW(translated_bump_value(2.0, sweep_params(1), b), ValidationError);
  EXPECT_THROW(translated_bump_value(16.0, {0.0, kAdams, std::nullopt}, b), ValidationError);
  EXPECT_THROW(translated_bump_value(16.0, {0.0, 1.1 * kAdams, 1}, b), ValidationError);
}

TEST(RadialSearch, CandidateSoundness) {
  const auto r = radial_max_search(64.0, sweep_params(1));
  EXPECT_NEAR(laplacian_l2_sq(r.profile), 1.0, 1e-8);
  EXPECT_TRUE(profile_violations(r.profile).empty());
  EXPECT_NEAR(r.value, weighted_functional(r.profile, {64.0, kAdams, 1}), 1e-12 * r.value);
  EXPECT_FALSE(r.profile_id.empty());
}

TEST(RadialSearch, Deterministic) {
  const auto a = radial_max_search(32.0, sweep_params(1));
  const auto b = radial_max_search(32.0, sweep_params(1));
  EXPECT_EQ(a.value, b.value);
  EXPECT_EQ(a.profile_id, b.profile_id);
}

TEST(RadialSearch, BeatsFixedMoserProfile) {
  const auto r = radial_max_search(0.0, sweep_params(1));
  const auto v = normalized(profile_by_name("moser:1e-4:navier"));
  EXPECT_TRUE(std::isfinite(r.value));
  EXPECT_GE(r.value, weighted_functional(v, sweep_params(1)) * (1.0 - 1e-9));
}

TEST(RadialSearch, SmallSigmaBelowSeriesBound) {
  const FunctionalParams p{16.0, 1e-3, 1};
  const auto r = radial_max_search(16.0, p);
  EXPECT_LE(r.value, series_upper_bound(p, 1.0) * (1.0 + 1e-8));
  EXPECT_LT(r.value, 1e-6);
}

TEST(RadialSearch, HypothesesEnforced) {
  EXPECT_THROW(radial_max_search(16.0, {0.0, kAdams, 0}), ValidationError);
  EXPECT_THROW(radial_max_search(16.0, {0.0, 2.0 * kAdams, 1}), ValidationError);
}

TEST(LogLogFit, ExactPowerLaw) {
  const std::vector<double> x{1, 2, 4, 8, 16};
  std::vector<double> y;
  for (double v : x) y.push_back(3.0 * std::pow(v, -4.5));
  const auto f = loglog_fit(x, y);
  EXPECT_NEAR(f.slope, -4.5, 1e-12);
  EXPECT_NEAR(f.intercept, std::log(3.0), 1e-12);
  EXPECT_LT(f.max_residual, 1e-12);
  EXPECT_THROW(loglog_fit({1.0}, {1.0}), ValidationError);
  EXPECT_THROW(loglog_fit({1.0, -1.0}, {1.0, 1.0}), DomainError);
}

TEST(Crossover, InputValidation) {
  const auto b = make_bump("poly4");
  EXPECT_THROW(crossover_detect(sweep_params(1), {16, 32, 64}, b), ValidationError);
  EXPECT_THROW(crossover_detect(sweep_params(1), {16, 64, 32, 128}, b), ValidationError);
  EXPECT_THROW(crossover_detect(sweep_params(1), {2, 16, 32, 64}, b), ValidationError);
  EXPECT_THROW(crossover_detect({0.0, kAdams, 0}, kGrid, b), ValidationError);
}

TEST(Properties, SweepSlopes) {
  for (int m : {1, 2}) {
    const auto& rep = default_sweep(m);
    EXPECT_GE(rep.bump_fit.slope, -4.3) << "m=" << m;
    EXPECT_LE(rep.bump_fit.slope, -3.8) << "m=" << m;
    EXPECT_LE(rep.radial_fit.slope, -4.2) << "m=" << m;
  }
}

TEST(Properties, SweepRowsSortedAndMinorantsHold) {
  for (int m : {1, 2}) {
    const auto& rep = default_sweep(m);
    ASSERT_EQ(rep.rows.size(), kGrid.size());
    for (std::size_t i = 0; i < rep.rows.size(); ++i) {
      EXPECT_EQ(rep.rows[i].alpha, kGrid[i]);
      EXPECT_LE(rep.rows[i].bump_paper_bound, rep.rows[i].bump_exact);
    }
  }
}

TEST(Properties, OrderingWithM) {
  const auto& r1 = default_sweep(1);
  const auto& r2 = default_sweep(2);
  for (std::size_t i = 0; i < kGrid.size(); ++i) {
    EXPECT_LE(r2.rows[i].radial_max, r1.rows[i].radial_max) << kGrid[i];
    EXPECT_LE(r2.rows[i].bump_exact, r1.rows[i].bump_exact) << kGrid[i];
  }
}

TEST(Properties, CrossoverWithIncreasingGap) {
  for (int m : {1, 2}) {
    const auto& rep = default_sweep(m);
    EXPECT_TRUE(rep.alpha_star.has_value()) << "m=" << m;
    EXPECT_TRUE(rep.gap_increasing) << "m=" << m;
  }
}

TEST(Properties, ReportCoherence) {
  for (int m : {1, 2}) {
    const auto& rep = default_sweep(m);
    EXPECT_LT(rep.bump_fit.max_residual, 0.15) << "m=" << m;
    EXPECT_LT(rep.radial_fit.max_residual, 0.15) << "m=" << m;
  }
}

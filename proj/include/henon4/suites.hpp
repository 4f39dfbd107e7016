#pragma once

// Batteries of checks over the profile corpus, returned as tables with one
// row per (check, subject).

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "henon4/corpus.hpp"
#include "henon4/log_transform.hpp"
#include "henon4/radial.hpp"
#include "henon4/rearrangement.hpp"
#include "henon4/report.hpp"
#include "henon4/symmetry.hpp"

namespace henon4 {

struct CheckTable {
  Table table{{"check", "subject", "value", "bound", "pass"}, {}};
  int failures = 0;

  void add(const std::string& check, const std::string& subject, double value, double bound) {
    const bool ok = value <= bound;
    if (!ok) ++failures;
    table.rows.push_back({check, subject, value, bound, ok});
  }
  bool all_pass() const { return failures == 0; }
};

namespace detail {

inline double rel_diff(double a, double b) {
  const double scale = std::max(std::fabs(a), std::fabs(b));
  return scale == 0.0 ? 0.0 : std::fabs(a - b) / scale;
}

inline std::string m_label(std::optional<int> m) { return m ? std::to_string(*m) : std::string("absent"); }

}  // namespace detail

/// Radial, sqrt-variable and log-variable energies agree for gamma in
/// {1, 4} and gamma = alpha + 4 for each alpha given.
inline void energy_identity_checks(CheckTable& out, const std::vector<std::string>& names,
                                   const std::vector<double>& alphas, const QuadratureSpec& spec = {}) {
  std::vector<double> gammas{1.0, 4.0};
  for (double a : alphas) gammas.push_back(a + 4.0);
  std::sort(gammas.begin(), gammas.end());
  gammas.erase(std::unique(gammas.begin(), gammas.end()), gammas.end());
  for (const auto& name : names) {
    const auto u = profile_by_name(name);
    const double radial = laplacian_l2_sq(u, spec);
    const double sqrt_form = sqrt_transform_energy(u, spec);
    for (double g : gammas) {
      const double log_form = log_energy(to_log_profile(u, g), spec);
      const double worst = std::max({detail::rel_diff(radial, sqrt_form), detail::rel_diff(radial, log_form),
                                     detail::rel_diff(sqrt_form, log_form)});
      out.add("energy-identity", name + " gamma=" + detail::fmt_g(g), worst, 1e-8);
    }
  }
}

/// Pointwise log bound, weighted embedding, series bound and monotonicity
/// in m over the named profiles.
inline void bound_checks(CheckTable& out, const std::vector<std::string>& names, const QuadratureSpec& spec = {}) {
  for (const auto& name : names) {
    const auto u = normalized(profile_by_name(name), spec);
    out.add("pointwise-log-bound", name, pointwise_log_bound_margin(u, spec), 1.0 + 1e-9);
    for (double pexp : {2.0, 4.0, 6.0}) {
      for (double alpha : {0.0, 1.0, 4.0, 16.0}) {
        const double lhs = weighted_lp_norm_p(u, pexp, alpha, spec);
        const double rhs = embedding_bound(pexp, alpha, 1.0);
        out.add("embedding", name + " p=" + detail::fmt_g(pexp) + " alpha=" + detail::fmt_g(alpha), lhs / rhs,
                1.0 + 1e-8);
      }
    }
    for (double alpha : {0.0, 1.0, 4.0, 16.0}) {
      std::vector<double> chain;
      for (std::optional<int> m : {std::optional<int>{}, std::optional<int>{0}, std::optional<int>{1},
                                   std::optional<int>{2}}) {
        FunctionalParams p{alpha, 0.0, m};
        p.sigma = 0.9 * p.sigma_alpha();
        const double value = weighted_functional(u, p, spec);
        chain.push_back(value);
        out.add("series-bound", name + " alpha=" + detail::fmt_g(alpha) + " m=" + detail::m_label(m),
                value / series_upper_bound(p, 1.0), 1.0 + 1e-8);
      }
      double worst = 0.0;
      for (std::size_t i = 1; i < chain.size(); ++i)
        if (chain[i - 1] > 0.0) worst = std::max(worst, chain[i] / chain[i - 1]);
      out.add("monotone-in-m", name + " alpha=" + detail::fmt_g(alpha), worst, 1.0 + 1e-12);
    }
  }
}

/// The weighted exponential integral computed on the ball and in the log
/// variable with gamma = alpha + 4.
inline void functional_identity_checks(CheckTable& out, const std::vector<std::string>& names,
                                       const QuadratureSpec& spec = {}) {
  for (const auto& name : names) {
    const auto u = normalized(profile_by_name(name), spec);
    for (double alpha : {0.0, 4.0}) {
      for (double frac : {0.1, 0.5}) {
        FunctionalParams p{alpha, 0.0, std::nullopt};
        p.sigma = frac * p.sigma_alpha();
        const double ball = weighted_functional(u, p, spec);
        const double logv = weighted_exp_integral_log(to_log_profile(u, alpha + 4.0), alpha, p.sigma, spec);
        out.add("functional-identity",
                name + " alpha=" + detail::fmt_g(alpha) + " sigma=" + detail::fmt_g(frac) + "*sigma_alpha",
                detail::rel_diff(ball, logv), 1e-8);
      }
    }
  }
}

struct ThresholdRow {
  double alpha;
  double sigma;
  double sigma_alpha;
  double series_bound;
  double max_corpus_value;
  std::string argmax;
};

/// For each alpha, the series bound at ||Delta u|| = 1 against the largest
/// F (or F_m) over the normalized corpus.
inline std::vector<ThresholdRow> threshold_scan(const std::vector<double>& alphas, const std::vector<double>& sigmas,
                                                std::optional<int> m, const std::vector<std::string>& names,
                                                const QuadratureSpec& spec = {}) {
  if (alphas.size() != sigmas.size()) throw ValidationError("threshold_scan: alphas and sigmas differ in length");
  std::vector<RadialProfile> units;
  for (const auto& name : names) units.push_back(normalized(profile_by_name(name), spec));
  std::vector<ThresholdRow> rows;
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    const FunctionalParams p{alphas[i], sigmas[i], m};
    ThresholdRow row{alphas[i], sigmas[i], p.sigma_alpha(), series_upper_bound(p, 1.0), 0.0, ""};
    for (std::size_t k = 0; k < units.size(); ++k) {
      const double v = weighted_functional(units[k], p, spec);
      if (v > row.max_corpus_value) {
        row.max_corpus_value = v;
        row.argmax = names[k];
      }
    }
    rows.push_back(row);
  }
  return rows;
}

inline Table to_table(const std::vector<ThresholdRow>& rows) {
  Table t{{"alpha", "sigma_alpha", "series_bound", "max_corpus_value"}, {}};
  for (const auto& r : rows) t.rows.push_back({r.alpha, r.sigma_alpha, r.series_bound, r.max_corpus_value});
  return t;
}

struct TalentiRow {
  std::string profile;
  TalentiReport report;
};

inline std::vector<TalentiRow> talenti_suite(std::uint64_t seed, int count, const QuadratureSpec& spec = {}) {
  std::vector<TalentiRow> rows;
  for (int i = 0; i < count; ++i) {
    const auto v = seeded_smooth_profile(seed, i);
    rows.push_back({v.description, talenti_comparison_check(v, spec)});
  }
  return rows;
}

inline Table to_table(const std::vector<TalentiRow>& rows) {
  Table t{{"profile", "holds", "min_gap", "f_l2", "fsharp_l2", "l2_rel_diff", "l2_ok", "v_l2sq", "u_l2sq", "mass_ok"},
          {}};
  for (const auto& r : rows) {
    const auto& q = r.report;
    t.rows.push_back(
        {r.profile, q.holds, q.min_gap, q.f_l2, q.fsharp_l2, q.l2_rel_diff, q.l2_ok, q.v_l2sq, q.u_l2sq, q.mass_ok});
  }
  return t;
}

}  // namespace henon4

#pragma once

// Radial against nonradial suprema of F_m for large alpha: translated bumps
// give nonradial lower bounds, a multi-start search gives radial values, and
// log-log fits compare their decay in alpha.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <map>
#include <numbers>
#include <optional>
#include <random>
#include <string>
#include <tuple>
#include <vector>

#include "henon4/moser.hpp"
#include "henon4/profile.hpp"
#include "henon4/quadrature.hpp"
#include "henon4/radial.hpp"

namespace henon4 {

namespace detail {

inline std::string fmt_g(double v, int digits = 6) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

}  // namespace detail

/// A bump c * b(r) with b(1) = b'(1) = 0 and c fixed by ||Delta bump||_2 = 1.
struct BumpSpec {
  std::string kind;
  double normalizer = 1.0;
  RadialProfile profile;  // already multiplied by the normalizer
};

inline BumpSpec make_bump(const std::string& kind, const QuadratureSpec& spec = {}) {
  constexpr double pi = std::numbers::pi;
  RadialProfile raw;
  if (kind == "poly4") {
    raw = profile_in_square([](double x) { return (1.0 - x) * (1.0 - x); }, [](double x) { return -2.0 * (1.0 - x); },
                            [](double) { return 2.0; }, BoundaryKind::Dirichlet, kind);
  } else if (kind == "cos2") {
    raw.eval = [=](double r) { return 0.5 * (1.0 + std::cos(pi * r)); };
    raw.d1 = [=](double r) { return -0.5 * pi * std::sin(pi * r); };
    raw.d2 = [=](double r) { return -0.5 * pi * pi * std::cos(pi * r); };
    raw.boundary = BoundaryKind::Dirichlet;
    raw.description = kind;
  } else {
    throw ValidationError("unknown bump '" + kind + "' (expected poly4 or cos2)");
  }
  BumpSpec b;
  b.kind = kind;
  b.normalizer = 1.0 / std::sqrt(laplacian_l2_sq(raw, spec));
  b.profile = raw.scaled(b.normalizer, kind);
  const double check = laplacian_l2_sq(b.profile, spec);
  if (std::fabs(check - 1.0) > 1e-10) throw NumericalError("make_bump: normalization check failed for " + kind);
  return b;
}

namespace detail {

inline void require_bump_params(double alpha, const FunctionalParams& p, const char* who) {
  p.validate();
  if (!(alpha >= 4.0) || !std::isfinite(alpha)) throw ValidationError(std::string(who) + ": alpha must be >= 4");
  if (!p.m) throw ValidationError(std::string(who) + ": the truncation order m is required");
  if (p.sigma > kAdams * (1.0 + 1e-15)) throw ValidationError(std::string(who) + ": sigma must not exceed 32 pi^2");
}

}  // namespace detail

/// F_m of the bump rescaled by alpha and centred at (1 - 1/alpha, 0, 0, 0):
/// alpha^{-4} 4 pi int_0^1 int_0^pi g(u(s)) |x_alpha + y/alpha|^alpha s^3 sin^2(theta) dtheta ds.
inline double translated_bump_value(double alpha, const FunctionalParams& p, const BumpSpec& bump,
                                    const QuadratureSpec& spec = {}) {
  detail::require_bump_params(alpha, p, "translated_bump_value");
  const double c = 1.0 - 1.0 / alpha;
  const double log_c2 = 2.0 * std::log1p(-1.0 / alpha);
  QuadratureSpec inner = spec;
  inner.rel_tol = spec.rel_tol * 0.1;
  inner.abs_tol = spec.abs_tol * 1e-3;
  auto theta_integral = [&](double s) {
    const double q = s / alpha;
    auto f = [&](double th) {
      const double rel = (2.0 * c * q * std::cos(th) + q * q) / (c * c);
      const double log_m = log_c2 + std::log1p(rel);
      const double sn = std::sin(th);
      return std::exp(0.5 * alpha * log_m) * sn * sn;
    };
    return integrate(f, 0.0, std::numbers::pi, inner).value;
  };
  auto outer = [&](double s) {
    const double u = bump.profile.eval(s);
    const double g = truncated_exp(p.sigma * u * u, p.m);
    if (g == 0.0) return 0.0;
    return g * s * s * s * theta_integral(s);
  };
  const double integral = integrate(outer, 0.0, 1.0, spec, bump.profile.breaks).value;
  return 4.0 * std::numbers::pi * integral / std::pow(alpha, 4.0);
}

/// int_B g(u(|y|)) dy for the bump, cached per (bump, sigma, m).
inline double bump_base_integral(const FunctionalParams& p, const BumpSpec& bump, const QuadratureSpec& spec = {}) {
  using Key = std::tuple<std::string, double, int, double, double>;
  thread_local std::map<Key, double> cache;
  const Key key{bump.kind, p.sigma, p.m ? *p.m : -1, spec.rel_tol, spec.abs_tol};
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  const double v = weighted_functional(bump.profile, {0.0, p.sigma, p.m}, spec);
  cache.emplace(key, v);
  return v;
}

/// (1 - 2/alpha)^alpha alpha^{-4} int_B g(u(|y|)) dy, a lower bound for the
/// translated bump value.
inline double translated_bump_paper_bound(double alpha, const FunctionalParams& p, const BumpSpec& bump,
                                          const QuadratureSpec& spec = {}) {
  detail::require_bump_params(alpha, p, "translated_bump_paper_bound");
  return std::pow(1.0 - 2.0 / alpha, alpha) / std::pow(alpha, 4.0) * bump_base_integral(p, bump, spec);
}

/// Parameters of the radial search family, in x = r^2:
///   u(x) = (1 - x)(1 + a exp(-((x - rho0^2)/h)^2)) + b log((1 + delta)/(x + delta)).
struct RadialFamilyPoint {
  double rho0 = 0.0;
  double h = 1.0;
  double a = 0.0;
  double b = 0.0;
  double delta = 1.0;

  std::string id() const {
    return "family:rho0=" + detail::fmt_g(rho0) + ",h=" + detail::fmt_g(h) + ",a=" + detail::fmt_g(a) +
           ",b=" + detail::fmt_g(b) + ",delta=" + detail::fmt_g(delta);
  }
};

inline RadialProfile radial_family_profile(const RadialFamilyPoint& q) {
  const double x0 = q.rho0 * q.rho0, h = q.h, a = q.a, b = q.b, d = q.delta;
  auto G = [=](double x) {
    const double z = (x - x0) / h;
    return std::exp(-z * z);
  };
  auto Q = [=](double x) { return (1.0 - x) * (1.0 + a * G(x)) + b * std::log((1.0 + d) / (x + d)); };
  auto Q1 = [=](double x) {
    const double g = G(x);
    const double g1 = -2.0 * (x - x0) / (h * h) * g;
    return -(1.0 + a * g) + (1.0 - x) * a * g1 - b / (x + d);
  };
  auto Q2 = [=](double x) {
    const double g = G(x);
    const double g1 = -2.0 * (x - x0) / (h * h) * g;
    const double g2 = (4.0 * (x - x0) * (x - x0) / (h * h * h * h) - 2.0 / (h * h)) * g;
    return -2.0 * a * g1 + (1.0 - x) * a * g2 + b / ((x + d) * (x + d));
  };
  auto p = profile_in_square(Q, Q1, Q2, BoundaryKind::Navier, q.id());
  for (double k : {-3.0, -1.0, 0.0, 1.0, 3.0}) {
    const double x = x0 + k * h;
    if (x > 0.0 && x < 1.0) p.breaks.push_back(std::sqrt(x));
  }
  if (b > 0.0) {
    for (double k : {1.0, 10.0, 100.0}) {
      const double r = std::sqrt(d) * k;
      if (r < 1.0) p.breaks.push_back(r);
    }
  }
  std::sort(p.breaks.begin(), p.breaks.end());
  return p;
}

struct RadialSearchOptions {
  std::uint64_t seed = 7;
  /// Random starts added to the eight structured ones.
  int random_starts = 24;
  int max_sweeps = 200;
  /// Tolerances used while searching; the winner is re-evaluated with the
  /// caller's spec.
  QuadratureSpec search_spec{1e-8, 1e-16, 2000};
  bool include_moser_candidates = true;
};

struct RadialSearchResult {
  double value = 0.0;
  RadialProfile profile;  // unit energy
  std::string profile_id;
  int evaluations = 0;
  int failed_evaluations = 0;
};

namespace detail {

// Search coordinates: rho0, log10 h, log10(a + 0.95), log10 b, log10 delta.
struct SearchBox {
  static constexpr int dim = 5;
  static constexpr double lo[dim] = {0.0, -4.0, -3.0, -6.0, -10.0};
  static constexpr double hi[dim] = {0.999, 1.0, 4.0, 3.0, 1.0};
  static constexpr double step0[dim] = {0.1, 0.25, 0.25, 0.5, 0.5};

  static RadialFamilyPoint point(const std::array<double, dim>& z) {
    RadialFamilyPoint q;
    q.rho0 = z[0];
    q.h = std::pow(10.0, z[1]);
    q.a = std::pow(10.0, z[2]) - 0.95;
    q.b = std::pow(10.0, z[3]);
    q.delta = std::pow(10.0, z[4]);
    return q;
  }

  static std::array<double, dim> coords(double rho0, double h, double a, double b, double delta) {
    return {rho0, std::log10(h), std::log10(a + 0.95), std::log10(b), std::log10(delta)};
  }
};

}  // namespace detail

/// Multi-start compass search over the radial family for the largest
/// F_m(u / ||Delta u||_2).  The result is a lower estimate of the radial
/// supremum; it is deterministic for a fixed seed.
inline RadialSearchResult radial_max_search(double alpha, const FunctionalParams& p,
                                            const RadialSearchOptions& opts = {}, const QuadratureSpec& spec = {}) {
  p.validate();
  if (!(alpha >= 0.0)) throw ValidationError("radial_max_search: alpha must be >= 0");
  if (!p.m || *p.m < 1) throw ValidationError("radial_max_search: requires m >= 1");
  if (p.sigma > kAdams * (1.0 + 1e-15)) throw ValidationError("radial_max_search: sigma must not exceed 32 pi^2");
  using Box = detail::SearchBox;
  using Z = std::array<double, Box::dim>;
  const FunctionalParams fp{alpha, p.sigma, p.m};

  RadialSearchResult res;
  auto objective = [&](const RadialProfile& u, const QuadratureSpec& qs) -> double {
    ++res.evaluations;
    try {
      const double lap = laplacian_l2_sq(u, qs);
      if (!(lap > 0.0) || !std::isfinite(lap)) {
        ++res.failed_evaluations;
        return -1.0;
      }
      const double v = weighted_functional(u.scaled(1.0 / std::sqrt(lap)), fp, qs);
      return std::isfinite(v) ? v : -1.0;
    } catch (const NumericalError&) {
      ++res.failed_evaluations;
      return -1.0;
    }
  };
  auto eval_z = [&](const Z& z) { return objective(radial_family_profile(Box::point(z)), opts.search_spec); };

  std::vector<Z> starts = {
      Box::coords(0.0, 1.0, 0.0, 1e-6, 1.0),   Box::coords(0.0, 1.0, 0.0, 1.0, 1e-2),
      Box::coords(0.0, 1.0, 0.0, 1.0, 1e-4),   Box::coords(0.5, 0.1, 5.0, 1e-6, 1.0),
      Box::coords(0.8, 0.05, 10.0, 1e-6, 1.0), Box::coords(0.95, 0.02, 10.0, 1e-6, 1.0),
      Box::coords(0.3, 0.2, 2.0, 1e-6, 1.0),   Box::coords(0.7, 0.1, 3.0, 1e-6, 1.0),
  };
  std::mt19937_64 rng(opts.seed);
  auto uniform = [&rng] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
  for (int i = 0; i < opts.random_starts; ++i) {
    Z z;
    for (int k = 0; k < Box::dim; ++k) z[k] = Box::lo[k] + (Box::hi[k] - Box::lo[k]) * uniform();
    starts.push_back(z);
  }

  double best = -std::numeric_limits<double>::infinity();
  RadialProfile best_profile;
  std::string best_id;
  int failed_starts = 0;
  for (const auto& start : starts) {
    Z z = start;
    double fz = eval_z(z);
    if (fz < 0.0) {
      ++failed_starts;
      continue;
    }
    Z step;
    for (int k = 0; k < Box::dim; ++k) step[k] = Box::step0[k];
    for (int sweep = 0; sweep < opts.max_sweeps; ++sweep) {
      bool improved = false;
      for (int k = 0; k < Box::dim; ++k) {
        for (double dir : {1.0, -1.0}) {
          Z trial = z;
          trial[k] = std::clamp(z[k] + dir * step[k], Box::lo[k], Box::hi[k]);
          if (trial[k] == z[k]) continue;
          const double ft = eval_z(trial);
          if (ft > fz * (1.0 + 1e-9)) {
            z = trial;
            fz = ft;
            improved = true;
            break;
          }
        }
      }
      if (!improved) {
        bool tiny = true;
        for (int k = 0; k < Box::dim; ++k) {
          step[k] *= 0.5;
          if (step[k] > Box::step0[k] / 1024.0) tiny = false;
        }
        if (tiny) break;
      }
    }
    if (fz > best) {
      best = fz;
      const auto q = Box::point(z);
      best_profile = radial_family_profile(q);
      best_id = q.id();
    }
  }
  if (opts.include_moser_candidates) {
    for (double eps : {1e-2, 1e-3, 1e-4, 1e-6}) {
      auto u = moser_navier({eps, BoundaryKind::Navier});
      const double v = objective(u, opts.search_spec);
      if (v > best) {
        best = v;
        best_profile = u;
        best_id = "moser:" + detail::fmt_g(eps) + ":navier";
      }
    }
  }
  if (failed_starts == static_cast<int>(starts.size()) || !(best >= 0.0))
    throw OptFailure("radial_max_search: every start failed to evaluate");

  const double lap = laplacian_l2_sq(best_profile, spec);
  res.profile = best_profile.scaled(1.0 / std::sqrt(lap), best_id);
  res.profile_id = best_id;
  res.value = weighted_functional(res.profile, fp, spec);
  return res;
}

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double max_residual = 0.0;
};

/// Least-squares line through (log x, log y).
inline LinearFit loglog_fit(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw ValidationError("loglog_fit: need matching data of length >= 2");
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0)) throw DomainError("loglog_fit: data must be positive");
    const double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  LinearFit f;
  f.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  f.intercept = (sy - f.slope * sx) / n;
  for (std::size_t i = 0; i < x.size(); ++i)
    f.max_residual = std::max(f.max_residual, std::fabs(std::log(y[i]) - f.intercept - f.slope * std::log(x[i])));
  return f;
}

struct SweepRow {
  double alpha = 0.0;
  double bump_exact = 0.0;
  double bump_paper_bound = 0.0;
  double radial_max = 0.0;
  std::string radial_profile_id;
  /// log(bump_exact / (kappa * radial_max)); positive means separation.
  double log_gap = 0.0;
};

struct SweepReport {
  double sigma = 0.0;
  int m = 1;
  std::string bump;
  double kappa = 1.05;
  std::uint64_t seed = 7;
  std::vector<SweepRow> rows;
  LinearFit bump_fit;
  LinearFit radial_fit;
  std::optional<double> alpha_star;
  /// log_gap strictly increases along the grid from alpha_star on.
  bool gap_increasing = false;
};

inline constexpr double kCrossoverSafety = 1.05;

/// Sweeps alpha, fits both decay laws and locates the smallest grid alpha at
/// which the bump value beats kappa times the radial estimate.
inline SweepReport crossover_detect(const FunctionalParams& p, const std::vector<double>& alphas,
                                    const BumpSpec& bump, const RadialSearchOptions& opts = {},
                                    const QuadratureSpec& spec = {}) {
  p.validate();
  if (alphas.size() < 4) throw ValidationError("crossover_detect: need at least four alpha values");
  for (std::size_t i = 1; i < alphas.size(); ++i)
    if (!(alphas[i] > alphas[i - 1])) throw ValidationError("crossover_detect: alphas must increase strictly");
  if (!p.m || *p.m < 1) throw ValidationError("crossover_detect: requires m >= 1");
  if (p.sigma > kAdams * (1.0 + 1e-15)) throw ValidationError("crossover_detect: sigma must not exceed 32 pi^2");
  for (double a : alphas)
    if (!(a >= 4.0)) throw ValidationError("crossover_detect: every alpha must be >= 4");

  SweepReport rep;
  rep.sigma = p.sigma;
  rep.m = *p.m;
  rep.bump = bump.kind;
  rep.kappa = kCrossoverSafety;
  rep.seed = opts.seed;
  std::vector<double> xs, yb, yr;
  for (double a : alphas) {
    SweepRow row;
    row.alpha = a;
    row.bump_exact = translated_bump_value(a, p, bump, spec);
    row.bump_paper_bound = translated_bump_paper_bound(a, p, bump, spec);
    const auto rad = radial_max_search(a, p, opts, spec);
    row.radial_max = rad.value;
    row.radial_profile_id = rad.profile_id;
    row.log_gap = std::log(row.bump_exact) - std::log(rep.kappa * row.radial_max);
    if (!rep.alpha_star && row.log_gap > 0.0) rep.alpha_star = a;
    xs.push_back(a);
    yb.push_back(row.bump_exact);
    yr.push_back(row.radial_max);
    rep.rows.push_back(std::move(row));
  }
  rep.bump_fit = loglog_fit(xs, yb);
  rep.radial_fit = loglog_fit(xs, yr);
  if (rep.alpha_star) {
    rep.gap_increasing = true;
    bool after = false;
    double prev = 0.0;
    for (const auto& row : rep.rows) {
      if (row.alpha == *rep.alpha_star) {
        after = true;
        prev = row.log_gap;
        continue;
      }
      if (after) {
        if (!(row.log_gap > prev)) rep.gap_increasing = false;
        prev = row.log_gap;
      }
    }
  }
  return rep;
}

}  // namespace henon4

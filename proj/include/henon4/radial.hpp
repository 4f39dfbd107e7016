#pragma once

// Energies, weighted functionals and the a-priori bounds for radial profiles.

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <vector>

#include "henon4/profile.hpp"
#include "henon4/quadrature.hpp"

namespace henon4 {

namespace detail {

// Break points for quadrature over r in [0, 1]: the profile's own breaks,
// plus one per decade below the smallest of them so that profiles living on
// many scales are bisected towards the origin in log-sized steps.
inline std::vector<double> radial_breaks(const RadialProfile& u) {
  std::vector<double> pts = u.breaks;
  if (!pts.empty()) {
    const double smallest = *std::min_element(pts.begin(), pts.end());
    if (smallest > 0.0 && smallest < 1e-2) {
      for (double d = 1e-1; d > smallest; d *= 0.1) pts.push_back(d);
    }
  }
  return pts;
}

inline double series_remainder(double x, int m) {
  // sum_{k > m} x^k / k!
  double term = 1.0;
  for (int k = 1; k <= m + 1; ++k) term *= x / k;
  double sum = 0.0;
  for (int k = m + 1; k < m + 200; ++k) {
    sum += term;
    if (term <= 1e-17 * sum) break;
    term *= x / (k + 1);
  }
  return sum;
}

inline double partial_exp(double x, int m) {
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k <= m; ++k) {
    term *= x / k;
    sum += term;
  }
  return sum;
}

}  // namespace detail

/// e^x - sum_{k=0}^m x^k / k! (or e^x when m is absent), for x >= 0.
/// Small arguments use the series remainder to avoid cancellation.
inline double truncated_exp(double x, std::optional<int> m) {
  if (!m) return std::exp(x);
  if (x < 0.5) return detail::series_remainder(x, *m);
  return std::exp(x) - detail::partial_exp(x, *m);
}

/// log of truncated_exp, finite for large x where the value itself overflows.
inline double log_truncated_exp(double x, std::optional<int> m) {
  if (!m) return x;
  if (x <= 0.0) return -std::numeric_limits<double>::infinity();
  if (x < 0.5) return std::log(detail::series_remainder(x, *m));
  return x + std::log1p(-detail::partial_exp(x, *m) * std::exp(-x));
}

/// ||Delta u||_2^2 = omega_3 * int_0^1 (u'' + 3u'/r)^2 r^3 dr.
inline double laplacian_l2_sq(const RadialProfile& u, const QuadratureSpec& spec = {}) {
  const auto breaks = detail::radial_breaks(u);
  auto integrand = [&](double r) {
    const double v = std::pow(r, 1.5) * u.d2(r) + 3.0 * std::sqrt(r) * u.d1(r);
    return v * v;
  };
  return kOmega3 * integrate(integrand, 0.0, 1.0, spec, breaks).value;
}

/// F(u) or F_m(u) = omega_3 * int_0^1 r^{alpha+3} g(u(r)) dr.
inline double weighted_functional(const RadialProfile& u, const FunctionalParams& p,
                                  const QuadratureSpec& spec = {}) {
  p.validate();
  const auto breaks = detail::radial_breaks(u);
  auto integrand = [&](double r) {
    const double s = u.eval(r);
    const double lg = log_truncated_exp(p.sigma * s * s, p.m);
    return std::exp((p.alpha + 3.0) * std::log(r) + lg);
  };
  return kOmega3 * integrate(integrand, 0.0, 1.0, spec, breaks).value;
}

/// int_B |x|^alpha |u|^p dx.
inline double weighted_lp_norm_p(const RadialProfile& u, double pexp, double alpha,
                                 const QuadratureSpec& spec = {}) {
  if (!(pexp >= 1.0)) throw DomainError("weighted_lp_norm_p: exponent must be >= 1");
  if (!(alpha >= 0.0)) throw DomainError("weighted_lp_norm_p: alpha must be >= 0");
  const auto breaks = detail::radial_breaks(u);
  auto integrand = [&](double r) { return std::pow(r, alpha + 3.0) * std::pow(std::fabs(u.eval(r)), pexp); };
  return kOmega3 * integrate(integrand, 0.0, 1.0, spec, breaks).value;
}

/// Right side of the weighted L^p embedding for radial Navier functions:
/// (e/4)^{1+p/2} Gamma(1+p/2) omega_3^{1-p/2} 2^{-p} ||Delta u||^p with
/// e = 4/(4+alpha).
inline double embedding_bound(double pexp, double alpha, double lap_norm) {
  if (!(pexp >= 1.0)) throw DomainError("embedding_bound: exponent must be >= 1");
  if (!(alpha >= 0.0)) throw DomainError("embedding_bound: alpha must be >= 0");
  if (!(lap_norm >= 0.0)) throw DomainError("embedding_bound: lap_norm must be >= 0");
  const double eps_emb = 4.0 / (4.0 + alpha);
  const double half = pexp / 2.0;
  return std::pow(eps_emb / 4.0, 1.0 + half) * gamma_fn(1.0 + half) * std::pow(kOmega3, 1.0 - half) /
         std::pow(2.0, pexp) * std::pow(lap_norm, pexp);
}

/// Geometric sum of the termwise Taylor bounds of F (or F_m) on the set
/// ||Delta u|| = lap_norm <= 1, valid below the threshold sigma_alpha.
inline double series_upper_bound(const FunctionalParams& p, double lap_norm) {
  p.validate();
  if (p.sigma >= p.sigma_alpha()) throw ThresholdError("series_upper_bound: sigma >= sigma_alpha, series diverges");
  if (!(lap_norm >= 0.0 && lap_norm <= 1.0)) throw PreconditionError("series_upper_bound: need 0 <= lap_norm <= 1");
  const double x = p.sigma * lap_norm * lap_norm / p.sigma_alpha();
  const double lead = kOmega3 / (4.0 + p.alpha);
  if (!p.m) return lead / (1.0 - x);
  return lead * std::pow(x, *p.m + 1) / (1.0 - x);
}

/// Radii used by the pointwise check: log-spaced towards 0 and towards 1.
inline std::vector<double> log_bound_grid(int per_side = 512) {
  std::vector<double> g;
  g.reserve(2 * per_side);
  const double lo = std::log(1e-6);
  const double hi = std::log(0.5);
  for (int i = 0; i < per_side; ++i) {
    const double e = lo + (hi - lo) * i / (per_side - 1);
    g.push_back(std::exp(e));
    g.push_back(1.0 - std::exp(e));
  }
  std::sort(g.begin(), g.end());
  g.erase(std::unique(g.begin(), g.end()), g.end());
  return g;
}

/// sup_r |u(r)| 2 sqrt(omega_3) / (sqrt(-log r) ||Delta u||_2) over
/// log_bound_grid(); the radial pointwise bound says this never exceeds 1.
inline double pointwise_log_bound_margin(const RadialProfile& u, const QuadratureSpec& spec = {}) {
  const double lap = laplacian_l2_sq(u, spec);
  if (lap <= 0.0) return 0.0;
  const double norm = std::sqrt(lap);
  double worst = 0.0;
  for (double r : log_bound_grid()) {
    const double value = std::fabs(u.eval(r));
    if (value == 0.0) continue;
    const double bound = std::sqrt(-std::log(r)) * norm / (2.0 * std::sqrt(kOmega3));
    worst = std::max(worst, value / bound);
  }
  return worst;
}

/// u / ||Delta u||_2.
inline RadialProfile normalized(const RadialProfile& u, const QuadratureSpec& spec = {}) {
  const double lap = laplacian_l2_sq(u, spec);
  if (!(lap > 0.0)) throw DomainError("normalized: profile has zero energy");
  return u.scaled(1.0 / std::sqrt(lap), u.description + "/norm");
}

}  // namespace henon4

#pragma once

// Moser-type concentrating sequences on the unit ball of R^4 (Navier and
// Dirichlet variants) and the scans that probe the exponential threshold.

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "henon4/profile.hpp"
#include "henon4/quadrature.hpp"
#include "henon4/radial.hpp"

namespace henon4 {

struct MoserParams {
  double epsilon = 1e-4;
  BoundaryKind bc = BoundaryKind::Navier;

  double L() const { return -std::log(epsilon); }
  /// 1 / log|log eps|, the width of the boundary layer of the Dirichlet member.
  double eta() const { return 1.0 / std::log(L()); }

  void validate() const {
    if (!(epsilon > 0.0) || !(epsilon < std::exp(-2.0)))
      throw DomainError("MoserParams: epsilon must lie in (0, e^-2)");
    if (bc == BoundaryKind::Dirichlet && !(eta() < 0.5))
      throw DomainError("MoserParams: Dirichlet member needs 1/log|log eps| < 1/2");
  }
};

namespace detail {

struct NavierPieces {
  double L, K, r0, se;

  explicit NavierPieces(double eps)
      : L(-std::log(eps)), K(std::sqrt(kOmega3 * L)), r0(std::pow(eps, 0.25)), se(std::sqrt(eps)) {}

  double u(double r) const { return r <= r0 ? (0.25 * L + (se - r * r) / (2.0 * se)) / K : -std::log(r) / K; }
  double d1(double r) const { return r <= r0 ? -r / (se * K) : -1.0 / (r * K); }
  double d2(double r) const { return r <= r0 ? -1.0 / (se * K) : 1.0 / (r * r * K); }
};

}  // namespace detail

/// u_eps(r) = [|log eps|/4 + (sqrt(eps) - r^2)/(2 sqrt(eps))] / sqrt(omega_3 |log eps|)
/// for r <= eps^{1/4} and -log r / sqrt(omega_3 |log eps|) beyond.
inline RadialProfile moser_navier(const MoserParams& mp) {
  mp.validate();
  if (mp.bc != BoundaryKind::Navier) throw PreconditionError("moser_navier: boundary kind must be Navier");
  const detail::NavierPieces np(mp.epsilon);
  RadialProfile p;
  p.eval = [np](double r) { return np.u(r); };
  p.d1 = [np](double r) { return np.d1(r); };
  p.d2 = [np](double r) { return np.d2(r); };
  p.boundary = BoundaryKind::Navier;
  p.description = "moser-navier";
  p.breaks = {np.r0};
  return p;
}

/// ||Delta u_eps||_2^2 = 1 + 4 / |log eps|.
inline double navier_norm_sq_exact(double epsilon) {
  MoserParams{epsilon, BoundaryKind::Navier}.validate();
  return 1.0 + 4.0 / -std::log(epsilon);
}

/// u_eps on [0, 1 - eta] joined to the cubic
/// (2a s^2 - s^3) / (a^2 sqrt(omega_3 |log eps|)) in s = -log r, a = |log(1 - eta)|,
/// so that u(1) = u'(1) = 0.
inline RadialProfile moser_dirichlet(const MoserParams& mp) {
  mp.validate();
  if (mp.bc != BoundaryKind::Dirichlet) throw PreconditionError("moser_dirichlet: boundary kind must be Dirichlet");
  const detail::NavierPieces np(mp.epsilon);
  const double rc = 1.0 - mp.eta();
  const double a = -std::log(rc);
  const double c = 1.0 / (a * a * np.K);
  auto P1 = [a, c](double s) { return c * (4.0 * a * s - 3.0 * s * s); };
  auto P2 = [a, c](double s) { return c * (4.0 * a - 6.0 * s); };
  RadialProfile p;
  p.eval = [np, rc, a, c](double r) {
    if (r <= rc) return np.u(r);
    const double s = -std::log(r);
    return c * (2.0 * a * s * s - s * s * s);
  };
  p.d1 = [np, rc, P1](double r) { return r <= rc ? np.d1(r) : -P1(-std::log(r)) / r; };
  p.d2 = [np, rc, P1, P2](double r) {
    if (r <= rc) return np.d2(r);
    const double s = -std::log(r);
    return (P2(s) + P1(s)) / (r * r);
  };
  p.boundary = BoundaryKind::Dirichlet;
  p.description = "moser-dirichlet";
  p.breaks = {np.r0, rc};
  return p;
}

inline RadialProfile moser_profile(const MoserParams& mp) {
  return mp.bc == BoundaryKind::Navier ? moser_navier(mp) : moser_dirichlet(mp);
}

/// Uncorrected inner piece: the constant term is
/// sqrt(|log eps|/4) instead of |log eps|/4 / sqrt(|log eps|).  Kept only for
/// the diagnostics table; it is discontinuous at eps^{1/4}.
inline RadialProfile moser_navier_uncorrected(const MoserParams& mp) {
  mp.validate();
  const detail::NavierPieces np(mp.epsilon);
  RadialProfile p = moser_navier({mp.epsilon, BoundaryKind::Navier});
  p.eval = [np](double r) {
    if (r > np.r0) return np.u(r);
    return (std::sqrt(np.L / 4.0) + (np.se - r * r) / (2.0 * (np.se * std::sqrt(np.L)))) / std::sqrt(kOmega3);
  };
  p.description = "moser-navier-uncorrected";
  return p;
}

/// Uncorrected boundary patch: leading coefficient 2 log(1 - eta) < 0.
inline RadialProfile moser_dirichlet_uncorrected(const MoserParams& mp) {
  RadialProfile p = moser_dirichlet({mp.epsilon, BoundaryKind::Dirichlet});
  const detail::NavierPieces np(mp.epsilon);
  const double rc = 1.0 - mp.eta();
  const double lg = std::log(rc);
  p.eval = [np, rc, lg](double r) {
    if (r <= rc) return np.u(r);
    const double s = -std::log(r);
    return (2.0 * lg * s * s - s * s * s) / (lg * lg * np.K);
  };
  p.description = "moser-dirichlet-uncorrected";
  return p;
}

struct MoserDiagnostic {
  double epsilon = 0.0;
  std::string member;
  double seam_radius = 0.0;
  double left_value = 0.0;   // inner side of the seam
  double right_value = 0.0;  // outer side of the seam
  double jump = 0.0;
};

/// Seam values of the uncorrected and the corrected members at one epsilon.
inline std::vector<MoserDiagnostic> moser_diagnostics(double epsilon) {
  std::vector<MoserDiagnostic> out;
  const detail::NavierPieces np(epsilon);
  {
    const double r0 = np.r0;
    const double raw_inner =
        (std::sqrt(np.L / 4.0) + (np.se - r0 * r0) / (2.0 * std::sqrt(epsilon * np.L))) / std::sqrt(kOmega3);
    const double outer = -std::log(r0) / np.K;
    out.push_back({epsilon, "navier-uncorrected", r0, raw_inner, outer, raw_inner - outer});
    out.push_back({epsilon, "navier-corrected", r0, np.u(r0), outer, np.u(r0) - outer});
  }
  const MoserParams dir{epsilon, BoundaryKind::Dirichlet};
  if (dir.eta() < 0.5) {
    const double rc = 1.0 - dir.eta();
    const double s = -std::log(rc);
    const double lg = std::log(rc);
    const double raw = (2.0 * lg * s * s - s * s * s) / (lg * lg * np.K);
    const double a = s;
    const double corrected = (2.0 * a * s * s - s * s * s) / (a * a * np.K);
    out.push_back({epsilon, "dirichlet-uncorrected", rc, np.u(rc), raw, np.u(rc) - raw});
    out.push_back({epsilon, "dirichlet-corrected", rc, np.u(rc), corrected, np.u(rc) - corrected});
  }
  return out;
}

enum class ThresholdVerdict { Diverging, Bounded, Inconclusive };

inline const char* to_string(ThresholdVerdict v) {
  switch (v) {
    case ThresholdVerdict::Diverging: return "Diverging";
    case ThresholdVerdict::Bounded: return "Bounded";
    default: return "Inconclusive";
  }
}

struct ThresholdExperiment {
  double alpha = 0.0;
  double beta = 1.0;
  BoundaryKind bc = BoundaryKind::Navier;
  std::optional<int> m;
  std::vector<double> epsilons;
  std::vector<double> norm_sq;
  std::vector<double> values;
  std::vector<double> log_values;
  std::vector<double> lower_bound_exponent;
  ThresholdVerdict verdict = ThresholdVerdict::Inconclusive;
};

/// Diverging: from the third entry on every value exceeds its predecessor and
/// the last value is at least twice the third.  Bounded: the last four values
/// lie within 10% of their minimum.
inline ThresholdVerdict classify_scan(const std::vector<double>& values) {
  const std::size_t n = values.size();
  if (n < 4) return ThresholdVerdict::Inconclusive;
  bool increasing = true;
  for (std::size_t i = 2; i + 1 < n; ++i)
    if (!(values[i + 1] > values[i])) increasing = false;
  if (increasing && values.back() >= 2.0 * values[2]) return ThresholdVerdict::Diverging;
  const auto first = values.end() - 4;
  const double lo = *std::min_element(first, values.end());
  const double hi = *std::max_element(first, values.end());
  if (std::isfinite(hi) && lo > 0.0 && (hi - lo) / lo < 0.10) return ThresholdVerdict::Bounded;
  return ThresholdVerdict::Inconclusive;
}

/// log of omega_3 int_0^1 r^{alpha+3} g(u(r)) dr, evaluated with the integrand
/// rescaled by its sampled maximum so that values beyond the double range
/// remain representable.
inline double log_weighted_functional(const RadialProfile& u, const FunctionalParams& p,
                                      const QuadratureSpec& spec = {}) {
  p.validate();
  const auto breaks = detail::radial_breaks(u);
  auto log_integrand = [&](double r) {
    const double s = u.eval(r);
    return (p.alpha + 3.0) * std::log(r) + log_truncated_exp(p.sigma * s * s, p.m);
  };
  double shift = -std::numeric_limits<double>::infinity();
  std::vector<double> probe = log_bound_grid(256);
  for (double b : breaks) probe.push_back(b);
  for (double r : probe) shift = std::max(shift, log_integrand(r));
  if (!std::isfinite(shift)) shift = 0.0;
  auto integrand = [&](double r) { return std::exp(log_integrand(r) - shift); };
  const double scaled = integrate(integrand, 0.0, 1.0, spec, breaks).value;
  if (!(scaled > 0.0)) return -std::numeric_limits<double>::infinity();
  return std::log(kOmega3) + shift + std::log(scaled);
}

/// Evaluates F (or F_m) with sigma = beta * sigma_alpha along the normalized
/// members u_eps / ||Delta u_eps||_2 for each epsilon.
inline ThresholdExperiment blowup_scan(double alpha, double beta, const std::vector<double>& epsilons,
                                       BoundaryKind bc = BoundaryKind::Navier, std::optional<int> m = std::nullopt,
                                       const QuadratureSpec& spec = {}) {
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) throw ValidationError("blowup_scan: alpha must be >= 0");
  if (!(beta > 0.0) || !std::isfinite(beta)) throw ValidationError("blowup_scan: beta must be > 0");
  if (epsilons.empty()) throw ValidationError("blowup_scan: empty epsilon list");
  for (std::size_t i = 0; i < epsilons.size(); ++i) {
    MoserParams{epsilons[i], bc}.validate();
    if (i > 0 && !(epsilons[i] < epsilons[i - 1]))
      throw ValidationError("blowup_scan: epsilons must be strictly decreasing");
  }
  if (m && *m < 0) throw ValidationError("blowup_scan: m must be >= 0");

  ThresholdExperiment ex;
  ex.alpha = alpha;
  ex.beta = beta;
  ex.bc = bc;
  ex.m = m;
  ex.epsilons = epsilons;
  FunctionalParams p{alpha, 1.0, m};
  p.sigma = beta * p.sigma_alpha();
  for (double eps : epsilons) {
    const auto u = moser_profile({eps, bc});
    const double nsq = laplacian_l2_sq(u, spec);
    const auto v = u.scaled(1.0 / std::sqrt(nsq));
    const double lv = log_weighted_functional(v, p, spec);
    const double L = -std::log(eps);
    ex.norm_sq.push_back(nsq);
    ex.log_values.push_back(lv);
    ex.values.push_back(std::exp(lv));
    ex.lower_bound_exponent.push_back((alpha + 4.0) / 4.0 * ((beta - 1.0) * L - 4.0));
  }
  ex.verdict = classify_scan(ex.values);
  return ex;
}

}  // namespace henon4

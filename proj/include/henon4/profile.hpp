#pragma once

// Radial functions on the unit ball of R^4 and the parameters of the weighted
// exponential functional.

#include <cmath>
#include <functional>
#include <numbers>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "henon4/errors.hpp"

namespace henon4 {

/// Area of the unit sphere S^3 in R^4.
inline constexpr double kOmega3 = 2.0 * std::numbers::pi * std::numbers::pi;
/// Volume of the unit ball in R^4 (= kOmega3 / 4).
inline constexpr double kBallVolume = kOmega3 / 4.0;
/// Sharp Adams constant for the bi-Laplacian in R^4.
inline constexpr double kAdams = 32.0 * std::numbers::pi * std::numbers::pi;

enum class BoundaryKind { Navier, Dirichlet };

inline const char* to_string(BoundaryKind bc) { return bc == BoundaryKind::Navier ? "navier" : "dirichlet"; }

using RealFn = std::function<double(double)>;

/// A radial function u(|x|) on (0, 1] with its first two radial derivatives.
///
/// `breaks` lists interior radii where the second derivative may jump
/// (piecewise profiles); quadrature over r splits there.
struct RadialProfile {
  RealFn eval;
  RealFn d1;
  RealFn d2;
  BoundaryKind boundary = BoundaryKind::Navier;
  std::string description;
  std::vector<double> breaks;

  double operator()(double r) const { return eval(r); }

  /// c * u with the same boundary kind.
  RadialProfile scaled(double c, std::string label = {}) const {
    RadialProfile out = *this;
    out.eval = [f = eval, c](double r) { return c * f(r); };
    out.d1 = [f = d1, c](double r) { return c * f(r); };
    out.d2 = [f = d2, c](double r) { return c * f(r); };
    if (!label.empty()) out.description = std::move(label);
    return out;
  }
};

/// Builds u(r) = q(r^2) from q and its first two derivatives in x = r^2.
/// Such profiles are smooth at the origin by construction.
inline RadialProfile profile_in_square(RealFn q, RealFn q1, RealFn q2, BoundaryKind bc, std::string label) {
  RadialProfile p;
  p.eval = [q](double r) { return q(r * r); };
  p.d1 = [q1](double r) { return 2.0 * r * q1(r * r); };
  p.d2 = [q1, q2](double r) {
    const double x = r * r;
    return 2.0 * q1(x) + 4.0 * x * q2(x);
  };
  p.boundary = bc;
  p.description = std::move(label);
  return p;
}

/// Names of the invariants a profile violates (empty when admissible).
inline std::vector<std::string> profile_violations(const RadialProfile& u) {
  std::vector<std::string> bad;
  if (std::fabs(u.eval(1.0)) > 1e-12) bad.emplace_back("u(1) != 0");
  if (u.boundary == BoundaryKind::Dirichlet && std::fabs(u.d1(1.0)) > 1e-12) bad.emplace_back("u'(1) != 0");
  for (double r : {1e-8, 1e-6, 1e-4, 1e-2, 0.1, 0.25, 0.5, 0.75, 0.9, 0.99, 1.0}) {
    if (!std::isfinite(u.eval(r)) || !std::isfinite(u.d1(r)) || !std::isfinite(u.d2(r))) {
      bad.emplace_back("non-finite value near r = " + std::to_string(r));
      break;
    }
  }
  return bad;
}

inline void require_admissible(const RadialProfile& u) {
  const auto bad = profile_violations(u);
  if (!bad.empty()) throw PreconditionError("profile '" + u.description + "' is not admissible: " + bad.front());
}

/// The triple (alpha, sigma, m) of F or F_m.  `m` absent selects the full
/// functional with integrand exp(sigma u^2).
struct FunctionalParams {
  double alpha = 0.0;
  double sigma = 1.0;
  std::optional<int> m;

  /// 32 pi^2 (1 + alpha/4) = (4 + alpha) * 4 * omega_3.
  double sigma_alpha() const { return kAdams * (1.0 + alpha / 4.0); }

  void validate() const {
    if (!(alpha >= 0.0) || !std::isfinite(alpha)) throw ValidationError("alpha must be finite and >= 0");
    if (!(sigma > 0.0) || !std::isfinite(sigma)) throw ValidationError("sigma must be finite and > 0");
    if (m && *m < 0) throw ValidationError("m must be a natural number");
  }
};

}  // namespace henon4

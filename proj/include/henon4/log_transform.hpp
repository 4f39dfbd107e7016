#pragma once

// The logarithmic change of variables w(t) = 2 sqrt(omega_3 gamma) u(e^{-t/gamma}),
// the energy identities it satisfies, and integrals of exponential type on
// the half-line.

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <numbers>
#include <string>
#include <vector>

#include "henon4/profile.hpp"
#include "henon4/quadrature.hpp"
#include "henon4/radial.hpp"

namespace henon4 {

/// A function on [0, inf) with two derivatives and the scale gamma it was
/// built with.
struct LogProfile {
  double gamma = 1.0;
  RealFn w;
  RealFn w1;
  RealFn w2;
  std::string source;
  /// Interior points of [0, inf) where w'' may jump.
  std::vector<double> breaks;
};

inline LogProfile to_log_profile(const RadialProfile& u, double gamma) {
  if (!(gamma > 0.0) || !std::isfinite(gamma)) throw DomainError("to_log_profile: gamma must be > 0");
  const double amp = 2.0 * std::sqrt(kOmega3 * gamma);
  const double amp1 = 2.0 * std::sqrt(kOmega3 / gamma);
  LogProfile wp;
  wp.gamma = gamma;
  wp.w = [u, amp, gamma](double t) { return amp * u.eval(std::exp(-t / gamma)); };
  wp.w1 = [u, amp1, gamma](double t) {
    const double r = std::exp(-t / gamma);
    return -amp1 * r * u.d1(r);
  };
  wp.w2 = [u, amp1, gamma](double t) {
    const double r = std::exp(-t / gamma);
    return amp1 / gamma * (r * u.d1(r) + r * r * u.d2(r));
  };
  wp.source = u.description;
  for (double rb : detail::radial_breaks(u))
    if (rb > 0.0 && rb < 1.0) wp.breaks.push_back(-gamma * std::log(rb));
  std::sort(wp.breaks.begin(), wp.breaks.end());
  return wp;
}

/// int_0^inf (gamma/2 w'' - w')^2 dt.
inline double log_energy(const LogProfile& wp, const QuadratureSpec& spec = {}) {
  HalflineOptions opt;
  opt.scale = wp.gamma / 4.0;
  opt.breaks = wp.breaks;
  auto integrand = [&](double t) {
    const double v = 0.5 * wp.gamma * wp.w2(t) - wp.w1(t);
    return v * v;
  };
  return integrate_halfline(integrand, 0.0, spec, opt).value;
}

/// 8 omega_3 int_1^inf v''(t)^2 t^3 dt with v(t) = u(1/sqrt t).  Integrated
/// in tau = log t, where the integrand is 8 omega_3 (t^2 v''(t))^2.
inline double sqrt_transform_energy(const RadialProfile& u, const QuadratureSpec& spec = {}) {
  HalflineOptions opt;
  opt.scale = 0.5;
  for (double rb : detail::radial_breaks(u))
    if (rb > 0.0 && rb < 1.0) opt.breaks.push_back(-2.0 * std::log(rb));
  auto integrand = [&](double tau) {
    const double inv_t = std::exp(-tau);
    const double inv_sqrt_t = std::exp(-0.5 * tau);
    // t^2 v''(t) = u''(1/sqrt t) / (4t) + 3 u'(1/sqrt t) / (4 sqrt t)
    const double v = 0.25 * u.d2(inv_sqrt_t) * inv_t + 0.75 * u.d1(inv_sqrt_t) * inv_sqrt_t;
    return v * v;
  };
  return 8.0 * kOmega3 * integrate_halfline(integrand, 0.0, spec, opt).value;
}

/// (omega_3/gamma) int_0^inf exp((alpha+4)/gamma [sigma w^2 / (8 pi^2 (alpha+4)) - t]) dt,
/// which equals int_B |x|^alpha exp(sigma u^2) dx for w = to_log_profile(u, gamma).
inline double weighted_exp_integral_log(const LogProfile& wp, double alpha, double sigma,
                                        const QuadratureSpec& spec = {}) {
  if (!(alpha >= 0.0)) throw DomainError("weighted_exp_integral_log: alpha must be >= 0");
  if (!(sigma >= 0.0)) throw DomainError("weighted_exp_integral_log: sigma must be >= 0");
  const double a4 = alpha + 4.0;
  const double c = sigma / (4.0 * kOmega3 * a4);
  HalflineOptions opt;
  opt.scale = wp.gamma / a4;
  opt.breaks = wp.breaks;
  auto integrand = [&](double t) {
    const double w = wp.w(t);
    return std::exp(a4 / wp.gamma * (c * w * w - t));
  };
  return kOmega3 / wp.gamma * integrate_halfline(integrand, 0.0, spec, opt).value;
}

namespace detail {

// Psi(t) = int_0^t psi from a table of partial integrals on fixed knots.
class Antiderivative {
 public:
  Antiderivative(RealFn psi, const std::vector<double>& breaks, const QuadratureSpec& spec)
      : psi_(std::move(psi)), spec_(spec) {
    spec_.abs_tol = std::min(spec.abs_tol, 1e-16);
    double horizon = 64.0;
    for (double b : breaks)
      if (std::isfinite(b)) horizon = std::max(horizon, 2.0 * b);
    std::vector<double> k{0.0};
    for (double t = 0.25; t < horizon; t += 0.25) k.push_back(t);
    for (double b : breaks)
      if (b > 0.0 && std::isfinite(b)) k.push_back(b);
    for (double t = horizon; t < 1e7; t *= 2.0) k.push_back(t);
    std::sort(k.begin(), k.end());
    k.erase(std::unique(k.begin(), k.end()), k.end());
    knots_ = std::move(k);
    values_.assign(knots_.size(), 0.0);
    for (std::size_t i = 1; i < knots_.size(); ++i)
      values_[i] = values_[i - 1] + integrate(psi_, knots_[i - 1], knots_[i], spec_).value;
  }

  double operator()(double t) const {
    if (t <= 0.0) return 0.0;
    auto it = std::upper_bound(knots_.begin(), knots_.end(), t);
    const std::size_t i = static_cast<std::size_t>(it - knots_.begin()) - 1;
    if (t == knots_[i]) return values_[i];
    return values_[i] + integrate(psi_, knots_[i], t, spec_).value;
  }

 private:
  RealFn psi_;
  QuadratureSpec spec_;
  std::vector<double> knots_;
  std::vector<double> values_;
};

}  // namespace detail

/// int_0^inf psi^2 dt.
inline double psi_l2_sq(const RealFn& psi, const std::vector<double>& breaks = {}, const QuadratureSpec& spec = {}) {
  HalflineOptions opt;
  opt.breaks = breaks;
  return integrate_halfline([&](double t) { const double v = psi(t); return v * v; }, 0.0, spec, opt).value;
}

/// int_0^inf exp(-(t - Psi(t)^2)) dt with Psi(t) = int_0^t psi.
inline double marshall_moser_integral(const RealFn& psi, const QuadratureSpec& spec = {},
                                      const std::vector<double>& breaks = {}) {
  const double norm_sq = psi_l2_sq(psi, breaks, spec);
  if (norm_sq > 1.0 + 1e-9)
    throw PreconditionError("marshall_moser_integral: int psi^2 = " + std::to_string(norm_sq) + " exceeds 1");
  const detail::Antiderivative Psi(psi, breaks, spec);
  HalflineOptions opt;
  opt.breaks = breaks;
  auto integrand = [&](double t) {
    const double s = Psi(t);
    return std::exp(s * s - t);
  };
  return integrate_halfline(integrand, 0.0, spec, opt).value;
}

struct PsiMember {
  std::string name;
  RealFn psi;
  std::vector<double> breaks;
};

/// Admissible test functions (int psi^2 <= 1) for the Marshall-Moser integral.
inline std::vector<PsiMember> marshall_moser_family() {
  std::vector<PsiMember> fam;
  fam.push_back({"zero", [](double) { return 0.0; }, {}});
  fam.push_back({"step:1", [](double t) { return t < 1.0 ? 1.0 : 0.0; }, {1.0}});
  for (double T : {0.5, 1.0, 4.0, 10.0, 30.0, 100.0}) {
    const double h = 1.0 / std::sqrt(T);
    fam.push_back({"box:" + std::to_string(T), [h, T](double t) { return t < T ? h : 0.0; }, {T}});
  }
  for (double a : {1.0, 5.0}) {
    const double T = 4.0;
    const double h = 1.0 / std::sqrt(T);
    fam.push_back({"shifted_box:" + std::to_string(a), [h, a, T](double t) { return (t >= a && t < a + T) ? h : 0.0; },
                   {a, a + T}});
  }
  for (double lam : {0.01, 0.1, 1.0, 10.0}) {
    const double c = std::sqrt(2.0 * lam);
    fam.push_back({"exp:" + std::to_string(lam), [c, lam](double t) { return c * std::exp(-lam * t); }, {}});
  }
  for (double width : {0.5, 3.0, 20.0}) {
    const double c = std::sqrt(2.0 / (width * std::sqrt(std::numbers::pi)));
    fam.push_back({"gauss:" + std::to_string(width),
                   [c, width](double t) { return c * std::exp(-0.5 * (t / width) * (t / width)); }, {}});
  }
  for (double T : {2.0, 20.0}) {
    const double c = std::sqrt(3.0 / T);
    fam.push_back({"ramp:" + std::to_string(T), [c, T](double t) { return t < T ? c * (1.0 - t / T) : 0.0; }, {T}});
  }
  for (double gamma : {4.0, 8.0}) {
    auto poly2 = profile_in_square([](double x) { return 1.0 - x; }, [](double) { return -1.0; },
                                   [](double) { return 0.0; }, BoundaryKind::Navier, "poly2");
    auto poly4 = profile_in_square([](double x) { return (1.0 - x) * (1.0 - x); },
                                   [](double x) { return -2.0 * (1.0 - x); }, [](double) { return 2.0; },
                                   BoundaryKind::Dirichlet, "poly4");
    for (const auto& u : {poly2, poly4}) {
      const auto wp = to_log_profile(normalized(u), gamma);
      fam.push_back({"log_derivative:" + u.description + ":" + std::to_string(gamma), wp.w1, wp.breaks});
    }
  }
  return fam;
}

struct EstimatesReport {
  bool est1_ok = false;
  bool est2_ok = false;
  bool est3_ok = false;
  bool w0_ok = false;
  double est1_margin = 0.0;  // max_t w'(t) - w'(0) - 2/(a+4) (sqrt t + w(t))
  double est2_margin = 0.0;  // max_t w(t) - sqrt t
  double est3_margin = 0.0;  // max_t w'(t) - sqrt(2/(a+4)) (1 + 2 sqrt(t/(a+4)))
  double w0_margin = 0.0;    // max(-w'(0), w'(0) - sqrt(2/(a+4)))
  double energy = 0.0;
  double horizon = 0.0;
  double tail_kappa = 0.0;  // (w(T)/sqrt T)^2
  double tail_bound = 0.0;  // e^{T(kappa - 1)}
};

/// Grid check of the pointwise estimates satisfied by w' and w when w comes
/// from a radially decreasing u of unit energy and gamma = alpha + 4.
inline EstimatesReport estimates_check(const LogProfile& wp, double alpha, const QuadratureSpec& spec = {},
                                       int nodes = 4001) {
  if (!(alpha >= 0.0)) throw DomainError("estimates_check: alpha must be >= 0");
  const double a4 = alpha + 4.0;
  if (std::fabs(wp.gamma - a4) > 1e-12 * a4) throw PreconditionError("estimates_check: requires gamma = alpha + 4");

  EstimatesReport rep;
  try {
    rep.energy = log_energy(wp, spec);
  } catch (const NumericalError& e) {
    throw PreconditionError(std::string("estimates_check: energy not finite: ") + e.what());
  }
  if (rep.energy > 1.0 + 1e-9) throw PreconditionError("estimates_check: log energy exceeds 1");

  const double T = 50.0 * a4;
  rep.horizon = T;
  std::vector<double> grid;
  grid.reserve(nodes + wp.breaks.size());
  for (int i = 0; i < nodes; ++i) grid.push_back(T * i / (nodes - 1));
  for (double b : wp.breaks)
    if (b < T) grid.push_back(b);
  std::sort(grid.begin(), grid.end());

  const double w10 = wp.w1(0.0);
  if (!std::isfinite(w10)) throw PreconditionError("estimates_check: w'(0) is not finite");
  rep.est1_margin = rep.est2_margin = rep.est3_margin = -std::numeric_limits<double>::infinity();
  const double c3 = std::sqrt(2.0 / a4);
  for (double t : grid) {
    const double w = wp.w(t);
    const double w1 = wp.w1(t);
    if (!std::isfinite(w) || !std::isfinite(w1)) throw PreconditionError("estimates_check: w not finite on grid");
    if (w1 < -1e-9) throw PreconditionError("estimates_check: w' < 0, source is not radially decreasing");
    const double st = std::sqrt(t);
    rep.est1_margin = std::max(rep.est1_margin, w1 - w10 - 2.0 / a4 * (st + w));
    rep.est2_margin = std::max(rep.est2_margin, w - st);
    rep.est3_margin = std::max(rep.est3_margin, w1 - c3 * (1.0 + 2.0 * std::sqrt(t / a4)));
  }
  rep.w0_margin = std::max(-w10, w10 - c3);
  rep.est1_ok = rep.est1_margin <= 1e-9;
  rep.est2_ok = rep.est2_margin <= 1e-9;
  rep.est3_ok = rep.est3_margin <= 1e-9;
  rep.w0_ok = rep.w0_margin <= 1e-9;
  const double wT = wp.w(T);
  rep.tail_kappa = wT * wT / T;
  rep.tail_bound = std::exp(T * (rep.tail_kappa - 1.0));
  return rep;
}

}  // namespace henon4

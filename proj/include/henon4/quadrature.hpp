#pragma once

// Adaptive Gauss-Kronrod quadrature on finite intervals and on [a, inf).
//
// The finite-interval routine is a global adaptive bisection scheme built on
// the 10/21-point Gauss-Kronrod pair with the QUADPACK error heuristic.  Nodes
// are strictly interior, so integrable endpoint singularities are never
// evaluated.

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <span>
#include <sstream>
#include <vector>

#include "henon4/errors.hpp"

namespace henon4 {

struct QuadratureSpec {
  double rel_tol = 1e-10;
  double abs_tol = 1e-14;
  int max_subdivisions = 2000;

  void validate() const {
    if (!(rel_tol > 0.0) || !(abs_tol > 0.0) || !std::isfinite(rel_tol) || !std::isfinite(abs_tol))
      throw ValidationError("quadrature tolerances must be finite and strictly positive");
    if (max_subdivisions < 1) throw ValidationError("max_subdivisions must be >= 1");
  }
};

struct IntegralResult {
  double value = 0.0;
  double error_estimate = 0.0;
  int subdivisions_used = 0;
};

namespace detail {

// QUADPACK qk21 abscissae (descending, last is the centre) and weights.
inline constexpr std::array<double, 11> kXgk = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.000000000000000000000000000000000};
inline constexpr std::array<double, 11> kWgk = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077208980221031, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};
// Gauss weights for kXgk[1], kXgk[3], ..., kXgk[9].
inline constexpr std::array<double, 5> kWg = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

struct Segment {
  double a;
  double b;
  double value;
  double error;
};

struct SegmentOrder {
  bool operator()(const Segment& l, const Segment& r) const { return l.error < r.error; }
};

template <class F>
double checked_eval(F& f, double x) {
  const double y = f(x);
  if (!std::isfinite(y)) {
    std::ostringstream os;
    os.precision(17);
    os << "integrand returned a non-finite value at x = " << x;
    throw NonFinite(os.str());
  }
  return y;
}

template <class F>
Segment gauss_kronrod21(F& f, double a, double b) {
  constexpr double eps = std::numeric_limits<double>::epsilon();
  constexpr double uflow = std::numeric_limits<double>::min();
  const double centr = 0.5 * (a + b);
  const double hlgth = 0.5 * (b - a);
  const double dhlgth = std::fabs(hlgth);

  std::array<double, 10> fv1{};
  std::array<double, 10> fv2{};
  const double fc = checked_eval(f, centr);
  double resg = 0.0;
  double resk = kWgk[10] * fc;
  double resabs = std::fabs(resk);
  for (int j = 0; j < 10; ++j) {
    const double absc = hlgth * kXgk[j];
    const double f1 = checked_eval(f, centr - absc);
    const double f2 = checked_eval(f, centr + absc);
    fv1[j] = f1;
    fv2[j] = f2;
    resk += kWgk[j] * (f1 + f2);
    resabs += kWgk[j] * (std::fabs(f1) + std::fabs(f2));
    if (j % 2 == 1) resg += kWg[j / 2] * (f1 + f2);
  }
  const double reskh = 0.5 * resk;
  double resasc = kWgk[10] * std::fabs(fc - reskh);
  for (int j = 0; j < 10; ++j) resasc += kWgk[j] * (std::fabs(fv1[j] - reskh) + std::fabs(fv2[j] - reskh));

  const double result = resk * hlgth;
  resabs *= dhlgth;
  resasc *= dhlgth;
  double abserr = std::fabs((resk - resg) * hlgth);
  if (resasc != 0.0 && abserr != 0.0) abserr = resasc * std::min(1.0, std::pow(200.0 * abserr / resasc, 1.5));
  if (resabs > uflow / (50.0 * eps)) abserr = std::max(eps * 50.0 * resabs, abserr);
  return {a, b, result, abserr};
}

inline std::vector<double> interior_points(double a, double b, std::span<const double> breaks) {
  std::vector<double> pts;
  pts.reserve(breaks.size() + 2);
  pts.push_back(a);
  for (double p : breaks)
    if (p > a && p < b && std::isfinite(p)) pts.push_back(p);
  pts.push_back(b);
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

}  // namespace detail

/// Integrates f over [a, b], optionally split at interior break points
/// (kinks or jumps of f).  Succeeds when the summed error estimate drops
/// below max(rel_tol * |value|, abs_tol).
template <class F>
IntegralResult integrate(F&& f, double a, double b, const QuadratureSpec& spec = {},
                         std::span<const double> breaks = {}) {
  spec.validate();
  if (!(a < b) || !std::isfinite(a) || !std::isfinite(b))
    throw DomainError("integrate: need finite a < b");

  const auto pts = detail::interior_points(a, b, breaks);
  std::priority_queue<detail::Segment, std::vector<detail::Segment>, detail::SegmentOrder> heap;
  std::vector<detail::Segment> frozen;  // too narrow to bisect further
  double total = 0.0;
  double total_err = 0.0;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    auto seg = detail::gauss_kronrod21(f, pts[i], pts[i + 1]);
    total += seg.value;
    total_err += seg.error;
    heap.push(seg);
  }

  int subdivisions = 0;
  auto target = [&] { return std::max(spec.rel_tol * std::fabs(total), spec.abs_tol); };
  while (total_err > target()) {
    if (heap.empty()) {
      throw NonConvergence("integrate: error target not reachable (round-off limited)", total, total_err);
    }
    if (subdivisions >= spec.max_subdivisions) {
      std::ostringstream os;
      os.precision(6);
      os << "integrate: subdivision budget " << spec.max_subdivisions << " exhausted (estimate " << total
         << ", error " << total_err << ")";
      throw NonConvergence(os.str(), total, total_err);
    }
    const auto worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b) ||
        (worst.b - worst.a) < 8.0 * std::numeric_limits<double>::epsilon() *
                                   std::max(std::fabs(worst.a), std::fabs(worst.b))) {
      frozen.push_back(worst);
      continue;
    }
    const auto left = detail::gauss_kronrod21(f, worst.a, mid);
    const auto right = detail::gauss_kronrod21(f, mid, worst.b);
    total += left.value + right.value - worst.value;
    total_err += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
    ++subdivisions;
  }

  // Re-sum from the segments to shed incremental drift.
  double value = 0.0;
  double err = 0.0;
  for (const auto& s : frozen) {
    value += s.value;
    err += s.error;
  }
  while (!heap.empty()) {
    value += heap.top().value;
    err += heap.top().error;
    heap.pop();
  }
  return {value, err, subdivisions};
}

struct HalflineOptions {
  /// Length scale of the tail substitution t = t0 - scale * log(1 - s).
  double scale = 1.0;
  /// Interior break points in t.
  std::vector<double> breaks;
  /// Consecutive growing doubling blocks that signal divergence.
  int growth_doublings = 8;
  /// Upper bound on the number of doubling blocks examined.
  int max_probe_doublings = 60;
};

/// Integrates f over [a, inf).
///
/// The pieces between break points are integrated directly.  Beyond the last
/// break t_last, blocks [t_last + scale*(2^k - 1), t_last + scale*(2^{k+1} - 1)]
/// are integrated in turn until one is both smaller than its predecessor and
/// negligible against the running total; the remainder beyond the last block
/// t0 is integrated after the substitution t = t0 - scale * log(1 - s).
template <class F>
IntegralResult integrate_halfline(F&& f, double a, const QuadratureSpec& spec = {},
                                  const HalflineOptions& opt = {}) {
  spec.validate();
  if (!std::isfinite(a)) throw DomainError("integrate_halfline: start point must be finite");
  if (!(opt.scale > 0.0) || !std::isfinite(opt.scale))
    throw DomainError("integrate_halfline: scale must be positive");

  std::vector<double> pts{a};
  for (double p : opt.breaks)
    if (p > a && std::isfinite(p)) pts.push_back(p);
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

  IntegralResult total;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const auto piece = integrate(f, pts[i], pts[i + 1], spec);
    total.value += piece.value;
    total.error_estimate += piece.error_estimate;
    total.subdivisions_used += piece.subdivisions_used;
  }

  const double t_last = pts.back();
  double t0 = t_last;
  double previous = 0.0;
  int growing = 0;
  bool settled = false;
  for (int k = 0; k < opt.max_probe_doublings; ++k) {
    const double lo = t_last + opt.scale * (std::ldexp(1.0, k) - 1.0);
    const double hi = t_last + opt.scale * (std::ldexp(1.0, k + 1) - 1.0);
    QuadratureSpec block_spec = spec;
    block_spec.abs_tol = std::max(spec.abs_tol, 1e-2 * spec.rel_tol * std::fabs(total.value));
    IntegralResult block;
    try {
      block = integrate(f, lo, hi, block_spec);
    } catch (const NonFinite&) {
      throw Divergent("integrate_halfline: integrand overflows in the tail");
    }
    total.value += block.value;
    total.error_estimate += block.error_estimate;
    total.subdivisions_used += block.subdivisions_used;
    t0 = hi;
    const double size = std::fabs(block.value);
    if (k > 0 && size > previous) {
      if (++growing >= opt.growth_doublings) throw Divergent("integrate_halfline: tail blocks grow geometrically");
    } else {
      growing = 0;
    }
    if (k > 0 && size <= previous && size <= std::max(spec.rel_tol * std::fabs(total.value), spec.abs_tol)) {
      settled = true;
      break;
    }
    previous = size;
  }
  if (!settled) throw NonConvergence("integrate_halfline: tail did not settle", total.value, total.error_estimate);

  auto tail = [&](double s) -> double {
    const double one_minus_s = 1.0 - s;
    const double t = t0 - opt.scale * std::log(one_minus_s);
    return f(t) * opt.scale / one_minus_s;
  };
  QuadratureSpec tail_spec = spec;
  tail_spec.abs_tol = std::max(spec.abs_tol, spec.rel_tol * std::fabs(total.value));
  IntegralResult rest;
  try {
    rest = integrate(tail, 0.0, 1.0, tail_spec);
  } catch (const NonFinite&) {
    throw Divergent("integrate_halfline: integrand overflows in the tail");
  }
  total.value += rest.value;
  total.error_estimate += rest.error_estimate;
  total.subdivisions_used += rest.subdivisions_used;
  return total;
}

/// Gamma function for x > 0.
inline double gamma_fn(double x) {
  if (!(x > 0.0) || !std::isfinite(x)) throw DomainError("gamma_fn: argument must be finite and > 0");
  return std::tgamma(x);
}

}  // namespace henon4

#pragma once

// Schwarz symmetrization of radial functions on the unit ball of R^4 and the
// radial Poisson solve used by the Talenti comparison.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <memory>
#include <numeric>
#include <vector>

#include "henon4/profile.hpp"
#include "henon4/quadrature.hpp"
#include "henon4/radial.hpp"

namespace henon4 {

/// Monotone piecewise-cubic Hermite interpolant (Fritsch-Carlson slopes).
class MonotoneCubic {
 public:
  MonotoneCubic(std::vector<double> x, std::vector<double> y) : x_(std::move(x)), y_(std::move(y)) {
    const std::size_t n = x_.size();
    if (n < 2 || y_.size() != n) throw DomainError("MonotoneCubic: need at least two nodes");
    std::vector<double> h(n - 1), delta(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) {
      h[i] = x_[i + 1] - x_[i];
      if (!(h[i] > 0.0)) throw DomainError("MonotoneCubic: nodes must increase strictly");
      delta[i] = (y_[i + 1] - y_[i]) / h[i];
    }
    d_.assign(n, 0.0);
    if (n == 2) {
      d_[0] = d_[1] = delta[0];
      return;
    }
    for (std::size_t i = 1; i + 1 < n; ++i) {
      if (delta[i - 1] * delta[i] <= 0.0) continue;
      const double w1 = 2.0 * h[i] + h[i - 1];
      const double w2 = h[i] + 2.0 * h[i - 1];
      d_[i] = (w1 + w2) / (w1 / delta[i - 1] + w2 / delta[i]);
    }
    d_[0] = end_slope(h[0], h[1], delta[0], delta[1]);
    d_[n - 1] = end_slope(h[n - 2], h[n - 3], delta[n - 2], delta[n - 3]);
  }

  /// Value, first and second derivative at t (clamped to the node range).
  void evaluate(double t, double& value, double& first, double& second) const {
    t = std::clamp(t, x_.front(), x_.back());
    auto it = std::upper_bound(x_.begin(), x_.end(), t);
    std::size_t i = (it == x_.begin()) ? 0 : static_cast<std::size_t>(it - x_.begin()) - 1;
    if (i >= x_.size() - 1) i = x_.size() - 2;
    const double h = x_[i + 1] - x_[i];
    const double s = (t - x_[i]) / h;
    const double y0 = y_[i], y1 = y_[i + 1], m0 = d_[i] * h, m1 = d_[i + 1] * h;
    const double s2 = s * s, s3 = s2 * s;
    value = (2 * s3 - 3 * s2 + 1) * y0 + (s3 - 2 * s2 + s) * m0 + (-2 * s3 + 3 * s2) * y1 + (s3 - s2) * m1;
    first = ((6 * s2 - 6 * s) * y0 + (3 * s2 - 4 * s + 1) * m0 + (-6 * s2 + 6 * s) * y1 + (3 * s2 - 2 * s) * m1) / h;
    second = ((12 * s - 6) * y0 + (6 * s - 4) * m0 + (-12 * s + 6) * y1 + (6 * s - 2) * m1) / (h * h);
  }

  double operator()(double t) const {
    double v, d1, d2;
    evaluate(t, v, d1, d2);
    return v;
  }

 private:
  static double end_slope(double h0, double h1, double del0, double del1) {
    double d = ((2.0 * h0 + h1) * del0 - h0 * del1) / (h0 + h1);
    if (d * del0 <= 0.0) return 0.0;
    if (del0 * del1 <= 0.0 && std::fabs(d) > std::fabs(3.0 * del0)) return 3.0 * del0;
    return d;
  }

  std::vector<double> x_;
  std::vector<double> y_;
  std::vector<double> d_;
};

/// Sampled decreasing rearrangement: values sorted in decreasing order, each
/// carrying the normalized measure (in units of |B| = pi^2/2) of its shell.
struct Rearrangement {
  std::vector<double> rho;     // increasing positions in (0, 1)
  std::vector<double> value;   // non-increasing
  std::vector<double> weight;  // shell measure / |B|, sums to 1
  RadialProfile profile;

  /// int_B |u|^p dx evaluated on the rearranged samples.
  double lp_integral(double p) const {
    double s = 0.0;
    for (std::size_t i = 0; i < value.size(); ++i) s += std::pow(value[i], p) * weight[i];
    return s * kBallVolume;
  }
};

/// Rearranges |u| into a radially non-increasing profile with the same
/// distribution function under the 4D Lebesgue measure.  The ball is cut into
/// `grid_size` shells of equal radial width; each shell is sampled at the
/// radius bisecting its measure.
inline Rearrangement rearrange(const RadialProfile& u, std::size_t grid_size = 200000) {
  if (grid_size < 8) throw DomainError("rearrange: grid_size must be >= 8");
  const std::size_t n = grid_size;
  std::vector<double> sample(n), weight(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double a = static_cast<double>(i) / n;
    const double b = static_cast<double>(i + 1) / n;
    const double a4 = a * a * a * a, b4 = b * b * b * b;
    const double r = std::pow(0.5 * (a4 + b4), 0.25);
    sample[i] = std::fabs(u.eval(r));
    weight[i] = b4 - a4;
    if (!std::isfinite(sample[i])) throw NonFinite("rearrange: profile is not finite at r = " + std::to_string(r));
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t l, std::size_t r) { return sample[l] > sample[r]; });

  Rearrangement out;
  out.rho.resize(n);
  out.value.resize(n);
  out.weight.resize(n);
  double cumulative = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t i = order[j];
    out.value[j] = sample[i];
    out.weight[j] = weight[i];
    out.rho[j] = std::pow(cumulative + 0.5 * weight[i], 0.25);
    cumulative += weight[i];
  }

  // Closing nodes at rho = 0 (supremum) and rho = 1 (infimum).
  const double at_one = std::fabs(u.eval(1.0));
  const double near_zero = std::fabs(u.eval(1e-12));
  std::vector<double> xs{0.0};
  std::vector<double> ys{std::max({out.value.front(), at_one, near_zero})};
  for (std::size_t j = 0; j < n; ++j) {
    if (out.rho[j] <= xs.back()) continue;
    xs.push_back(out.rho[j]);
    ys.push_back(out.value[j]);
  }
  if (xs.back() < 1.0) {
    xs.push_back(1.0);
    ys.push_back(std::min({out.value.back(), at_one, near_zero}));
  }

  std::vector<double> nodes(xs.begin() + 1, xs.end() - 1);
  auto interp = std::make_shared<const MonotoneCubic>(std::move(xs), std::move(ys));
  RadialProfile p;
  p.eval = [interp](double r) { return (*interp)(r); };
  p.d1 = [interp](double r) {
    double v, d1, d2;
    interp->evaluate(r, v, d1, d2);
    return d1;
  };
  p.d2 = [interp](double r) {
    double v, d1, d2;
    interp->evaluate(r, v, d1, d2);
    return d2;
  };
  p.boundary = BoundaryKind::Navier;
  p.description = "rearranged(" + u.description + ")";
  p.breaks = std::move(nodes);
  out.profile = std::move(p);
  return out;
}

/// The radially non-increasing profile equimeasurable with |u|.
inline RadialProfile decreasing_rearrangement(const RadialProfile& u, std::size_t grid_size = 200000) {
  return rearrange(u, grid_size).profile;
}

namespace detail {

// Fixed 21-point Kronrod rule on [a, b].
template <class F>
double kronrod21(F&& f, double a, double b) {
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  double s = kWgk[10] * f(c);
  for (int j = 0; j < 10; ++j) s += kWgk[j] * (f(c - h * kXgk[j]) + f(c + h * kXgk[j]));
  return s * h;
}

// Fixed 5-point Gauss-Legendre rule on [a, b] (exact through degree 9).
template <class F>
double gauss_legendre5(F&& f, double a, double b) {
  static constexpr double x[3] = {0.0, 0.538469310105683091036314420700208805, 0.906179845938663992797626878299392965};
  static constexpr double w[3] = {0.568888888888888888888888888888888889, 0.478628670499366468041291514835638192,
                                  0.236926885056189087514264040719917363};
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  double s = w[0] * f(c);
  for (int j = 1; j < 3; ++j) s += w[j] * (f(c - h * x[j]) + f(c + h * x[j]));
  return s * h;
}

// Tables for the radial solution of -Delta u = f on B with u(1) = 0:
//   G(s) = int_0^s f(t) t^3 dt,   u(rho) = int_rho^1 G(s) s^{-3} ds.
struct RadialPoissonTables {
  RealFn f;
  std::vector<double> knots;
  std::vector<double> g;  // G at knots
  std::vector<double> u;  // u at knots

  std::size_t panel(double rho) const {
    auto it = std::upper_bound(knots.begin(), knots.end(), rho);
    std::size_t i = (it == knots.begin()) ? 0 : static_cast<std::size_t>(it - knots.begin()) - 1;
    return std::min(i, knots.size() - 2);
  }

  double G(double s) const {
    const std::size_t i = panel(s);
    if (s == knots[i]) return g[i];
    return g[i] + gauss_legendre5([&](double t) { return f(t) * t * t * t; }, knots[i], s);
  }

  double value(double rho) const {
    const std::size_t i = panel(rho);
    const double hi = knots[i + 1];
    if (rho == hi) return u[i + 1];
    return u[i + 1] + kronrod21([&](double s) { return G(s) / (s * s * s); }, rho, hi);
  }
};

}  // namespace detail

/// Radial solution of -Delta u = f in B, u = 0 on the boundary:
/// u(rho) = int_rho^1 s^{-3} int_0^s f(t) t^3 dt ds.  Panels follow the break
/// points of f when it has any (piecewise polynomial sources), otherwise a
/// uniform grid.  The result is checked a posteriori by a finite-difference
/// residual of the equation.
inline RadialProfile talenti_radial_solve(const RadialProfile& f, const QuadratureSpec& spec = {},
                                          std::size_t uniform_panels = 2048) {
  auto tables = std::make_shared<detail::RadialPoissonTables>();
  tables->f = f.eval;
  if (f.breaks.empty()) {
    for (std::size_t k = 0; k <= uniform_panels; ++k)
      tables->knots.push_back(static_cast<double>(k) / uniform_panels);
  } else {
    tables->knots = detail::interior_points(0.0, 1.0, f.breaks);
  }
  const std::size_t panels = tables->knots.size() - 1;
  tables->g.assign(panels + 1, 0.0);
  tables->u.assign(panels + 1, 0.0);

  QuadratureSpec panel_spec = spec;
  panel_spec.abs_tol = std::min(spec.abs_tol, 1e-18);
  for (std::size_t k = 0; k < panels; ++k) {
    const double a = tables->knots[k], b = tables->knots[k + 1];
    const double piece = integrate([&](double t) { return f.eval(t) * t * t * t; }, a, b, panel_spec).value;
    tables->g[k + 1] = tables->g[k] + piece;
  }
  for (std::size_t k = panels; k-- > 0;) {
    const double a = tables->knots[k], b = tables->knots[k + 1];
    const auto& tb = *tables;
    const double piece = integrate([&](double s) { return tb.G(s) / (s * s * s); }, a, b, panel_spec).value;
    tables->u[k] = tables->u[k + 1] + piece;
  }

  RadialProfile u;
  u.eval = [tables](double rho) { return tables->value(rho); };
  u.d1 = [tables](double rho) { return -tables->G(rho) / (rho * rho * rho); };
  u.d2 = [tables](double rho) {
    const double r4 = rho * rho * rho * rho;
    return 3.0 * tables->G(rho) / r4 - tables->f(rho);
  };
  u.boundary = BoundaryKind::Navier;
  u.description = "talenti(" + f.description + ")";

  // Residual of -u'' - 3u'/rho = f with u'' from central differences of u'
  // inside one panel.
  double f_sup = 0.0;
  for (int k = 0; k <= 1000; ++k) f_sup = std::max(f_sup, std::fabs(f.eval(std::max(k / 1000.0, 1e-9))));
  double residual = 0.0;
  for (int k = 1; k < 100; ++k) {
    const double rho = k / 100.0;
    const std::size_t i = tables->panel(rho);
    const double width = std::min(rho - tables->knots[i], tables->knots[i + 1] - rho);
    const double h = std::clamp(0.1 * width, 1e-9, 1e-6);
    const double second = (u.d1(rho + h) - u.d1(rho - h)) / (2.0 * h);
    residual = std::max(residual, std::fabs(-second - 3.0 * u.d1(rho) / rho - f.eval(rho)));
  }
  if (!std::isfinite(residual)) throw NonFinite("talenti_radial_solve: source term is not integrable");
  if (residual > 1e-6 * std::max(f_sup, 1e-300))
    throw NumericalError("talenti_radial_solve: residual check failed (" + std::to_string(residual) + ")");
  return u;
}

struct TalentiReport {
  bool holds = false;      // u >= v# - 1e-8 on every grid node
  double min_gap = 0.0;    // min over nodes of u - v#
  double f_l2 = 0.0;       // ||Delta v||_2 by quadrature
  double fsharp_l2 = 0.0;  // ||f#||_2 on the rearranged samples
  double l2_rel_diff = 0.0;
  bool l2_ok = false;
  double v_l2sq = 0.0;  // int_B v^2
  double u_l2sq = 0.0;  // int_B u^2
  bool mass_ok = false;
};

/// Runs the comparison chain: f = -Delta v, its rearrangement f#, the radial
/// solution u of -Delta u = f#, and checks u >= v# pointwise.
inline TalentiReport talenti_comparison_check(const RadialProfile& v, const QuadratureSpec& spec = {},
                                              std::size_t grid_size = 200000, int check_nodes = 2000) {
  RadialProfile f;
  f.eval = [v](double r) { return -(v.d2(r) + 3.0 * v.d1(r) / r); };
  f.d1 = [](double) { return std::numeric_limits<double>::quiet_NaN(); };
  f.d2 = f.d1;
  f.description = "-lap(" + v.description + ")";

  const auto f_re = rearrange(f, grid_size);
  const auto u = talenti_radial_solve(f_re.profile, spec);
  const auto v_sharp = decreasing_rearrangement(v, grid_size);

  TalentiReport rep;
  rep.min_gap = std::numeric_limits<double>::infinity();
  for (int k = 1; k <= check_nodes; ++k) {
    const double rho = static_cast<double>(k) / check_nodes;
    rep.min_gap = std::min(rep.min_gap, u.eval(rho) - v_sharp.eval(rho));
  }
  rep.holds = rep.min_gap >= -1e-8;

  rep.f_l2 = std::sqrt(laplacian_l2_sq(v, spec));
  rep.fsharp_l2 = std::sqrt(f_re.lp_integral(2.0));
  rep.l2_rel_diff = rep.f_l2 > 0.0 ? std::fabs(rep.f_l2 - rep.fsharp_l2) / rep.f_l2 : std::fabs(rep.fsharp_l2);
  rep.l2_ok = rep.l2_rel_diff <= 1e-8;

  rep.v_l2sq = weighted_lp_norm_p(v, 2.0, 0.0, spec);
  QuadratureSpec u_spec = spec;
  u_spec.max_subdivisions = std::max(spec.max_subdivisions, 20000);
  rep.u_l2sq = weighted_lp_norm_p(u, 2.0, 0.0, u_spec);
  rep.mass_ok = rep.v_l2sq <= rep.u_l2sq + 1e-8;
  return rep;
}

}  // namespace henon4

#pragma once

// Named radial test profiles, addressable from the command line.

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "henon4/moser.hpp"
#include "henon4/profile.hpp"

namespace henon4 {

namespace detail {

inline RadialProfile square_profile(const std::string& name) {
  constexpr double pi = std::numbers::pi;
  const auto N = BoundaryKind::Navier;
  const auto D = BoundaryKind::Dirichlet;
  if (name == "poly2")
    return profile_in_square([](double x) { return 1.0 - x; }, [](double) { return -1.0; },
                             [](double) { return 0.0; }, N, name);
  if (name == "poly4")
    return profile_in_square([](double x) { return (1.0 - x) * (1.0 - x); }, [](double x) { return -2.0 * (1.0 - x); },
                             [](double) { return 2.0; }, D, name);
  if (name == "poly6")
    return profile_in_square([](double x) { return std::pow(1.0 - x, 3); },
                             [](double x) { return -3.0 * (1.0 - x) * (1.0 - x); },
                             [](double x) { return 6.0 * (1.0 - x); }, D, name);
  if (name == "quartic")
    return profile_in_square([](double x) { return 1.0 - x * x; }, [](double x) { return -2.0 * x; },
                             [](double) { return -2.0; }, N, name);
  if (name == "sextic")
    return profile_in_square([](double x) { return 1.0 - x * x * x; }, [](double x) { return -3.0 * x * x; },
                             [](double x) { return -6.0 * x; }, N, name);
  if (name == "cosq")
    return profile_in_square([=](double x) { return std::cos(0.5 * pi * x); },
                             [=](double x) { return -0.5 * pi * std::sin(0.5 * pi * x); },
                             [=](double x) { return -0.25 * pi * pi * std::cos(0.5 * pi * x); }, N, name);
  if (name == "expq") {
    const double e1 = std::exp(-1.0);
    return profile_in_square([=](double x) { return std::exp(-x) - e1; }, [](double x) { return -std::exp(-x); },
                             [](double x) { return std::exp(-x); }, N, name);
  }
  if (name == "logcap") {
    const double d = 0.1;
    auto p = profile_in_square([=](double x) { return std::log((1.0 + d) / (x + d)); },
                               [=](double x) { return -1.0 / (x + d); },
                               [=](double x) { return 1.0 / ((x + d) * (x + d)); }, N, name);
    return p;
  }
  if (name == "ring") {
    // (1 - x)(1 + 4 exp(-((x - 1/2)/0.1)^2))
    const double x0 = 0.5, h = 0.1, a = 4.0;
    auto G = [=](double x) { return std::exp(-((x - x0) / h) * ((x - x0) / h)); };
    auto G1 = [=](double x) { return -2.0 * (x - x0) / (h * h) * G(x); };
    auto G2 = [=](double x) { return (4.0 * (x - x0) * (x - x0) / (h * h * h * h) - 2.0 / (h * h)) * G(x); };
    return profile_in_square([=](double x) { return (1.0 - x) * (1.0 + a * G(x)); },
                             [=](double x) { return -(1.0 + a * G(x)) + (1.0 - x) * a * G1(x); },
                             [=](double x) { return -2.0 * a * G1(x) + (1.0 - x) * a * G2(x); }, N, name);
  }
  if (name == "wave") {
    // (1 - x)(0.3 + sin(2 pi x)), sign-changing
    const double k = 2.0 * pi;
    return profile_in_square([=](double x) { return (1.0 - x) * (0.3 + std::sin(k * x)); },
                             [=](double x) { return -(0.3 + std::sin(k * x)) + (1.0 - x) * k * std::cos(k * x); },
                             [=](double x) { return -2.0 * k * std::cos(k * x) - (1.0 - x) * k * k * std::sin(k * x); },
                             N, name);
  }
  if (name == "cos2") {
    RadialProfile p;
    p.eval = [=](double r) { return 0.5 * (1.0 + std::cos(pi * r)); };
    p.d1 = [=](double r) { return -0.5 * pi * std::sin(pi * r); };
    p.d2 = [=](double r) { return -0.5 * pi * pi * std::cos(pi * r); };
    p.boundary = D;
    p.description = name;
    return p;
  }
  throw ValidationError("unknown profile '" + name + "'");
}

}  // namespace detail

/// Looks up a profile by name: one of corpus_base_names() or
/// "moser:<epsilon>:<navier|dirichlet>".
inline RadialProfile profile_by_name(const std::string& name) {
  if (name.rfind("moser:", 0) == 0) {
    const auto second = name.find(':', 6);
    if (second == std::string::npos) throw ValidationError("profile name must be moser:<eps>:<bc>");
    const std::string eps_text = name.substr(6, second - 6);
    const std::string bc_text = name.substr(second + 1);
    char* end = nullptr;
    const double eps = std::strtod(eps_text.c_str(), &end);
    if (end == eps_text.c_str() || *end != '\0') throw ValidationError("bad epsilon in profile name '" + name + "'");
    BoundaryKind bc;
    if (bc_text == "navier")
      bc = BoundaryKind::Navier;
    else if (bc_text == "dirichlet")
      bc = BoundaryKind::Dirichlet;
    else
      throw ValidationError("bad boundary kind in profile name '" + name + "'");
    try {
      auto p = moser_profile({eps, bc});
      p.description = name;
      return p;
    } catch (const DomainError& e) {
      throw ValidationError(e.what());
    }
  }
  return detail::square_profile(name);
}

inline std::vector<std::string> corpus_base_names() {
  return {"poly2", "poly4", "poly6", "quartic", "sextic", "cosq", "expq", "logcap", "ring", "wave", "cos2"};
}

/// The default test corpus: the closed-form profiles plus three Moser members.
inline std::vector<std::string> corpus_names() {
  auto names = corpus_base_names();
  names.emplace_back("moser:1e-2:navier");
  names.emplace_back("moser:1e-4:navier");
  names.emplace_back("moser:1e-4:dirichlet");
  return names;
}

/// Smooth Navier profile (1 - r^2) S(r^2) with
/// S(x) = c0 + c1 sin(k pi x) + c2 x^2 + c3 cos(pi x) and coefficients drawn
/// from a generator seeded by (seed, index).
inline RadialProfile seeded_smooth_profile(std::uint64_t seed, int index) {
  constexpr double pi = std::numbers::pi;
  std::mt19937_64 rng(seed ^ (0x9E3779B97F4A7C15ULL * static_cast<std::uint64_t>(index + 1)));
  auto uniform = [&rng](double lo, double hi) { return lo + (hi - lo) * static_cast<double>(rng() >> 11) * 0x1.0p-53; };
  const double c0 = uniform(0.2, 1.0);
  const double c1 = uniform(-1.0, 1.0);
  const double c2 = uniform(-1.0, 1.0);
  const double c3 = uniform(-0.5, 0.5);
  const double k = 1.0 + static_cast<double>(rng() % 3);
  auto S = [=](double x) { return c0 + c1 * std::sin(k * pi * x) + c2 * x * x + c3 * std::cos(pi * x); };
  auto S1 = [=](double x) { return c1 * k * pi * std::cos(k * pi * x) + 2.0 * c2 * x - c3 * pi * std::sin(pi * x); };
  auto S2 = [=](double x) {
    return -c1 * k * k * pi * pi * std::sin(k * pi * x) + 2.0 * c2 - c3 * pi * pi * std::cos(pi * x);
  };
  return profile_in_square([=](double x) { return (1.0 - x) * S(x); },
                           [=](double x) { return -S(x) + (1.0 - x) * S1(x); },
                           [=](double x) { return -2.0 * S1(x) + (1.0 - x) * S2(x); }, BoundaryKind::Navier,
                           "seeded:" + std::to_string(seed) + ":" + std::to_string(index));
}

}  // namespace henon4

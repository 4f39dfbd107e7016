#pragma once

// Command-line front end: argument and config-file parsing, validation, and
// dispatch of the experiments.

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "henon4/corpus.hpp"
#include "henon4/moser.hpp"
#include "henon4/report.hpp"
#include "henon4/suites.hpp"
#include "henon4/symmetry.hpp"

namespace henon4::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 2;
inline constexpr int kExitNumerical = 3;

struct RunConfig {
  std::string command;
  std::map<std::string, std::string> params;
  QuadratureSpec quadrature;
};

inline const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names{"verify-identities", "threshold-scan", "moser-blowup", "talenti-check",
                                              "symmetry-sweep"};
  return names;
}

inline const std::set<std::string>& allowed_keys() {
  static const std::set<std::string> keys{"alpha", "sigma",   "beta",   "m",      "epsilons", "alphas",    "bump",
                                          "seed",  "out_dir", "format", "bc",     "rel_tol",  "max_subdiv"};
  return keys;
}

// ---------------------------------------------------------------------------
// Value parsing

inline std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) out.push_back(trim(cur));
  return out;
}

inline double parse_real(const std::string& text, const std::string& key) {
  const std::string t = trim(text);
  char* end = nullptr;
  const double v = std::strtod(t.c_str(), &end);
  if (t.empty() || *end != '\0' || !std::isfinite(v))
    throw ValidationError("invalid number for " + key + ": '" + text + "'");
  return v;
}

inline long long parse_integer(const std::string& text, const std::string& key) {
  const std::string t = trim(text);
  char* end = nullptr;
  const long long v = std::strtoll(t.c_str(), &end, 10);
  if (t.empty() || *end != '\0') throw ValidationError("invalid integer for " + key + ": '" + text + "'");
  return v;
}

/// "32pi2", "16pi2", "pi2", "sigma_alpha", "0.8*sigma_alpha" or a plain number.
inline double parse_sigma(const std::string& token, double alpha) {
  std::string t = trim(token);
  double coef = 1.0;
  const auto star = t.find('*');
  if (star != std::string::npos) {
    coef = parse_real(t.substr(0, star), "sigma coefficient");
    t = trim(t.substr(star + 1));
  }
  double base;
  if (t == "sigma_alpha") {
    base = FunctionalParams{alpha, 1.0, std::nullopt}.sigma_alpha();
  } else if (t.size() >= 3 && t.compare(t.size() - 3, 3, "pi2") == 0) {
    const std::string num = t.substr(0, t.size() - 3);
    base = (num.empty() ? 1.0 : parse_real(num, "sigma")) * std::numbers::pi * std::numbers::pi;
  } else {
    base = parse_real(t, "sigma");
  }
  const double sigma = coef * base;
  if (!(sigma > 0.0) || !std::isfinite(sigma)) throw ValidationError("sigma must be finite and > 0");
  return sigma;
}

/// "start:end:decade", "start:end:<k>" (k decades per step) or a comma list.
inline std::vector<double> parse_epsilons(const std::string& text) {
  const std::string t = trim(text);
  std::vector<double> out;
  if (t.find(':') != std::string::npos) {
    const auto parts = split(t, ':');
    if (parts.size() != 3) throw ValidationError("epsilons must look like start:end:decade");
    const double start = parse_real(parts[0], "epsilons start");
    const double end = parse_real(parts[1], "epsilons end");
    double step = 1.0;
    if (parts[2] != "decade") step = parse_real(parts[2], "epsilons step");
    if (!(start > 0.0 && end > 0.0 && end < start)) throw ValidationError("epsilons need 0 < end < start");
    if (!(step > 0.0)) throw ValidationError("epsilons step must be positive");
    const double e0 = std::log10(start);
    const bool exact = std::fabs(e0 - std::round(e0)) < 1e-12 && std::fabs(step - std::round(step)) < 1e-12;
    for (int j = 0; j < 100000; ++j) {
      double v;
      if (exact) {
        const long long ex = std::llround(e0) - j * std::llround(step);
        v = std::strtod(("1e" + std::to_string(ex)).c_str(), nullptr);
      } else {
        v = start * std::pow(10.0, -step * j);
      }
      if (v < end * (1.0 - 1e-12)) break;
      out.push_back(v);
    }
  } else {
    for (const auto& item : split(t, ',')) out.push_back(parse_real(item, "epsilons"));
  }
  if (out.empty()) throw ValidationError("empty epsilon list");
  return out;
}

inline std::vector<double> parse_list(const std::string& text, const std::string& key) {
  std::vector<double> out;
  for (const auto& item : split(text, ',')) {
    if (item.empty()) continue;
    out.push_back(parse_real(item, key));
  }
  if (out.empty()) throw ValidationError("empty list for " + key);
  return out;
}

inline std::optional<int> parse_m(const std::string& text) {
  const std::string t = trim(text);
  if (t.empty() || t == "none" || t == "absent") return std::nullopt;
  const long long v = parse_integer(t, "m");
  if (v < 0 || v > 64) throw ValidationError("m must be a natural number");
  return static_cast<int>(v);
}

inline BoundaryKind parse_bc(const std::string& text) {
  const std::string t = trim(text);
  if (t == "navier") return BoundaryKind::Navier;
  if (t == "dirichlet") return BoundaryKind::Dirichlet;
  throw ValidationError("bc must be navier or dirichlet");
}

inline Format parse_format(const std::string& text) {
  const std::string t = trim(text);
  if (t == "csv") return Format::Csv;
  if (t == "json") return Format::Json;
  throw ValidationError("format must be csv or json");
}

// ---------------------------------------------------------------------------
// Configuration sources

/// Reads a flat JSON object of parameters; values may be numbers, strings or
/// arrays of numbers (joined with commas).
inline std::map<std::string, std::string> load_config_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ValidationError("cannot read config file " + path);
  nlohmann::json j;
  try {
    f >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError("config file " + path + " is not valid JSON: " + e.what());
  }
  if (!j.is_object()) throw ValidationError("config file must hold a JSON object");
  std::map<std::string, std::string> out;
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (!allowed_keys().count(it.key())) throw ValidationError("unknown config key '" + it.key() + "'");
    const auto& v = it.value();
    if (v.is_string()) {
      out[it.key()] = v.get<std::string>();
    } else if (v.is_number_integer()) {
      out[it.key()] = std::to_string(v.get<long long>());
    } else if (v.is_number()) {
      out[it.key()] = format_double(v.get<double>());
    } else if (v.is_array()) {
      std::string s;
      for (const auto& e : v) {
        if (!e.is_number()) throw ValidationError("config key '" + it.key() + "' must hold numbers");
        if (!s.empty()) s += ',';
        s += e.is_number_integer() ? std::to_string(e.get<long long>()) : format_double(e.get<double>());
      }
      out[it.key()] = s;
    } else if (v.is_null()) {
      out[it.key()] = "";
    } else {
      throw ValidationError("config key '" + it.key() + "' has an unsupported type");
    }
  }
  return out;
}

/// Result of parsing argv: either a configuration or an early exit (help,
/// usage error) with its code.
struct ParseOutcome {
  std::optional<RunConfig> config;
  int exit_code = kExitOk;
};

inline ParseOutcome parse_command_line(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Weighted biharmonic exponential functionals on the unit ball of R^4", "henon4"};
  std::string command, config_path;
  std::map<std::string, std::string> flags;
  struct FlagSpec {
    const char* name;
    const char* key;
    const char* help;
  };
  static const FlagSpec specs[] = {
      {"--alpha", "alpha", "weight exponent"},
      {"--sigma", "sigma", "exponential coefficient: number, 32pi2, sigma_alpha, 0.8*sigma_alpha"},
      {"--beta", "beta", "sigma / sigma_alpha for moser-blowup"},
      {"--m", "m", "truncation order (omit or 'none' for the full functional)"},
      {"--epsilons", "epsilons", "start:end:decade, start:end:<k> or a comma list"},
      {"--alphas", "alphas", "comma list of weight exponents"},
      {"--bump", "bump", "translated bump: poly4 or cos2"},
      {"--seed", "seed", "random seed"},
      {"--out-dir", "out_dir", "output directory (default $HENON4_OUT_DIR or .)"},
      {"--format", "format", "csv or json"},
      {"--bc", "bc", "navier or dirichlet (moser-blowup)"},
      {"--rel-tol", "rel_tol", "quadrature relative tolerance"},
      {"--max-subdiv", "max_subdiv", "quadrature subdivision budget"},
  };
  std::vector<std::pair<CLI::Option*, const char*>> options;
  std::map<std::string, std::string> raw;
  for (const auto& s : specs) {
    auto* opt = app.add_option(s.name, raw[s.key], s.help);
    options.emplace_back(opt, s.key);
  }
  app.add_option("command", command, "experiment to run")->required()->check(CLI::IsMember(command_names()));
  app.add_option("--config", config_path, "JSON file with parameters (flags take precedence)");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return {std::nullopt, code == 0 ? kExitOk : kExitInput};
  }
  RunConfig cfg;
  cfg.command = command;
  if (!config_path.empty()) cfg.params = load_config_file(config_path);
  for (const auto& [opt, key] : options)
    if (opt->count() > 0) cfg.params[key] = raw[key];
  return {cfg, kExitOk};
}

// ---------------------------------------------------------------------------
// Dispatch

namespace detail {

inline std::string param(const RunConfig& cfg, const std::string& key, const std::string& fallback) {
  auto it = cfg.params.find(key);
  return it == cfg.params.end() ? fallback : it->second;
}

inline QuadratureSpec resolve_quadrature(const RunConfig& cfg) {
  QuadratureSpec q = cfg.quadrature;
  if (cfg.params.count("rel_tol")) q.rel_tol = parse_real(cfg.params.at("rel_tol"), "rel_tol");
  if (cfg.params.count("max_subdiv")) {
    const long long v = parse_integer(cfg.params.at("max_subdiv"), "max_subdiv");
    if (v < 1 || v > 100000000) throw ValidationError("max_subdiv out of range");
    q.max_subdivisions = static_cast<int>(v);
  }
  q.validate();
  return q;
}

inline std::filesystem::path resolve_out_dir(const RunConfig& cfg) {
  if (cfg.params.count("out_dir")) return cfg.params.at("out_dir");
  if (const char* env = std::getenv("HENON4_OUT_DIR"); env && *env) return env;
  return ".";
}

inline std::uint64_t resolve_seed(const RunConfig& cfg) {
  const long long s = parse_integer(param(cfg, "seed", "7"), "seed");
  if (s < 0) throw ValidationError("seed must be >= 0");
  return static_cast<std::uint64_t>(s);
}

inline double resolve_alpha(const RunConfig& cfg, const std::string& fallback) {
  const double a = parse_real(param(cfg, "alpha", fallback), "alpha");
  if (!(a >= 0.0)) throw ValidationError("alpha must be >= 0");
  return a;
}

inline std::vector<double> resolve_alphas(const RunConfig& cfg, const std::string& fallback) {
  auto xs = parse_list(param(cfg, "alphas", fallback), "alphas");
  for (double a : xs)
    if (!(a >= 0.0)) throw ValidationError("alphas must be >= 0");
  return xs;
}

inline const char* pass_fail(bool ok) { return ok ? "PASS" : "FAIL"; }

inline void summarize_checks(const CheckTable& checks, std::ostream& out) {
  std::map<std::string, std::pair<int, int>> tally;
  for (const auto& row : checks.table.rows) {
    auto& t = tally[std::get<std::string>(row[0])];
    ++t.first;
    if (std::get<bool>(row[4])) ++t.second;
  }
  for (const auto& [name, t] : tally)
    out << "  " << pass_fail(t.first == t.second) << "  " << name << "  " << t.second << "/" << t.first << "\n";
}

inline int cmd_verify_identities(const RunConfig& cfg, std::ostream& out) {
  const auto q = resolve_quadrature(cfg);
  const auto alphas = resolve_alphas(cfg, "16,64");
  const Format fmt = parse_format(param(cfg, "format", "csv"));
  const auto dir = resolve_out_dir(cfg);

  CheckTable checks;
  const auto names = corpus_names();
  energy_identity_checks(checks, names, alphas, q);
  bound_checks(checks, names, q);
  functional_identity_checks(checks, names, q);

  emit(checks.table, fmt, dir / (std::string("verify-identities.") + (fmt == Format::Csv ? "csv" : "json")));
  out << "verify-identities: " << names.size() << " profiles, " << checks.table.rows.size() << " checks\n";
  summarize_checks(checks, out);
  return checks.all_pass() ? kExitOk : kExitNumerical;
}

inline int cmd_threshold_scan(const RunConfig& cfg, std::ostream& out) {
  const auto q = resolve_quadrature(cfg);
  const auto alphas = resolve_alphas(cfg, "0,1,4,16");
  const std::string sigma_token = param(cfg, "sigma", "0.9*sigma_alpha");
  const auto m = parse_m(param(cfg, "m", ""));
  const Format fmt = parse_format(param(cfg, "format", "csv"));
  const auto dir = resolve_out_dir(cfg);
  std::vector<double> sigmas;
  for (double a : alphas) {
    const double s = parse_sigma(sigma_token, a);
    const FunctionalParams p{a, s, m};
    p.validate();
    if (!(s < p.sigma_alpha()))
      throw ThresholdError("sigma = " + format_double(s) + " is not below sigma_alpha = " +
                           format_double(p.sigma_alpha()) + " at alpha = " + format_double(a));
    sigmas.push_back(s);
  }

  const auto rows = threshold_scan(alphas, sigmas, m, corpus_names(), q);
  emit(henon4::to_table(rows), fmt, dir / (std::string("threshold-scan.") + (fmt == Format::Csv ? "csv" : "json")));
  bool ok = true;
  out << "threshold-scan: m = " << (m ? std::to_string(*m) : "absent") << "\n";
  for (const auto& r : rows) {
    const bool pass = r.max_corpus_value <= r.series_bound * (1.0 + 1e-8);
    ok = ok && pass;
    out << "  " << pass_fail(pass) << "  alpha=" << r.alpha << "  max corpus value " << r.max_corpus_value << " ("
        << r.argmax << ") <= series bound " << r.series_bound << "\n";
  }
  return ok ? kExitOk : kExitNumerical;
}

inline int cmd_moser_blowup(const RunConfig& cfg, std::ostream& out) {
  const auto q = resolve_quadrature(cfg);
  const double alpha = resolve_alpha(cfg, "0");
  const double beta = parse_real(param(cfg, "beta", "1.2"), "beta");
  if (!(beta > 0.0)) throw ValidationError("beta must be > 0");
  const auto eps = parse_epsilons(param(cfg, "epsilons", "1e-2:1e-10:decade"));
  const auto m = parse_m(param(cfg, "m", ""));
  const BoundaryKind bc = parse_bc(param(cfg, "bc", "navier"));
  const Format fmt = parse_format(param(cfg, "format", "csv"));
  const auto dir = resolve_out_dir(cfg);
  for (std::size_t i = 0; i < eps.size(); ++i) {
    try {
      MoserParams{eps[i], bc}.validate();
    } catch (const DomainError& e) {
      throw ValidationError(e.what());
    }
    if (i > 0 && !(eps[i] < eps[i - 1])) throw ValidationError("epsilons must be strictly decreasing");
  }

  const auto ex = blowup_scan(alpha, beta, eps, bc, m, q);
  std::vector<MoserDiagnostic> diags;
  for (double e : eps) {
    const auto d = moser_diagnostics(e);
    diags.insert(diags.end(), d.begin(), d.end());
  }
  const std::string ext = fmt == Format::Csv ? "csv" : "json";
  emit(ex, fmt, dir / ("moser-blowup." + ext));
  emit(to_table(diags), fmt, dir / ("moser-diagnostics." + ext));

  out << "moser-blowup: alpha=" << alpha << " beta=" << beta << " bc=" << to_string(bc)
      << " m=" << (m ? std::to_string(*m) : "absent") << "  verdict " << to_string(ex.verdict) << "\n";
  bool ok = true;
  if (beta > 1.0) {
    ok = ex.verdict == ThresholdVerdict::Diverging;
    out << "  " << pass_fail(ok) << "  diverging above threshold\n";
    if (!m && bc == BoundaryKind::Navier) {
      bool minor = true;
      for (std::size_t i = 0; i < eps.size(); ++i) minor = minor && ex.log_values[i] >= ex.lower_bound_exponent[i] - 1.0;
      out << "  " << pass_fail(minor) << "  log values above the blowup exponent minus 1\n";
      ok = ok && minor;
    }
  } else if (beta < 1.0) {
    ok = ex.verdict == ThresholdVerdict::Bounded;
    out << "  " << pass_fail(ok) << "  bounded below threshold\n";
    FunctionalParams p{alpha, beta * FunctionalParams{alpha, 1.0, m}.sigma_alpha(), m};
    const double bound = series_upper_bound(p, 1.0);
    bool dominated = true;
    for (double v : ex.values) dominated = dominated && v <= bound + 1e-8;
    out << "  " << pass_fail(dominated) << "  values <= series bound " << bound << "\n";
    ok = ok && dominated;
  }
  return ok ? kExitOk : kExitNumerical;
}

inline int cmd_talenti_check(const RunConfig& cfg, std::ostream& out) {
  const auto q = resolve_quadrature(cfg);
  const auto seed = resolve_seed(cfg);
  const Format fmt = parse_format(param(cfg, "format", "csv"));
  const auto dir = resolve_out_dir(cfg);

  const auto rows = talenti_suite(seed, 10, q);
  emit(henon4::to_table(rows), fmt, dir / (std::string("talenti-check.") + (fmt == Format::Csv ? "csv" : "json")));
  bool ok = true;
  out << "talenti-check: seed " << seed << "\n";
  for (const auto& r : rows) {
    const bool pass = r.report.holds && r.report.l2_ok && r.report.mass_ok;
    ok = ok && pass;
    out << "  " << pass_fail(pass) << "  " << r.profile << "  min gap " << r.report.min_gap << "  L2 drift "
        << r.report.l2_rel_diff << "\n";
  }
  return ok ? kExitOk : kExitNumerical;
}

inline int cmd_symmetry_sweep(const RunConfig& cfg, std::ostream& out) {
  const auto q = resolve_quadrature(cfg);
  const auto alphas = resolve_alphas(cfg, "16,32,64,128,256,512");
  const auto m = parse_m(param(cfg, "m", "1"));
  if (!m || *m < 1) throw ValidationError("symmetry-sweep requires m >= 1");
  const double sigma = parse_sigma(param(cfg, "sigma", "32pi2"), alphas.front());
  if (sigma > kAdams * (1.0 + 1e-15)) throw ValidationError("symmetry-sweep requires sigma <= 32pi2");
  if (alphas.size() < 4) throw ValidationError("symmetry-sweep needs at least four alphas");
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    if (!(alphas[i] >= 4.0)) throw ValidationError("symmetry-sweep needs every alpha >= 4");
    if (i > 0 && !(alphas[i] > alphas[i - 1])) throw ValidationError("alphas must increase strictly");
  }
  const std::string bump_kind = param(cfg, "bump", "poly4");
  if (bump_kind != "poly4" && bump_kind != "cos2") throw ValidationError("bump must be poly4 or cos2");
  RadialSearchOptions opts;
  opts.seed = resolve_seed(cfg);
  const Format fmt = parse_format(param(cfg, "format", "json"));
  const auto dir = resolve_out_dir(cfg);

  const auto bump = make_bump(bump_kind, q);
  const auto rep = crossover_detect({0.0, sigma, m}, alphas, bump, opts, q);
  emit(rep, fmt, dir / (std::string("symmetry-sweep.") + (fmt == Format::Csv ? "csv" : "json")));

  out << "symmetry-sweep: sigma=" << sigma << " m=" << *m << " bump=" << bump_kind << " seed=" << opts.seed << "\n";
  for (const auto& r : rep.rows)
    out << "  alpha=" << r.alpha << "  bump " << r.bump_exact << "  radial " << r.radial_max << "  log gap "
        << r.log_gap << "\n";
  out << "  slopes: bump " << rep.bump_fit.slope << ", radial " << rep.radial_fit.slope << "\n";
  out << "  alpha*: " << (rep.alpha_star ? format_double(*rep.alpha_star) : std::string("not-found-on-grid"))
      << " (numerical crossover)\n";
  return kExitOk;
}

}  // namespace detail

/// Runs one experiment.  Returns 0 on success, 2 for invalid input and 3 for
/// numerical failures or failed checks.
inline int run(const RunConfig& cfg, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  try {
    for (const auto& [key, value] : cfg.params)
      if (!allowed_keys().count(key)) throw ValidationError("unknown parameter '" + key + "'");
    if (cfg.command == "verify-identities") return detail::cmd_verify_identities(cfg, out);
    if (cfg.command == "threshold-scan") return detail::cmd_threshold_scan(cfg, out);
    if (cfg.command == "moser-blowup") return detail::cmd_moser_blowup(cfg, out);
    if (cfg.command == "talenti-check") return detail::cmd_talenti_check(cfg, out);
    if (cfg.command == "symmetry-sweep") return detail::cmd_symmetry_sweep(cfg, out);
    throw ValidationError("unknown command '" + cfg.command + "'");
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  }
}

inline int main_entry(int argc, const char* const* argv, std::ostream& out = std::cout,
                      std::ostream& err = std::cerr) {
  try {
    const auto parsed = parse_command_line(argc, argv, out, err);
    if (!parsed.config) return parsed.exit_code;
    return run(*parsed.config, out, err);
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  }
}

}  // namespace henon4::cli

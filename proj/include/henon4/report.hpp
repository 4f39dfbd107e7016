#pragma once

// Tabular results and their CSV / JSON serialization.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "henon4/errors.hpp"
#include "henon4/moser.hpp"
#include "henon4/symmetry.hpp"

namespace henon4 {

using Cell = std::variant<double, std::int64_t, std::string, bool>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

enum class Format { Csv, Json };

/// 17 significant digits, '.' decimal point, no grouping.
inline std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace detail {

inline std::string csv_field(const Cell& c) {
  if (const auto* d = std::get_if<double>(&c)) return format_double(*d);
  if (const auto* i = std::get_if<std::int64_t>(&c)) return std::to_string(*i);
  if (const auto* b = std::get_if<bool>(&c)) return *b ? "true" : "false";
  const auto& s = std::get<std::string>(c);
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char ch : s) {
    if (ch == '"') q += '"';
    q += ch;
  }
  return q + "\"";
}

inline nlohmann::ordered_json json_cell(const Cell& c) {
  if (const auto* d = std::get_if<double>(&c)) {
    if (std::isfinite(*d)) return *d;
    return format_double(*d);
  }
  if (const auto* i = std::get_if<std::int64_t>(&c)) return *i;
  if (const auto* b = std::get_if<bool>(&c)) return *b;
  return std::get<std::string>(c);
}

inline nlohmann::ordered_json json_number(double v) {
  if (std::isfinite(v)) return v;
  return format_double(v);
}

}  // namespace detail

inline std::string to_csv(const Table& t) {
  std::string out;
  for (std::size_t i = 0; i < t.columns.size(); ++i) {
    if (i) out += ',';
    out += detail::csv_field(t.columns[i]);
  }
  out += '\n';
  for (const auto& row : t.rows) {
    if (row.size() != t.columns.size()) throw ValidationError("to_csv: row width does not match header");
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += detail::csv_field(row[i]);
    }
    out += '\n';
  }
  return out;
}

inline nlohmann::ordered_json to_json(const Table& t) {
  auto rows = nlohmann::ordered_json::array();
  for (const auto& row : t.rows) {
    nlohmann::ordered_json obj = nlohmann::ordered_json::object();
    for (std::size_t i = 0; i < t.columns.size(); ++i) obj[t.columns[i]] = detail::json_cell(row.at(i));
    rows.push_back(std::move(obj));
  }
  return rows;
}

inline Table to_table(const ThresholdExperiment& ex) {
  Table t{{"epsilon", "norm_sq", "value", "log_value", "lower_bound_exponent"}, {}};
  for (std::size_t i = 0; i < ex.epsilons.size(); ++i)
    t.rows.push_back({ex.epsilons[i], ex.norm_sq[i], ex.values[i], ex.log_values[i], ex.lower_bound_exponent[i]});
  return t;
}

inline nlohmann::ordered_json to_json(const ThresholdExperiment& ex) {
  nlohmann::ordered_json j;
  j["alpha"] = ex.alpha;
  j["beta"] = ex.beta;
  j["bc"] = to_string(ex.bc);
  j["m"] = ex.m ? nlohmann::ordered_json(*ex.m) : nlohmann::ordered_json(nullptr);
  j["verdict"] = to_string(ex.verdict);
  j["rows"] = to_json(to_table(ex));
  return j;
}

inline Table to_table(const std::vector<MoserDiagnostic>& diags) {
  Table t{{"epsilon", "member", "seam_radius", "left_value", "right_value", "jump"}, {}};
  for (const auto& d : diags) t.rows.push_back({d.epsilon, d.member, d.seam_radius, d.left_value, d.right_value, d.jump});
  return t;
}

inline Table to_table(const SweepReport& rep) {
  Table t{{"alpha", "bump_exact", "bump_paper_bound", "radial_max", "radial_profile_id", "log_gap"}, {}};
  for (const auto& r : rep.rows)
    t.rows.push_back({r.alpha, r.bump_exact, r.bump_paper_bound, r.radial_max, r.radial_profile_id, r.log_gap});
  return t;
}

inline nlohmann::ordered_json to_json(const SweepReport& rep) {
  nlohmann::ordered_json j;
  j["sigma"] = rep.sigma;
  j["m"] = rep.m;
  j["bump"] = rep.bump;
  j["kappa"] = rep.kappa;
  j["seed"] = rep.seed;
  auto rows = nlohmann::ordered_json::array();
  for (const auto& r : rep.rows) {
    nlohmann::ordered_json o;
    o["alpha"] = r.alpha;
    o["bump_exact"] = detail::json_number(r.bump_exact);
    o["bump_paper_bound"] = detail::json_number(r.bump_paper_bound);
    o["radial_max"] = detail::json_number(r.radial_max);
    o["radial_profile_id"] = r.radial_profile_id;
    o["log_gap"] = detail::json_number(r.log_gap);
    rows.push_back(std::move(o));
  }
  j["rows"] = std::move(rows);
  j["fitted_slopes"] = {{"bump", rep.bump_fit.slope}, {"radial", rep.radial_fit.slope}};
  j["fit_max_residuals"] = {{"bump", rep.bump_fit.max_residual}, {"radial", rep.radial_fit.max_residual}};
  if (rep.alpha_star) {
    j["alpha_star"] = *rep.alpha_star;
  } else {
    j["alpha_star"] = "not-found-on-grid";
  }
  j["alpha_star_kind"] = "numerical crossover";
  j["gap_increasing"] = rep.gap_increasing;
  return j;
}

/// Writes text to path, creating parent directories as needed.
inline void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::error_code ec;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
  if (ec) throw IoError("cannot create directory " + path.parent_path().string() + ": " + ec.message());
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError("cannot open " + path.string() + " for writing");
  f << text;
  f.close();
  if (!f) throw IoError("failed writing " + path.string());
}

inline std::string render(const Table& t, Format fmt) {
  return fmt == Format::Csv ? to_csv(t) : to_json(t).dump(2) + "\n";
}

inline std::string render(const SweepReport& rep, Format fmt) {
  return fmt == Format::Csv ? to_csv(to_table(rep)) : to_json(rep).dump(2) + "\n";
}

inline std::string render(const ThresholdExperiment& ex, Format fmt) {
  return fmt == Format::Csv ? to_csv(to_table(ex)) : to_json(ex).dump(2) + "\n";
}

template <class Report>
void emit(const Report& report, Format fmt, const std::filesystem::path& path) {
  write_text_file(path, render(report, fmt));
}

}  // namespace henon4

#pragma once

// Command implementations behind the psdec binary. Each command returns the
// document to print and the process exit code; argument parsing lives in
// tools/psdec.cpp.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "psdec/closed_forms.hpp"
#include "psdec/cone.hpp"
#include "psdec/gl3_oracle.hpp"
#include "psdec/report.hpp"
#include "psdec/spectral.hpp"

namespace psdec::cli {

inline constexpr int exit_ok = 0;
inline constexpr int exit_usage = 1;
inline constexpr int exit_verification = 3;

/// Bad flags or values; mapped to exit code 1.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct CommandResult {
  json document;
  int exit_code = exit_ok;
};

enum class Format { json, csv, table };

inline Format parse_format(const std::string& s) {
  if (s == "json") return Format::json;
  if (s == "csv") return Format::csv;
  if (s == "table") return Format::table;
  throw UsageError("unknown format '" + s + "' (json, csv, table)");
}

inline ConePoint parse_point(const std::string& s) {
  std::istringstream in(s);
  std::vector<int> v;
  std::string part;
  while (std::getline(in, part, ',')) {
    try {
      std::size_t used = 0;
      v.push_back(std::stoi(part, &used));
      if (used != part.size()) throw std::invalid_argument(part);
    } catch (const std::exception&) {
      throw UsageError("expected c1,c2,c3 but got '" + s + "'");
    }
  }
  if (v.size() != 3) throw UsageError("expected c1,c2,c3 but got '" + s + "'");
  const ConePoint c{v[0], v[1], v[2]};
  if (!in_cone(c)) throw UsageError("point " + c.to_string() + " is not in the cone");
  return c;
}

inline json poly_json(const Poly& p) {
  const auto [lo, coeffs] = p.coefficient_list();
  return {{"text", p.to_string()}, {"low_exponent", lo}, {"coefficients", coeffs}};
}

/// A count or dimension: the integer at q, or the polynomial in symbolic mode.
inline json value_json(const Poly& p, std::optional<std::int64_t> q) {
  if (q) return p.evaluate(*q);
  return poly_json(p);
}

inline void require_q(std::optional<std::int64_t> q, bool symbolic) {
  if (!symbolic && !q) throw UsageError("--q is required unless --symbolic is given");
  if (q && *q < 2) throw UsageError("--q must be at least 2");
}

inline CommandResult cmd_cone(int max_level, bool classes) {
  if (max_level < 0 || max_level > catalogue_level_limit)
    throw UsageError("--max-level must lie in [0, " + std::to_string(catalogue_level_limit) + "]");
  json entries = json::array();
  for (int level = 0; level <= max_level; ++level) {
    if (classes) {
      for (const auto& cls : classes_at_level(level)) {
        const auto inv = invariants(cls.front());
        json members = json::array();
        for (const auto& c : cls) members.push_back(c.to_string());
        entries.push_back({{"representative", canonical_representative(cls.front()).to_string()},
                           {"members", members},
                           {"mu", inv.mu},
                           {"kappa", inv.kappa},
                           {"level", inv.level},
                           {"region", to_string(region(cls.front()))},
                           {"class_size", class_size(inv.mu, inv.kappa, inv.level)}});
      }
    } else {
      for (const auto& c : enumerate_level(level)) {
        const auto inv = invariants(c);
        entries.push_back({{"c", c.to_string()},
                           {"mu", inv.mu},
                           {"kappa", inv.kappa},
                           {"level", inv.level},
                           {"region", to_string(region(c))},
                           {"class_size", class_size(inv.mu, inv.kappa, inv.level)}});
      }
    }
  }
  return {{{"command", "cone"}, {"entries", entries}}};
}

inline CommandResult cmd_decompose(const ConePoint& c, std::optional<std::int64_t> q, bool symbolic) {
  require_q(q, symbolic);
  const auto inv = invariants(c);
  const auto k = constituents_of_class(c);
  const auto label = dimension_label(c);
  std::optional<std::int64_t> at;
  if (!symbolic) at = q;
  json e{{"c", c.to_string()},
         {"representative", canonical_representative(c).to_string()},
         {"mu", inv.mu},
         {"kappa", inv.kappa},
         {"level", inv.level},
         {"region", to_string(region(c))},
         {"family", to_string(family(c))},
         {"dimension_family", to_string(label.family)},
         {"dimension_exponent", label.n},
         {"class_size", class_size(inv.mu, inv.kappa, inv.level)},
         {"count", value_json(k.count, at)},
         {"dim", value_json(k.dim, at)}};
  if (at && k.count.evaluate(*at) == 0) e["note"] = "V_c = 0";
  if (at) e["q"] = *at;
  return {{{"command", "decompose"}, {"entries", json::array({e})}}};
}

inline CommandResult cmd_zeta(std::optional<std::int64_t> q, int max_n, bool symbolic, bool aggregate) {
  require_q(q, symbolic);
  if (max_n < 0 || max_n > zeta_n_limit)
    throw UsageError("--max-n must lie in [0, " + std::to_string(zeta_n_limit) + "]");
  json entries = json::array();
  if (aggregate) {
    if (!q) throw UsageError("--aggregate needs a numeric --q");
    for (const auto& [dim, count] : dimension_aggregate(max_n, *q))
      entries.push_back({{"dimension", dim}, {"count", count}});
    return {{{"command", "zeta"}, {"q", *q}, {"aggregate", true}, {"entries", entries}}};
  }
  std::optional<std::int64_t> at;
  if (!symbolic) at = q;
  bool failed = false;
  for (const auto& t : zeta_terms(max_n)) {
    const auto status = zeta_status(t);
    failed = failed || status == Status::fail;
    json row{{"family", to_string(t.family)},
             {"n", t.n},
             {"catalogue", value_json(t.catalogue_count, at)},
             {"printed", value_json(t.printed_count, at)},
             {"agrees", t.agrees},
             {"status", to_string(status)}};
    if (t.family == DimFamily::eta2) {
      json s = json::array();
      for (int m = 0; m <= t.n / 2; ++m)
        s.push_back({{"m", m}, {"enumerated", enumerated_s_size(m, t.n)}, {"printed", printed_s_size(m, t.n)}});
      row["s_sizes"] = s;
    }
    entries.push_back(row);
  }
  json doc{{"command", "zeta"}, {"symbolic", symbolic}, {"entries", entries}};
  if (at) doc["q"] = *at;
  return {doc, failed ? exit_verification : exit_ok};
}

struct VerifyOptions {
  std::string suite = "all";
  std::uint32_t p = 3;
  int m = 1;
  int delta_exp = 0;
  std::uint64_t seed = 1;
  Backend backend = Backend::zmod;
  ConePoint c{2, 2, 3};
};

inline CommandResult cmd_verify(const VerifyOptions& o) {
  if (o.suite != "group" && o.suite != "gl3" && o.suite != "all")
    throw UsageError("unknown suite '" + o.suite + "' (group, gl3, all)");
  if (!is_prime(o.p)) throw UsageError("--p must be prime");
  if (o.m < 1) throw UsageError("--m must be at least 1");
  if (o.delta_exp < 0) throw UsageError("--delta-exp must be non-negative");
  std::vector<Report> reports;
  if (o.suite == "group" || o.suite == "all") {
    auto g = group_suite(o.backend, o.p, o.m, o.delta_exp);
    reports.insert(reports.end(), g.begin(), g.end());
  }
  if (o.suite == "gl3" || o.suite == "all") {
    if (invariants(o.c).mu < o.m) throw UsageError("gl3 suite needs mu(c) >= m");
    if (o.backend != Backend::zmod) throw UsageError("the gl3 suite works over Z/p^l only");
    Gl3Params prm{o.p, o.c, o.m, o.c.c3, o.seed};
    auto g = gl3_suite(prm);
    reports.insert(reports.end(), g.begin(), g.end());
  }
  json doc{{"command", "verify"}, {"suite", o.suite}, {"reports", reports}};
  return {doc, all_ok(reports) ? exit_ok : exit_verification};
}

namespace detail {

inline std::string cell(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_object() && v.contains("text")) return v["text"].get<std::string>();
  return v.dump();
}

inline std::vector<std::string> columns(const json& rows) {
  std::vector<std::string> cols;
  for (const auto& r : rows)
    for (const auto& [k, _] : r.items())
      if (std::find(cols.begin(), cols.end(), k) == cols.end()) cols.push_back(k);
  return cols;
}

inline std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

}  // namespace detail

/// Renders a command document. csv and table print one row per entry or report.
inline std::string render(const json& doc, Format f) {
  if (f == Format::json) return doc.dump(2) + "\n";
  const json rows = doc.contains("reports") ? doc["reports"] : doc.value("entries", json::array());
  const auto cols = detail::columns(rows);
  std::vector<std::vector<std::string>> cells;
  for (const auto& r : rows) {
    std::vector<std::string> line;
    for (const auto& c : cols) line.push_back(r.contains(c) ? detail::cell(r[c]) : "");
    cells.push_back(std::move(line));
  }
  std::ostringstream out;
  if (f == Format::csv) {
    for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << detail::csv_quote(cols[i]);
    out << "\n";
    for (const auto& line : cells) {
      for (std::size_t i = 0; i < line.size(); ++i) out << (i ? "," : "") << detail::csv_quote(line[i]);
      out << "\n";
    }
    return out.str();
  }
  std::vector<std::size_t> width(cols.size());
  for (std::size_t i = 0; i < cols.size(); ++i) {
    width[i] = cols[i].size();
    for (const auto& line : cells) width[i] = std::max(width[i], line[i].size());
  }
  auto emit = [&](const std::vector<std::string>& line) {
    for (std::size_t i = 0; i < line.size(); ++i) {
      out << line[i];
      if (i + 1 < line.size()) out << std::string(width[i] - line[i].size() + 2, ' ');
    }
    out << "\n";
  };
  emit(cols);
  for (const auto& line : cells) emit(line);
  return out.str();
}

}  // namespace psdec::cli

#pragma once

/**
 * @file closed_forms.hpp
 * @brief Dimensions and multiplicities of the irreducible constituents of
 *        Ind_B^G(1) for G = GL_3(O), as polynomials in the residue size q.
 *
 *   eta1(q) = (1 + q^-1)(1 - q^-3),   eta2(q) = (1 - q^-2)(1 - q^-3)
 *
 * A cone point c of level >= 2 contributes constituents of dimension
 * eta1 q^{2 lambda} when kappa = mu and eta2 q^{2 lambda + kappa - mu}
 * otherwise. Boundary points (mu = 0) give one irreducible V_c; an interior
 * point with mu = m gives one constituent per new character of the level-m
 * stabilizer (unit case when kappa = mu, non-unit case otherwise).
 *
 * The catalogue is enumerated from the cone and is the reference for the
 * counts r_n. The printed closed forms f_n, g_n and |S(m, n)| are reproduced
 * verbatim next to it.
 */

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "psdec/cone.hpp"
#include "psdec/poly.hpp"
#include "psdec/report.hpp"

namespace psdec {

enum class Family { Level0, Level1, BoundaryKappaZero, BoundaryKappaPos, InteriorUnit, InteriorNonUnit };

inline const char* to_string(Family f) {
  switch (f) {
    case Family::Level0: return "level0";
    case Family::Level1: return "level1";
    case Family::BoundaryKappaZero: return "boundary-kappa0";
    case Family::BoundaryKappaPos: return "boundary-kappa+";
    case Family::InteriorUnit: return "interior-unit";
    case Family::InteriorNonUnit: return "interior-nonunit";
  }
  return "?";
}

/// Which series a dimension belongs to: small (level <= 1), eta1 q^n or eta2 q^n.
enum class DimFamily { small, eta1, eta2 };

inline const char* to_string(DimFamily f) {
  switch (f) {
    case DimFamily::small: return "small";
    case DimFamily::eta1: return "eta1";
    case DimFamily::eta2: return "eta2";
  }
  return "?";
}

struct DimensionLabel {
  DimFamily family = DimFamily::small;
  int n = 0;  // exponent of q for eta families; 0, 1, 3 for dims 1, q^2+q, q^3
  friend constexpr auto operator<=>(const DimensionLabel&, const DimensionLabel&) = default;
};

inline Poly eta1_times_q(int n) { return (Poly::x() + 1) * (Poly::x(3) - 1) * Poly::x(n - 4); }
inline Poly eta2_times_q(int n) { return (Poly::x(2) - 1) * (Poly::x(3) - 1) * Poly::x(n - 5); }

inline Family family(const ConePoint& c) {
  const auto inv = invariants(c);
  if (inv.level == 0) return Family::Level0;
  if (inv.level == 1) return Family::Level1;
  if (inv.mu == 0) return inv.kappa == 0 ? Family::BoundaryKappaZero : Family::BoundaryKappaPos;
  return inv.kappa == inv.mu ? Family::InteriorUnit : Family::InteriorNonUnit;
}

inline DimensionLabel dimension_label(const ConePoint& c) {
  const auto inv = invariants(c);
  if (inv.level == 0) return {DimFamily::small, 0};
  if (inv.level == 1) return {DimFamily::small, inv.kappa == 0 ? 1 : 3};
  if (inv.kappa == inv.mu) return {DimFamily::eta1, 2 * inv.level};
  return {DimFamily::eta2, 2 * inv.level + inv.kappa - inv.mu};
}

inline Poly dimension_poly(const DimensionLabel& d) {
  switch (d.family) {
    case DimFamily::small:
      if (d.n == 0) return 1;
      if (d.n == 1) return Poly::x(2) + Poly::x();
      return Poly::x(3);
    case DimFamily::eta1: return eta1_times_q(d.n);
    case DimFamily::eta2: return eta2_times_q(d.n);
  }
  return 0;
}

/// Dimension of every irreducible constituent of V_c, as a polynomial in q.
inline Poly irr_dimension(const ConePoint& c) { return dimension_poly(dimension_label(c)); }

inline std::int64_t irr_dimension(const ConePoint& c, std::int64_t q) { return irr_dimension(c).evaluate(q); }

/// Number of new characters of the level-m stabilizer.
inline Poly new_sigma_count(int m, bool unit) {
  if (m == 0) return 1;
  if (!unit) return Poly::x(m) - Poly::x(m - 1);
  if (m == 1) return Poly::x() - 2;
  return Poly::x(m - 2) * pow(Poly::x() - 1, 2);
}

struct Constituents {
  Poly count;
  Poly dim;
};

inline Constituents constituents_of_class(const ConePoint& c) {
  const auto inv = invariants(c);
  const Poly dim = irr_dimension(c);
  if (region(c) == Region::boundary) return {1, dim};
  return {new_sigma_count(inv.mu, inv.kappa == inv.mu), dim};
}

struct NumericConstituents {
  std::int64_t count = 0;
  std::int64_t dim = 0;
};

inline NumericConstituents constituents_of_class(const ConePoint& c, std::int64_t q) {
  if (q < 2) throw std::invalid_argument("q must be at least 2");
  const auto k = constituents_of_class(c);
  return {k.count.evaluate(q), k.dim.evaluate(q)};
}

struct CatalogueEntry {
  ConePoint representative;
  InvariantTriple inv;
  Family family = Family::Level0;
  DimensionLabel dim_label;
  Poly count;
  Poly dim;
  std::int64_t class_multiplicity = 0;
};

inline constexpr int catalogue_level_limit = 30;

/// One entry per equivalence class of cone points with level <= max_level.
inline std::vector<CatalogueEntry> catalogue(int max_level) {
  if (max_level < 0 || max_level > catalogue_level_limit)
    throw std::invalid_argument("max_level must lie in [0, " + std::to_string(catalogue_level_limit) + "]");
  std::vector<CatalogueEntry> out;
  for (int level = 0; level <= max_level; ++level)
    for (const auto& cls : classes_at_level(level)) {
      const auto& c = cls.front();
      const auto inv = invariants(c);
      const auto k = constituents_of_class(c);
      const auto a = class_size(inv.mu, inv.kappa, inv.level);
      if (a != static_cast<std::int64_t>(cls.size())) throw std::logic_error("class size disagrees with a(m,k,l)");
      out.push_back({canonical_representative(c), inv, family(c), dimension_label(c), k.count, k.dim, a});
    }
  return out;
}

/// q^{3(l-1)}(q+1)(q^2+q+1) for l >= 1, and 1 for l = 0.
inline Poly flag_count(int level) {
  if (level == 0) return 1;
  return Poly::x(3 * (level - 1)) * (Poly::x() + 1) * (Poly::x(2) + Poly::x() + 1);
}

/// Sum over classes of level <= l of a * count * dim.
inline Poly catalogue_total(const std::vector<CatalogueEntry>& cat, int level) {
  Poly total;
  for (const auto& e : cat)
    if (e.inv.level <= level) total += Poly(e.class_multiplicity) * e.count * e.dim;
  return total;
}

inline Report flag_identity_check(int max_level, std::int64_t q) {
  Report rep{"flag-identity", {{"max_level", max_level}, {"q", q}}};
  const auto cat = catalogue(max_level);
  json rows = json::array();
  for (int l = 0; l <= max_level; ++l) {
    std::int64_t lhs = 0;
    for (const auto& e : cat)
      if (e.inv.level <= l)
        lhs = Poly::checked_add(
            lhs, Poly::checked_mul(e.class_multiplicity, Poly::checked_mul(e.count.evaluate(q), e.dim.evaluate(q))));
    const auto rhs = flag_count(l).evaluate(q);
    rep.require(lhs == rhs, "level " + std::to_string(l));
    rows.push_back({{"level", l}, {"sum", lhs}, {"flags", rhs}});
  }
  rep.detail["levels"] = rows;
  return rep;
}

/// x^{floor(n/6)-1}((p+1)x + (2-p)) with p = (n/2) mod 3, for even n >= 4; else 0.
inline Poly f_poly(int n) {
  if (n < 4 || n % 2 != 0) return 0;
  const int p = (n / 2) % 3;
  return Poly::x(n / 6 - 1) * (Poly::monomial(p + 1, 1) + Poly(2 - p));
}

/// The printed g_n for n >= 5; zero below.
inline Poly g_poly(int n) {
  if (n < 5) return 0;
  const int k = n / 2;
  return Poly::geometric(k) + Poly::geometric(k - 1) + Poly::monomial(std::min(n % 3, 1), k - 1);
}

/// The printed |S(m, n)|.
inline std::int64_t printed_s_size(int m, int n) {
  const int k = n / 2;
  if (n % 3 != 0) return (m >= 0 && m <= k - 1) ? 2 * k - 2 * m : 0;
  return (m >= 0 && m <= k) ? 2 * k - 2 * m + 1 : 0;
}

/// |S(m, n)| by enumeration: cone points with 2 lambda + kappa - mu = n and kappa > mu = m.
inline std::int64_t enumerated_s_size(int m, int n) {
  std::int64_t count = 0;
  for (int level = 0; 2 * level < n; ++level)
    for (const auto& c : enumerate_level(level)) {
      const auto inv = invariants(c);
      if (inv.kappa > inv.mu && inv.mu == m && 2 * inv.level + inv.kappa - inv.mu == n) ++count;
    }
  return count;
}

/// Number of irreducible constituents (with multiplicity) of the given dimension label.
inline Poly catalogue_count(const std::vector<CatalogueEntry>& cat, const DimensionLabel& d) {
  Poly total;
  for (const auto& e : cat)
    if (e.dim_label == d) total += Poly(e.class_multiplicity) * e.count;
  return total;
}

/// Smallest catalogue level that contains every constituent with label exponent <= n.
inline int level_for_exponent(int n) { return std::max(1, n / 2); }

inline constexpr int zeta_n_limit = 40;

struct ZetaTerm {
  DimFamily family = DimFamily::small;
  int n = 0;
  Poly catalogue_count;
  Poly printed_count;
  bool agrees = false;
};

inline std::vector<ZetaTerm> zeta_terms(int max_n) {
  if (max_n < 0 || max_n > zeta_n_limit)
    throw std::invalid_argument("max_n must lie in [0, " + std::to_string(zeta_n_limit) + "]");
  const auto cat = catalogue(level_for_exponent(max_n));
  std::vector<ZetaTerm> out;
  auto add = [&](DimFamily f, int n, Poly printed) {
    ZetaTerm t{f, n, catalogue_count(cat, {f, n}), std::move(printed)};
    t.agrees = t.catalogue_count == t.printed_count;
    out.push_back(std::move(t));
  };
  add(DimFamily::small, 0, 1);
  if (max_n >= 1) add(DimFamily::small, 1, 2);
  if (max_n >= 3) add(DimFamily::small, 3, 1);
  for (int n = 4; n <= max_n; ++n) {
    add(DimFamily::eta1, n, f_poly(n));
    if (n >= 5) add(DimFamily::eta2, n, g_poly(n));
  }
  return out;
}

/// Status of one zeta comparison: an eta2 mismatch is a known deviation, anything else fails.
inline Status zeta_status(const ZetaTerm& t) {
  if (t.agrees) return Status::pass;
  return t.family == DimFamily::eta2 ? Status::expected_deviation : Status::fail;
}

/// Constituent counts merged by integer dimension at a numeric q.
inline std::map<std::int64_t, std::int64_t> dimension_aggregate(int max_n, std::int64_t q) {
  std::map<std::int64_t, std::int64_t> out;
  for (const auto& t : zeta_terms(max_n)) {
    const auto count = t.catalogue_count.evaluate(q);
    if (count == 0) continue;
    out[dimension_poly({t.family, t.n}).evaluate(q)] += count;
  }
  return out;
}

}  // namespace psdec

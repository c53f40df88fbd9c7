#pragma once

/**
 * @file cone.hpp
 * @brief The cone C = { c in N_0^3 : c1, c2 <= c3 <= c1 + c2 } and the
 *        invariants that decide when two summands V_c, V_d are isomorphic.
 *
 * For c in C:
 *   level  lambda(c) = c3
 *   kappa  kappa(c)  = c1 + c2 - c3
 *   mu     mu(c)     = min(kappa, c3 - c1, c3 - c2)
 *
 * V_c and V_d are isomorphic iff the three invariants agree and, when
 * kappa > mu, c = d. Equivalence classes with kappa = mu are the families
 * {(2k + i, l - k - i, l) : 0 <= i <= l - 3k}; all other classes are
 * singletons.
 */

#include <algorithm>
#include <compare>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

namespace psdec {

struct ConePoint {
  int c1 = 0, c2 = 0, c3 = 0;

  friend constexpr bool operator==(const ConePoint&, const ConePoint&) = default;
  friend constexpr auto operator<=>(const ConePoint&, const ConePoint&) = default;

  std::string to_string() const {
    return "(" + std::to_string(c1) + "," + std::to_string(c2) + "," + std::to_string(c3) + ")";
  }
};

inline constexpr bool in_cone(const ConePoint& c) {
  return c.c1 >= 0 && c.c2 >= 0 && c.c1 <= c.c3 && c.c2 <= c.c3 && c.c3 <= c.c1 + c.c2;
}

inline void require_in_cone(const ConePoint& c) {
  if (!in_cone(c)) throw std::invalid_argument("point " + c.to_string() + " is not in the cone");
}

struct InvariantTriple {
  int mu = 0, kappa = 0, level = 0;
  friend constexpr bool operator==(const InvariantTriple&, const InvariantTriple&) = default;
  friend constexpr auto operator<=>(const InvariantTriple&, const InvariantTriple&) = default;
};

inline InvariantTriple invariants(const ConePoint& c) {
  require_in_cone(c);
  const int kappa = c.c1 + c.c2 - c.c3;
  return {std::min({kappa, c.c3 - c.c1, c.c3 - c.c2}), kappa, c.c3};
}

enum class Region { interior, boundary };

inline const char* to_string(Region r) { return r == Region::interior ? "interior" : "boundary"; }

inline Region region(const ConePoint& c) {
  require_in_cone(c);
  return (c.c1 < c.c3 && c.c2 < c.c3 && c.c3 < c.c1 + c.c2) ? Region::interior : Region::boundary;
}

inline bool equivalent(const ConePoint& c, const ConePoint& d) {
  const auto ic = invariants(c), id = invariants(d);
  return ic == id && (ic.kappa == ic.mu || c == d);
}

/// a(m, k, l): the size of any class with invariants (mu, kappa, level) = (m, k, l).
inline std::int64_t class_size(int mu, int kappa, int level) {
  if (mu < 0 || kappa < 0 || level < 0) return 0;
  if (kappa == mu && level >= 3 * kappa) return level - 3 * kappa + 1;
  if (level >= 2 * mu + kappa && 2 * mu + kappa > 3 * mu) return 1;
  return 0;
}

/// All c in C with c3 = level, lexicographic.
inline std::vector<ConePoint> enumerate_level(int level) {
  if (level < 0) throw std::invalid_argument("negative level");
  std::vector<ConePoint> out;
  for (int c1 = 0; c1 <= level; ++c1)
    for (int c2 = 0; c2 <= level; ++c2)
      if (level <= c1 + c2) out.push_back({c1, c2, level});
  return out;
}

/// The representative used to label a class: (2 mu, level - mu, level) for
/// kappa = mu, the point itself otherwise.
inline ConePoint canonical_representative(const ConePoint& c) {
  const auto inv = invariants(c);
  if (inv.kappa == inv.mu) return {2 * inv.mu, inv.level - inv.mu, inv.level};
  return c;
}

/// Equivalence classes at one level, each sorted, ordered by first member.
inline std::vector<std::vector<ConePoint>> classes_at_level(int level) {
  std::vector<std::vector<ConePoint>> classes;
  for (const auto& c : enumerate_level(level)) {
    auto it = std::find_if(classes.begin(), classes.end(),
                           [&](const std::vector<ConePoint>& cls) { return equivalent(cls.front(), c); });
    if (it == classes.end())
      classes.push_back({c});
    else
      it->push_back(c);
  }
  return classes;
}

inline std::int64_t count_classes_with_invariants(int mu, int kappa, int level) {
  if (level < 0) return 0;
  const InvariantTriple want{mu, kappa, level};
  std::int64_t n = 0;
  for (const auto& cls : classes_at_level(level))
    if (invariants(cls.front()) == want) ++n;
  return n;
}

}  // namespace psdec

#pragma once

// Character groups of small finite abelian groups, found by brute force.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <span>
#include <stdexcept>
#include <vector>

#include "psdec/ring.hpp"

namespace psdec {

/// A finite abelian group on the index set {0, ..., order-1}.
struct AbelianGroup {
  std::uint32_t order = 0;
  std::uint32_t identity = 0;
  std::function<std::uint32_t(std::uint32_t, std::uint32_t)> op;
};

/// Complete list of characters of an AbelianGroup.
///
/// The group is written as an internal direct sum of cyclic subgroups
/// <g_1> + ... + <g_k> of orders n_1, ..., n_k. Character (j_1, ..., j_k)
/// sends g_1^{e_1} ... g_k^{e_k} to exp(2 pi i sum j_r e_r / n_r). Values are
/// stored as phases over the common denominator `exponent`.
class AbelianDual {
 public:
  std::uint32_t group_order() const { return static_cast<std::uint32_t>(coords_.size()); }
  std::uint32_t exponent() const { return exponent_; }
  std::size_t size() const { return phases_.size(); }
  const std::vector<std::uint32_t>& basis() const { return basis_; }
  const std::vector<std::uint32_t>& basis_orders() const { return orders_; }

  std::uint32_t phase(std::size_t chi, std::uint32_t x) const { return phases_[chi][x]; }
  cplx value(std::size_t chi, std::uint32_t x) const { return root_of_unity(phases_[chi][x], exponent_); }
  const std::vector<std::uint32_t>& phases(std::size_t chi) const { return phases_[chi]; }

  bool is_trivial(std::size_t chi) const {
    return std::all_of(phases_[chi].begin(), phases_[chi].end(), [](std::uint32_t v) { return v == 0; });
  }

 private:
  friend AbelianDual abelian_dual(const AbelianGroup&);
  std::uint32_t exponent_ = 1;
  std::vector<std::uint32_t> basis_, orders_;
  std::vector<std::vector<std::uint32_t>> coords_;  // element -> exponent vector
  std::vector<std::vector<std::uint32_t>> phases_;
};

inline constexpr std::uint32_t abelian_dual_bound = 4096;

inline AbelianDual abelian_dual(const AbelianGroup& g) {
  const std::uint32_t n = g.order;
  if (n == 0) throw std::invalid_argument("empty group");
  if (n > abelian_dual_bound) throw std::length_error("abelian group too large for dual enumeration");
  for (std::uint32_t a = 0; a < n; ++a)
    for (std::uint32_t b = a + 1; b < n; ++b)
      if (g.op(a, b) != g.op(b, a)) throw std::invalid_argument("group is not abelian");

  auto order_of = [&](std::uint32_t x) {
    std::uint32_t k = 1;
    for (std::uint32_t y = x; y != g.identity; y = g.op(y, x)) ++k;
    return k;
  };

  AbelianDual d;
  d.coords_.assign(n, {});
  std::vector<bool> in_sub(n, false);
  in_sub[g.identity] = true;
  std::vector<std::uint32_t> members{g.identity};

  // Greedy elementary-divisor search: take an element whose image in G/H has
  // the largest possible order and whose cyclic group meets H trivially.
  while (members.size() < n) {
    std::uint32_t best = n, best_order = 0, fallback_order = 0;
    for (std::uint32_t x = 0; x < n; ++x) {
      if (in_sub[x]) continue;
      std::uint32_t k = 1;
      for (std::uint32_t y = x; !in_sub[y]; y = g.op(y, x)) ++k;
      fallback_order = std::max(fallback_order, k);
      if (k > best_order && order_of(x) == k) {
        best_order = k;
        best = x;
      }
    }
    if (best == n || best_order != fallback_order)
      throw std::logic_error("no independent generator of maximal quotient order");

    const std::size_t old = members.size();
    std::vector<std::uint32_t> fresh;
    std::uint32_t power = g.identity;
    for (std::uint32_t e = 1; e < best_order; ++e) {
      power = g.op(power, best);
      for (std::size_t i = 0; i < old; ++i) {
        const std::uint32_t h = members[i];
        const std::uint32_t y = g.op(h, power);
        if (in_sub[y]) throw std::logic_error("generator is not independent");
        in_sub[y] = true;
        auto c = d.coords_[h];
        c.push_back(e);
        d.coords_[y] = std::move(c);
        fresh.push_back(y);
      }
    }
    for (std::size_t i = 0; i < old; ++i) d.coords_[members[i]].push_back(0);
    members.insert(members.end(), fresh.begin(), fresh.end());
    d.basis_.push_back(best);
    d.orders_.push_back(best_order);
  }

  d.exponent_ = 1;
  for (auto o : d.orders_) d.exponent_ = std::lcm(d.exponent_, o);

  // Enumerate index tuples (j_1, ..., j_k) in mixed radix.
  const std::size_t k = d.orders_.size();
  std::vector<std::uint32_t> j(k, 0);
  for (std::uint32_t c = 0; c < n; ++c) {
    std::vector<std::uint32_t> table(n);
    for (std::uint32_t x = 0; x < n; ++x) {
      std::uint64_t ph = 0;
      for (std::size_t r = 0; r < k; ++r)
        ph += static_cast<std::uint64_t>(j[r]) * d.coords_[x][r] * (d.exponent_ / d.orders_[r]);
      table[x] = static_cast<std::uint32_t>(ph % d.exponent_);
    }
    d.phases_.push_back(std::move(table));
    for (std::size_t r = 0; r < k; ++r) {
      if (++j[r] < d.orders_[r]) break;
      j[r] = 0;
    }
  }
  return d;
}

/// True iff character chi is trivial on every element of `kernel`, i.e. it
/// factors through the quotient by that subgroup.
inline bool is_pullback(const AbelianDual& dual, std::size_t chi, std::span<const std::uint32_t> kernel) {
  return std::all_of(kernel.begin(), kernel.end(), [&](std::uint32_t x) { return dual.phase(chi, x) == 0; });
}

/// O_m^x under multiplication, indexed by position in ring.units().
inline AbelianGroup unit_group(const Ring& ring) {
  return {ring.unit_count(), static_cast<std::uint32_t>(ring.unit_index(ring.one())),
          [ring](std::uint32_t a, std::uint32_t b) {
            return static_cast<std::uint32_t>(ring.unit_index(ring.mul(ring.units()[a], ring.units()[b])));
          }};
}

/// (O_m, +), indexed by element code.
inline AbelianGroup additive_group(const Ring& ring) {
  return {ring.size(), 0, [ring](std::uint32_t a, std::uint32_t b) { return ring.add({a}, {b}).code; }};
}

/// Reduction kernel of O_m^x -> O_{m-1}^x, i.e. 1 + pi^{m-1} O_m, as unit indices.
inline std::vector<std::uint32_t> unit_reduction_kernel(const Ring& ring) {
  if (ring.m() < 1) throw std::domain_error("reduction kernel needs m >= 1");
  std::vector<std::uint32_t> out;
  for (std::uint32_t i = 0; i < ring.unit_count(); ++i)
    if (ring.val(ring.sub(ring.units()[i], ring.one())) >= ring.m() - 1) out.push_back(i);
  return out;
}

/// Reduction kernel of O_m -> O_{m-1}, i.e. pi^{m-1} O_m, as element codes.
inline std::vector<std::uint32_t> additive_reduction_kernel(const Ring& ring) {
  if (ring.m() < 1) throw std::domain_error("reduction kernel needs m >= 1");
  std::vector<std::uint32_t> out;
  for (auto x : ring.elements())
    if (ring.val(x) >= ring.m() - 1) out.push_back(x.code);
  return out;
}

}  // namespace psdec

#pragma once

/**
 * @file char_engine.hpp
 * @brief Character theory for concretely enumerated finite groups.
 *
 * A FiniteGroup lives on the index set {0, ..., order-1} and is given by a
 * multiplication oracle. Construction finds a small generating set, the
 * inverse table and the conjugacy classes (orbits under conjugation by the
 * generators). Class functions store one complex value per class.
 *
 * Subgroups are explicit element lists inside a parent group. Induction uses
 *
 *   Ind_H^G chi (C) = |G| / (|H| |C|) * sum_{h in H cap C} chi(h),
 *
 * which costs O(|H|) per induced character.
 */

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <memory>
#include <numeric>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "psdec/ring.hpp"

namespace psdec {

inline constexpr double integrality_tolerance = 1e-6;
inline constexpr std::size_t default_class_bound = 30'000;

class NonIntegralError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A generating set found greedily: walk the elements in a fixed pseudo-random
/// order and keep each one not already in the subgroup generated so far.
inline std::vector<std::uint32_t> greedy_generators(std::size_t order,
                                                    const std::function<std::uint32_t(std::uint32_t, std::uint32_t)>& mul,
                                                    std::uint32_t identity) {
  std::vector<std::uint32_t> walk(order);
  std::iota(walk.begin(), walk.end(), 0);
  std::mt19937_64 rng(0x5eed);
  std::shuffle(walk.begin(), walk.end(), rng);
  std::vector<std::uint32_t> gens;
  std::vector<char> in_sub(order, 0);
  in_sub[identity] = 1;
  std::size_t sub_size = 1;
  std::vector<std::uint32_t> queue;
  for (auto g : walk) {
    if (sub_size == order) break;
    if (in_sub[g]) continue;
    gens.push_back(g);
    // The new subgroup is generated by the old one together with g.
    queue.clear();
    for (std::uint32_t x = 0; x < order; ++x)
      if (in_sub[x]) queue.push_back(x);
    for (std::size_t head = 0; head < queue.size(); ++head)
      for (auto s : gens) {
        const auto y = mul(queue[head], s);
        if (!in_sub[y]) {
          in_sub[y] = 1;
          queue.push_back(y);
        }
      }
    sub_size = queue.size();
  }
  return gens;
}

class FiniteGroup {
 public:
  using index_type = std::uint32_t;
  using Multiply = std::function<index_type(index_type, index_type)>;
  using Invert = std::function<index_type(index_type)>;

  FiniteGroup(std::size_t order, Multiply mul, index_type identity, Invert inv = {},
              std::size_t class_bound = default_class_bound)
      : order_(order), mul_(std::move(mul)), identity_(identity) {
    if (order == 0) throw std::invalid_argument("empty group");
    if (order > class_bound) throw std::length_error("group order " + std::to_string(order) + " exceeds class bound");
    inverse_.resize(order);
    for (index_type g = 0; g < order_; ++g) inverse_[g] = inv ? inv(g) : power_inverse(g);
    find_generators();
    compute_classes();
  }

  std::size_t order() const { return order_; }
  index_type identity() const { return identity_; }
  index_type multiply(index_type a, index_type b) const { return mul_(a, b); }
  index_type inverse(index_type a) const { return inverse_[a]; }
  /// g x g^{-1}
  index_type conjugate(index_type x, index_type g) const { return mul_(mul_(g, x), inverse_[g]); }

  const std::vector<index_type>& generators() const { return generators_; }

  std::size_t class_count() const { return class_sizes_.size(); }
  std::size_t class_of(index_type g) const { return class_of_[g]; }
  std::size_t class_size(std::size_t k) const { return class_sizes_[k]; }
  index_type class_rep(std::size_t k) const { return class_reps_[k]; }
  const std::vector<std::size_t>& class_sizes() const { return class_sizes_; }

  bool is_abelian() const {
    for (auto a : generators_)
      for (auto b : generators_)
        if (mul_(a, b) != mul_(b, a)) return false;
    return true;
  }

 private:
  index_type power_inverse(index_type g) const {
    index_type prev = identity_, cur = g;
    while (cur != identity_) {
      prev = cur;
      cur = mul_(cur, g);
    }
    return prev;
  }

  void find_generators() { generators_ = greedy_generators(order_, mul_, identity_); }

  void compute_classes() {
    constexpr std::size_t unset = static_cast<std::size_t>(-1);
    class_of_.assign(order_, unset);
    std::vector<index_type> queue;
    for (index_type g = 0; g < order_; ++g) {
      if (class_of_[g] != unset) continue;
      const std::size_t k = class_sizes_.size();
      queue.assign(1, g);
      class_of_[g] = k;
      for (std::size_t head = 0; head < queue.size(); ++head)
        for (index_type s : generators_) {
          const index_type y = conjugate(queue[head], s);
          if (class_of_[y] == unset) {
            class_of_[y] = k;
            queue.push_back(y);
          }
        }
      class_reps_.push_back(g);
      class_sizes_.push_back(queue.size());
    }
  }

  std::size_t order_;
  Multiply mul_;
  index_type identity_;
  std::vector<index_type> inverse_;
  std::vector<index_type> generators_;
  std::vector<std::size_t> class_of_;
  std::vector<std::size_t> class_sizes_;
  std::vector<index_type> class_reps_;
};

/// A complex-valued class function, one value per conjugacy class.
struct ClassFunction {
  const FiniteGroup* group = nullptr;
  std::vector<cplx> values;

  cplx at(FiniteGroup::index_type g) const { return values[group->class_of(g)]; }
  cplx degree() const { return at(group->identity()); }

  ClassFunction& operator+=(const ClassFunction& o) {
    if (o.group != group) throw std::invalid_argument("class functions on different groups");
    for (std::size_t k = 0; k < values.size(); ++k) values[k] += o.values[k];
    return *this;
  }
  friend ClassFunction operator+(ClassFunction a, const ClassFunction& b) { return a += b; }
};

inline ClassFunction trivial_character(const FiniteGroup& g) { return {&g, std::vector<cplx>(g.class_count(), 1.0)}; }

inline ClassFunction regular_character(const FiniteGroup& g) {
  ClassFunction f{&g, std::vector<cplx>(g.class_count(), 0.0)};
  f.values[g.class_of(g.identity())] = static_cast<double>(g.order());
  return f;
}

/// Rounds to the nearest integer; throws NonIntegralError beyond tolerance.
inline std::int64_t round_integral(cplx v, const char* what) {
  const double r = std::round(v.real());
  if (std::abs(v - cplx(r, 0.0)) > integrality_tolerance)
    throw NonIntegralError(std::string(what) + " is not integral: (" + std::to_string(v.real()) + ", " +
                           std::to_string(v.imag()) + ")");
  return static_cast<std::int64_t>(r);
}

/// (1/|G|) sum_g f(g) conj(g(g)), unrounded.
inline cplx inner_product_value(const ClassFunction& f, const ClassFunction& g) {
  if (f.group != g.group) throw std::invalid_argument("class functions on different groups");
  cplx acc = 0.0;
  for (std::size_t k = 0; k < f.values.size(); ++k)
    acc += static_cast<double>(f.group->class_size(k)) * f.values[k] * std::conj(g.values[k]);
  return acc / static_cast<double>(f.group->order());
}

inline std::int64_t inner_product(const ClassFunction& f, const ClassFunction& g) {
  return round_integral(inner_product_value(f, g), "inner product");
}

/// Maximum absolute difference between two class functions.
inline double distance(const ClassFunction& f, const ClassFunction& g) {
  if (f.group != g.group) throw std::invalid_argument("class functions on different groups");
  double d = 0.0;
  for (std::size_t k = 0; k < f.values.size(); ++k) d = std::max(d, std::abs(f.values[k] - g.values[k]));
  return d;
}

/// An explicit subset of a parent group, verified closed at construction.
class Subgroup {
 public:
  using index_type = FiniteGroup::index_type;

  Subgroup(const FiniteGroup& parent, std::vector<index_type> elements)
      : parent_(&parent), elements_(std::move(elements)), local_(parent.order(), -1) {
    for (std::size_t i = 0; i < elements_.size(); ++i) {
      auto& slot = local_[elements_[i]];
      if (slot >= 0) throw std::invalid_argument("duplicate subgroup element");
      slot = static_cast<std::int32_t>(i);
    }
    if (!contains(parent.identity())) throw std::invalid_argument("subset does not contain the identity");
    find_generators();
  }

  const FiniteGroup& parent() const { return *parent_; }
  std::size_t order() const { return elements_.size(); }
  const std::vector<index_type>& elements() const { return elements_; }
  const std::vector<index_type>& generators() const { return generators_; }
  bool contains(index_type g) const { return local_[g] >= 0; }
  /// Position of a parent element in elements(); -1 when absent.
  std::int32_t local_index(index_type g) const { return local_[g]; }

  /// The subgroup as a group in its own right, indexed by position in elements().
  std::shared_ptr<const FiniteGroup> as_group(std::size_t class_bound = default_class_bound) const {
    auto elems = elements_;
    auto local = local_;
    const FiniteGroup* parent = parent_;
    auto mul = [parent, elems, local](index_type a, index_type b) {
      return static_cast<index_type>(local[parent->multiply(elems[a], elems[b])]);
    };
    auto inv = [parent, elems, local](index_type a) {
      return static_cast<index_type>(local[parent->inverse(elems[a])]);
    };
    return std::make_shared<const FiniteGroup>(elements_.size(), mul,
                                               static_cast<index_type>(local_[parent_->identity()]), inv, class_bound);
  }

 private:
  void find_generators() {
    std::vector<char> in_sub(parent_->order(), 0);
    std::size_t sub_size = 1;
    in_sub[parent_->identity()] = 1;
    for (index_type g : elements_) {
      if (sub_size == elements_.size()) break;
      if (in_sub[g]) continue;
      generators_.push_back(g);
      std::vector<index_type> queue{parent_->identity()};
      std::fill(in_sub.begin(), in_sub.end(), 0);
      in_sub[parent_->identity()] = 1;
      for (std::size_t head = 0; head < queue.size(); ++head)
        for (index_type s : generators_) {
          const index_type y = parent_->multiply(queue[head], s);
          if (in_sub[y]) continue;
          if (!contains(y)) throw std::invalid_argument("subset is not closed under the group product");
          in_sub[y] = 1;
          queue.push_back(y);
        }
      sub_size = queue.size();
    }
  }

  const FiniteGroup* parent_;
  std::vector<index_type> elements_;
  std::vector<std::int32_t> local_;
  std::vector<index_type> generators_;
};

/// H viewed inside the standalone group of an intermediate subgroup K >= H.
inline Subgroup relative_subgroup(const Subgroup& h, const Subgroup& k, const FiniteGroup& k_group) {
  std::vector<FiniteGroup::index_type> local;
  local.reserve(h.order());
  for (auto g : h.elements()) {
    const auto i = k.local_index(g);
    if (i < 0) throw std::invalid_argument("subgroup is not contained in the intermediate subgroup");
    local.push_back(static_cast<FiniteGroup::index_type>(i));
  }
  return Subgroup(k_group, std::move(local));
}

/// Values of a class function of the standalone subgroup group, listed per element of H.
inline std::vector<cplx> element_values(const ClassFunction& f) {
  std::vector<cplx> out(f.group->order());
  for (FiniteGroup::index_type g = 0; g < out.size(); ++g) out[g] = f.at(g);
  return out;
}

/// Restriction of a class function on the parent to the standalone group of H.
inline ClassFunction restrict_character(const ClassFunction& f, const Subgroup& h, const FiniteGroup& h_group) {
  if (f.group != &h.parent()) throw std::invalid_argument("class function is not on the parent group");
  ClassFunction r{&h_group, std::vector<cplx>(h_group.class_count())};
  for (std::size_t k = 0; k < h_group.class_count(); ++k) r.values[k] = f.at(h.elements()[h_group.class_rep(k)]);
  return r;
}

/// Frobenius induction of a function on H (values listed per element of H).
inline ClassFunction induce_character(const Subgroup& h, std::span<const cplx> values) {
  if (values.size() != h.order()) throw std::invalid_argument("value list does not match subgroup order");
  const FiniteGroup& g = h.parent();
  ClassFunction out{&g, std::vector<cplx>(g.class_count(), 0.0)};
  for (std::size_t i = 0; i < h.order(); ++i) out.values[g.class_of(h.elements()[i])] += values[i];
  const double scale = static_cast<double>(g.order()) / static_cast<double>(h.order());
  for (std::size_t k = 0; k < out.values.size(); ++k) out.values[k] *= scale / static_cast<double>(g.class_size(k));
  return out;
}

inline ClassFunction induce_character(const Subgroup& h, const ClassFunction& chi) {
  if (chi.group->order() != h.order()) throw std::invalid_argument("class function is not on the subgroup");
  const auto v = element_values(chi);
  return induce_character(h, std::span<const cplx>(v));
}

/// Number of cosets xH fixed by each class representative, by direct coset enumeration.
inline ClassFunction permutation_character(const Subgroup& h) {
  const FiniteGroup& g = h.parent();
  constexpr std::uint32_t unset = static_cast<std::uint32_t>(-1);
  std::vector<std::uint32_t> coset_of(g.order(), unset);
  std::vector<FiniteGroup::index_type> reps;
  for (FiniteGroup::index_type x = 0; x < g.order(); ++x) {
    if (coset_of[x] != unset) continue;
    const auto id = static_cast<std::uint32_t>(reps.size());
    reps.push_back(x);
    for (auto e : h.elements()) coset_of[g.multiply(x, e)] = id;
  }
  ClassFunction out{&g, std::vector<cplx>(g.class_count(), 0.0)};
  for (std::size_t k = 0; k < g.class_count(); ++k) {
    const auto rep = g.class_rep(k);
    std::size_t fixed = 0;
    for (std::uint32_t c = 0; c < reps.size(); ++c)
      if (coset_of[g.multiply(rep, reps[c])] == c) ++fixed;
    out.values[k] = static_cast<double>(fixed);
  }
  return out;
}

inline void require_linear(const Subgroup& h, std::span<const cplx> chi) {
  if (chi.size() != h.order()) throw std::invalid_argument("value list does not match subgroup order");
  const auto& g = h.parent();
  if (std::abs(chi[h.local_index(g.identity())] - cplx(1.0, 0.0)) > integrality_tolerance)
    throw std::invalid_argument("character is not linear: value at identity is not 1");
  for (std::size_t i = 0; i < h.order(); ++i) {
    if (std::abs(std::abs(chi[i]) - 1.0) > integrality_tolerance)
      throw std::invalid_argument("character is not linear: value off the unit circle");
    for (auto s : h.generators()) {
      const auto prod = h.local_index(g.multiply(h.elements()[i], s));
      if (std::abs(chi[prod] - chi[i] * chi[h.local_index(s)]) > integrality_tolerance)
        throw std::invalid_argument("character is not linear: not multiplicative");
    }
  }
}

/// dim Hom_G(Ind_{H1} chi1, Ind_{H2} chi2) for linear characters, counted as
/// the double cosets H2 g H1 with chi1(x) = chi2(g x g^{-1}) on H1 cap g^{-1} H2 g.
inline std::int64_t mackey_hom_dim(const Subgroup& h1, std::span<const cplx> chi1, const Subgroup& h2,
                                   std::span<const cplx> chi2) {
  if (&h1.parent() != &h2.parent()) throw std::invalid_argument("subgroups of different groups");
  require_linear(h1, chi1);
  require_linear(h2, chi2);
  const FiniteGroup& g = h1.parent();
  std::vector<char> seen(g.order(), 0);
  std::vector<FiniteGroup::index_type> queue;
  std::int64_t count = 0;
  for (FiniteGroup::index_type rep = 0; rep < g.order(); ++rep) {
    if (seen[rep]) continue;
    queue.assign(1, rep);
    seen[rep] = 1;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const auto x = queue[head];
      for (auto s : h2.generators()) {
        const auto y = g.multiply(s, x);
        if (!seen[y]) seen[y] = 1, queue.push_back(y);
      }
      for (auto s : h1.generators()) {
        const auto y = g.multiply(x, s);
        if (!seen[y]) seen[y] = 1, queue.push_back(y);
      }
    }
    const auto rep_inv = g.inverse(rep);
    bool supports = true;
    for (std::size_t i = 0; i < h1.order() && supports; ++i) {
      const auto y = g.multiply(g.multiply(rep, h1.elements()[i]), rep_inv);
      const auto j = h2.local_index(y);
      if (j >= 0 && std::abs(chi1[i] - chi2[static_cast<std::size_t>(j)]) > integrality_tolerance) supports = false;
    }
    if (supports) ++count;
  }
  return count;
}

}  // namespace psdec

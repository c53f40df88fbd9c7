#pragma once

/**
 * @file twisted_groups.hpp
 * @brief The delta-twisted Heisenberg group H^delta over O_m, its toral
 *        extension B^delta_m, and the quotient E^delta = B^delta_m / Z.
 *
 * B-elements are written through their lower-triangular matrix entries
 *
 *     [ t1          ]
 *     [ x   t2      ]
 *     [ z   y   t3  ]
 *
 * with the product of ordinary matrix multiplication except that the (3,1)
 * entry picks up delta * y * x' instead of y * x'.
 *
 * E-elements are pairs a |x gamma with a = (x, z) in A = O_m^2 and
 * gamma = [alpha 0; beta gamma] in Gamma, acting by
 * gamma . (x, z) = (alpha x, beta x delta + gamma z).
 *
 * delta is always pi^e for an exponent e (e >= m meaning delta = 0).
 */

#include <array>
#include <cstdint>
#include <functional>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "psdec/char_engine.hpp"
#include "psdec/ring.hpp"

namespace psdec {

struct TwistedContext {
  Ring ring;
  int delta_exp = 0;
  RingElement delta;

  TwistedContext(Ring r, int e) : ring(std::move(r)), delta_exp(e), delta(ring.pi_pow(e)) {
    if (e < 0) throw std::invalid_argument("negative delta exponent");
  }
  bool delta_is_unit() const { return ring.is_unit(delta); }
};

struct BElement {
  RingElement x, y, z, t1, t2, t3;
  friend constexpr bool operator==(const BElement&, const BElement&) = default;
};

struct EElement {
  RingElement ax, az;             // a = (x, z) in A
  RingElement alpha, beta, gamma; // [alpha 0; beta gamma] in Gamma
  friend constexpr bool operator==(const EElement&, const EElement&) = default;
};

inline BElement b_identity(const TwistedContext& ctx) {
  const auto& R = ctx.ring;
  return {R.zero(), R.zero(), R.zero(), R.one(), R.one(), R.one()};
}

inline BElement b_multiply(const TwistedContext& ctx, const BElement& g, const BElement& h) {
  const auto& R = ctx.ring;
  return {
      R.add(R.mul(g.x, h.t1), R.mul(g.t2, h.x)),
      R.add(R.mul(g.y, h.t2), R.mul(g.t3, h.y)),
      R.add(R.add(R.mul(g.z, h.t1), R.mul(ctx.delta, R.mul(g.y, h.x))), R.mul(g.t3, h.z)),
      R.mul(g.t1, h.t1),
      R.mul(g.t2, h.t2),
      R.mul(g.t3, h.t3),
  };
}

inline BElement b_inverse(const TwistedContext& ctx, const BElement& g) {
  const auto& R = ctx.ring;
  const auto i1 = R.inv(g.t1), i2 = R.inv(g.t2), i3 = R.inv(g.t3);
  const auto x = R.neg(R.mul(R.mul(g.x, i1), i2));
  const auto y = R.neg(R.mul(R.mul(g.y, i2), i3));
  const auto z = R.neg(R.mul(i3, R.add(R.mul(g.z, i1), R.mul(ctx.delta, R.mul(g.y, x)))));
  return {x, y, z, i1, i2, i3};
}

inline EElement e_identity(const TwistedContext& ctx) {
  const auto& R = ctx.ring;
  return {R.zero(), R.zero(), R.one(), R.zero(), R.one()};
}

/// gamma . (x, z) = (alpha x, beta x delta + gamma z)
inline std::pair<RingElement, RingElement> e_act(const TwistedContext& ctx, const EElement& g, RingElement x,
                                                 RingElement z) {
  const auto& R = ctx.ring;
  return {R.mul(g.alpha, x), R.add(R.mul(R.mul(g.beta, x), ctx.delta), R.mul(g.gamma, z))};
}

inline EElement e_multiply(const TwistedContext& ctx, const EElement& g, const EElement& h) {
  const auto& R = ctx.ring;
  const auto [hx, hz] = e_act(ctx, g, h.ax, h.az);
  return {
      R.add(g.ax, hx),
      R.add(g.az, hz),
      R.mul(g.alpha, h.alpha),
      R.add(R.mul(g.beta, h.alpha), R.mul(g.gamma, h.beta)),
      R.mul(g.gamma, h.gamma),
  };
}

inline EElement e_inverse(const TwistedContext& ctx, const EElement& g) {
  const auto& R = ctx.ring;
  const auto ia = R.inv(g.alpha), ig = R.inv(g.gamma);
  EElement inv{R.zero(), R.zero(), ia, R.neg(R.mul(R.mul(g.beta, ia), ig)), ig};
  const auto [x, z] = e_act(ctx, inv, g.ax, g.az);
  inv.ax = R.neg(x);
  inv.az = R.neg(z);
  return inv;
}

/// The quotient map B^delta_m -> E^delta.
inline EElement project_to_e(const TwistedContext& ctx, const BElement& g) {
  const auto& R = ctx.ring;
  const auto s = R.inv(g.t1);
  return {R.mul(s, g.x), R.mul(s, g.z), R.mul(s, g.t2), R.mul(s, g.y), R.mul(s, g.t3)};
}

/// Dense indexing of B^delta_m.
class BGroupModel {
 public:
  explicit BGroupModel(TwistedContext ctx) : ctx_(std::move(ctx)) {
    n_ = ctx_.ring.size();
    u_ = ctx_.ring.unit_count();
    order_ = static_cast<std::uint64_t>(n_) * n_ * n_ * u_ * u_ * u_;
    if (order_ > enumeration_bound()) throw std::length_error("B^delta_m exceeds the enumeration bound");
  }

  const TwistedContext& context() const { return ctx_; }
  std::uint32_t order() const { return static_cast<std::uint32_t>(order_); }

  std::uint32_t encode(const BElement& g) const {
    const auto& R = ctx_.ring;
    std::uint64_t i = g.x.code;
    i = i * n_ + g.y.code;
    i = i * n_ + g.z.code;
    i = i * u_ + static_cast<std::uint32_t>(R.unit_index(g.t1));
    i = i * u_ + static_cast<std::uint32_t>(R.unit_index(g.t2));
    i = i * u_ + static_cast<std::uint32_t>(R.unit_index(g.t3));
    return static_cast<std::uint32_t>(i);
  }

  BElement decode(std::uint32_t idx) const {
    const auto& units = ctx_.ring.units();
    BElement g;
    g.t3 = units[idx % u_];
    idx /= u_;
    g.t2 = units[idx % u_];
    idx /= u_;
    g.t1 = units[idx % u_];
    idx /= u_;
    g.z = {idx % n_};
    idx /= n_;
    g.y = {idx % n_};
    g.x = {idx / n_};
    return g;
  }

  std::uint32_t multiply(std::uint32_t a, std::uint32_t b) const {
    return encode(b_multiply(ctx_, decode(a), decode(b)));
  }
  std::uint32_t identity() const { return encode(b_identity(ctx_)); }

 private:
  TwistedContext ctx_;
  std::uint32_t n_ = 0, u_ = 0;
  std::uint64_t order_ = 0;
};

/// Dense indexing of E^delta.
class EGroupModel {
 public:
  explicit EGroupModel(TwistedContext ctx) : ctx_(std::move(ctx)) {
    n_ = ctx_.ring.size();
    u_ = ctx_.ring.unit_count();
    order_ = static_cast<std::uint64_t>(n_) * n_ * u_ * n_ * u_;
    if (order_ > enumeration_bound()) throw std::length_error("E^delta exceeds the enumeration bound");
  }

  const TwistedContext& context() const { return ctx_; }
  std::uint32_t order() const { return static_cast<std::uint32_t>(order_); }

  std::uint32_t encode(const EElement& g) const {
    const auto& R = ctx_.ring;
    std::uint64_t i = g.ax.code;
    i = i * n_ + g.az.code;
    i = i * u_ + static_cast<std::uint32_t>(R.unit_index(g.alpha));
    i = i * n_ + g.beta.code;
    i = i * u_ + static_cast<std::uint32_t>(R.unit_index(g.gamma));
    return static_cast<std::uint32_t>(i);
  }

  EElement decode(std::uint32_t idx) const {
    const auto& units = ctx_.ring.units();
    EElement g;
    g.gamma = units[idx % u_];
    idx /= u_;
    g.beta = {idx % n_};
    idx /= n_;
    g.alpha = units[idx % u_];
    idx /= u_;
    g.az = {idx % n_};
    g.ax = {idx / n_};
    return g;
  }

  std::uint32_t multiply(std::uint32_t a, std::uint32_t b) const {
    return encode(e_multiply(ctx_, decode(a), decode(b)));
  }
  std::uint32_t inverse(std::uint32_t a) const { return encode(e_inverse(ctx_, decode(a))); }
  std::uint32_t identity() const { return encode(e_identity(ctx_)); }

  /// E^delta as a FiniteGroup with classes computed.
  std::shared_ptr<const FiniteGroup> make_group() const {
    auto self = std::make_shared<const EGroupModel>(*this);
    return std::make_shared<const FiniteGroup>(
        order(), [self](std::uint32_t a, std::uint32_t b) { return self->multiply(a, b); }, identity(),
        [self](std::uint32_t a) { return self->inverse(a); });
  }

 private:
  TwistedContext ctx_;
  std::uint32_t n_ = 0, u_ = 0;
  std::uint64_t order_ = 0;
};

/// The center of B^delta_m: elements commuting with a generating set.
inline std::vector<BElement> compute_center(const TwistedContext& ctx) {
  const BGroupModel model(ctx);
  const auto mul = [&model](std::uint32_t a, std::uint32_t b) { return model.multiply(a, b); };
  const auto gens = greedy_generators(model.order(), mul, model.identity());
  std::vector<BElement> center;
  for (std::uint32_t z = 0; z < model.order(); ++z) {
    bool central = true;
    for (auto s : gens)
      if (mul(z, s) != mul(s, z)) {
        central = false;
        break;
      }
    if (central) center.push_back(model.decode(z));
  }
  return center;
}

enum class SubgroupKind { A, Theta, Gamma, N_r, Q_r, Delta, ADelta, ThetaIJ };

struct SubgroupSpec {
  SubgroupKind kind = SubgroupKind::A;
  std::array<int, 3> r{0, 0, 0};  // N_r, Q_r
  RingElement eps{};              // Delta, ADelta
  int i = 0, j = 0;               // ThetaIJ
};

inline void require_valid(const SubgroupSpec& spec, const Ring& ring) {
  if (spec.kind == SubgroupKind::N_r || spec.kind == SubgroupKind::Q_r) {
    const auto& r = spec.r;
    if (r[0] < 0 || r[1] < 0 || r[2] < 0) throw std::invalid_argument("negative exponent in r");
    if (r[2] > r[0] + r[1]) throw std::invalid_argument("r3 > r1 + r2: not a subgroup");
  }
  if (spec.kind == SubgroupKind::ThetaIJ && (spec.i < 0 || spec.j < 0 || spec.i > ring.m() || spec.j > ring.m()))
    throw std::invalid_argument("orbit label out of range");
}

namespace detail {

inline std::vector<RingElement> ideal(const Ring& R, int k) {
  std::vector<RingElement> out;
  for (auto x : R.elements())
    if (R.val(x) >= k) out.push_back(x);
  return out;
}

inline std::vector<RingElement> one_plus_ideal(const Ring& R, int k) {
  std::vector<RingElement> out;
  for (auto u : R.units())
    if (R.val(R.sub(u, R.one())) >= k) out.push_back(u);
  return out;
}

}  // namespace detail

/// Q_r (or N_r when `with_torus` is false) as a subgroup of B^delta_m.
inline std::vector<BElement> b_subgroup_elements(const TwistedContext& ctx, const SubgroupSpec& spec) {
  if (spec.kind != SubgroupKind::N_r && spec.kind != SubgroupKind::Q_r)
    throw std::invalid_argument("only N_r and Q_r are defined inside B");
  require_valid(spec, ctx.ring);
  const auto& R = ctx.ring;
  const std::vector<RingElement> one{R.one()};
  const auto& tori = spec.kind == SubgroupKind::Q_r ? R.units() : one;
  std::vector<BElement> out;
  for (auto x : detail::ideal(R, spec.r[0]))
    for (auto y : detail::ideal(R, spec.r[1]))
      for (auto z : detail::ideal(R, spec.r[2]))
        for (auto t1 : tori)
          for (auto t2 : tori)
            for (auto t3 : tori) out.push_back({x, y, z, t1, t2, t3});
  return out;
}

/// Explicit element list of a distinguished subgroup of E^delta.
inline std::vector<EElement> subgroup_elements(const TwistedContext& ctx, const SubgroupSpec& spec) {
  require_valid(spec, ctx.ring);
  const auto& R = ctx.ring;
  const auto zero = R.zero(), one = R.one();
  std::vector<EElement> out;
  switch (spec.kind) {
    case SubgroupKind::A:
      for (auto x : R.elements())
        for (auto z : R.elements()) out.push_back({x, z, one, zero, one});
      break;
    case SubgroupKind::Theta:
      for (auto a : R.units())
        for (auto g : R.units()) out.push_back({zero, zero, a, zero, g});
      break;
    case SubgroupKind::Gamma:
      for (auto a : R.units())
        for (auto b : R.elements())
          for (auto g : R.units()) out.push_back({zero, zero, a, b, g});
      break;
    case SubgroupKind::N_r:
    case SubgroupKind::Q_r: {
      // Image of the B-subgroup; Q_r maps onto N_r Theta.
      for (const auto& b : b_subgroup_elements(ctx, spec)) {
        if (spec.kind == SubgroupKind::Q_r && b.t1 != one) continue;
        out.push_back(project_to_e(ctx, b));
      }
      break;
    }
    case SubgroupKind::ThetaIJ: {
      const int m = R.m();
      for (auto a : detail::one_plus_ideal(R, m - spec.i))
        for (auto g : detail::one_plus_ideal(R, m - spec.j)) out.push_back({zero, zero, a, zero, g});
      break;
    }
    case SubgroupKind::Delta:
    case SubgroupKind::ADelta: {
      std::vector<std::pair<RingElement, RingElement>> delta;  // (alpha, beta)
      if (R.is_unit(spec.eps)) {
        const auto inv_eps = R.inv(spec.eps);
        for (auto a : R.units()) delta.emplace_back(a, R.mul(inv_eps, R.sub(one, a)));
      } else {
        for (auto b : R.elements()) delta.emplace_back(R.sub(one, R.mul(spec.eps, b)), b);
      }
      if (spec.kind == SubgroupKind::Delta) {
        for (auto [a, b] : delta) out.push_back({zero, zero, a, b, one});
      } else {
        for (auto x : R.elements())
          for (auto z : R.elements())
            for (auto [a, b] : delta) out.push_back({x, z, a, b, one});
      }
      break;
    }
  }
  return out;
}

/// Phase of phi_{xi,zeta}(x, z) = psi(u (xi x + zeta z)) over the denominator p^m.
inline std::uint32_t phi_phase(const Ring& R, RingElement psi_unit, RingElement xi, RingElement zeta, RingElement x,
                               RingElement z) {
  return R.trace_phase(R.mul(psi_unit, R.add(R.mul(xi, x), R.mul(zeta, z))));
}

/// Brute-force stabilizer of phi_{xi,zeta} in Gamma: all gamma with
/// phi(gamma . a) = phi(a) for every a in A.
inline std::vector<EElement> stabilizer_of_character(const TwistedContext& ctx, RingElement xi, RingElement zeta,
                                                     RingElement psi_unit) {
  const auto& R = ctx.ring;
  if (!R.is_unit(xi) || !R.is_unit(zeta)) throw std::invalid_argument("stabilizer lemma needs unit xi and zeta");
  if (!R.is_unit(psi_unit)) throw std::invalid_argument("psi twist must be a unit");
  std::vector<EElement> out;
  for (const auto& g : subgroup_elements(ctx, {SubgroupKind::Gamma})) {
    bool fixes = true;
    for (auto x : R.elements()) {
      for (auto z : R.elements()) {
        const auto [gx, gz] = e_act(ctx, g, x, z);
        if (phi_phase(R, psi_unit, xi, zeta, gx, gz) != phi_phase(R, psi_unit, xi, zeta, x, z)) {
          fixes = false;
          break;
        }
      }
      if (!fixes) break;
    }
    if (fixes) out.push_back(g);
  }
  return out;
}

}  // namespace psdec

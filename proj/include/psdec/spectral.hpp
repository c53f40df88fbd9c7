#pragma once

/**
 * @file spectral.hpp
 * @brief Decomposition of the permutation representations of E^delta.
 *
 * Notation. phi = phi_{xi0,zeta0} is the base character of A (xi0 = zeta0 = 1
 * unless overridden), Theta the diagonal torus in Gamma, Theta_ij the
 * stabilizer in Theta of phi_{pi^i xi0, pi^j zeta0}, and Delta the stabilizer
 * of phi in Gamma.
 *
 *   W_ij        = Ind_{A Theta_ij}^{A Theta} (phi_ij extended trivially)
 *   Wt_ij       = Ind_{A Theta_ij}^{E} (same)
 *   L_sigma     = Ind_{A Delta}^{E} (phi sigma),  sigma a character of Delta
 *   U_r         = Ind_{N_r Theta}^{E} (1),        r = d - c + m rho
 *
 * U_{m rho} = Ind_Theta^E(1) is the level-m piece of the principal series on
 * which everything is tested; U_{m rho - e_i} are the pieces coming from the
 * neighbouring cone points, and V_c^m is what survives after removing them.
 */

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "psdec/abelian.hpp"
#include "psdec/char_engine.hpp"
#include "psdec/report.hpp"
#include "psdec/twisted_groups.hpp"

namespace psdec {

struct OrbitLabel {
  int i = 0, j = 0;
  friend constexpr auto operator<=>(const OrbitLabel&, const OrbitLabel&) = default;
};

struct SigmaLabel {
  int delta_exp = 0;
  std::size_t index = 0;              // position in the dual of Delta
  std::uint32_t exponent = 1;         // phases are over this denominator
  std::vector<std::uint32_t> phases;  // one per element of Delta, in subgroup order
  bool is_new = false;
};

/// E^delta together with the subgroups every computation refers to.
class SpectralContext {
 public:
  SpectralContext(Backend backend, std::uint32_t p, int m, int delta_exp, std::int64_t xi0 = 1, std::int64_t zeta0 = 1)
      : tw_(Ring::make(backend, p, m), delta_exp), model_(tw_) {
    const auto& R = ring();
    if (m < 1) throw std::invalid_argument("spectral computations need m >= 1");
    xi0_ = R.from_int(xi0);
    zeta0_ = R.from_int(zeta0);
    if (!R.is_unit(xi0_) || !R.is_unit(zeta0_)) throw std::invalid_argument("base character needs unit xi and zeta");
    eps_ = R.mul(tw_.delta, R.mul(R.inv(xi0_), zeta0_));
    E_ = model_.make_group();
    a_theta_ = subgroup({SubgroupKind::A}, {SubgroupKind::Theta});
    a_theta_group_ = a_theta_->as_group();
    theta_ = std::make_unique<Subgroup>(*E_, indices(subgroup_elements(tw_, {SubgroupKind::Theta})));
    delta_ = std::make_unique<Subgroup>(*E_, indices(subgroup_elements(tw_, delta_spec())));
    a_delta_ = std::make_unique<Subgroup>(*E_, indices(subgroup_elements(tw_, a_delta_spec())));
  }

  SpectralContext(const SpectralContext&) = delete;
  SpectralContext& operator=(const SpectralContext&) = delete;

  const TwistedContext& twisted() const { return tw_; }
  const Ring& ring() const { return tw_.ring; }
  int m() const { return tw_.ring.m(); }
  std::uint32_t q() const { return tw_.ring.q(); }
  int delta_exp() const { return tw_.delta_exp; }
  bool delta_is_unit() const { return tw_.delta_is_unit(); }
  RingElement xi0() const { return xi0_; }
  RingElement zeta0() const { return zeta0_; }
  RingElement epsilon() const { return eps_; }

  const FiniteGroup& E() const { return *E_; }
  const EGroupModel& model() const { return model_; }
  const Subgroup& a_theta() const { return *a_theta_; }
  const FiniteGroup& a_theta_group() const { return *a_theta_group_; }
  const Subgroup& theta() const { return *theta_; }
  const Subgroup& delta() const { return *delta_; }
  const Subgroup& a_delta() const { return *a_delta_; }

  SubgroupSpec delta_spec() const {
    SubgroupSpec s{SubgroupKind::Delta};
    s.eps = eps_;
    return s;
  }
  SubgroupSpec a_delta_spec() const {
    SubgroupSpec s{SubgroupKind::ADelta};
    s.eps = eps_;
    return s;
  }

  std::vector<FiniteGroup::index_type> indices(const std::vector<EElement>& elems) const {
    std::vector<FiniteGroup::index_type> out;
    out.reserve(elems.size());
    for (const auto& e : elems) out.push_back(model_.encode(e));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  /// Product set of two subgroups given by spec; must itself be a subgroup.
  std::unique_ptr<Subgroup> subgroup(const SubgroupSpec& a, const SubgroupSpec& b) const {
    std::vector<EElement> prod;
    for (const auto& x : subgroup_elements(tw_, a))
      for (const auto& y : subgroup_elements(tw_, b)) prod.push_back(e_multiply(tw_, x, y));
    return std::make_unique<Subgroup>(*E_, indices(prod));
  }

  /// Phase of phi_{xi,zeta}(x, z) over the denominator |O_m|.
  std::uint32_t phi_phase(RingElement xi, RingElement zeta, RingElement x, RingElement z) const {
    return psdec::phi_phase(ring(), ring().one(), xi, zeta, x, z);
  }

 private:
  TwistedContext tw_;
  EGroupModel model_;
  RingElement xi0_, zeta0_, eps_;
  std::shared_ptr<const FiniteGroup> E_;
  std::unique_ptr<Subgroup> a_theta_;
  std::shared_ptr<const FiniteGroup> a_theta_group_;
  std::unique_ptr<Subgroup> theta_, delta_, a_delta_;
};

/// Orbits of Theta on the characters phi_{xi,zeta} of A, found by acting on
/// value tables and matching them against the table of every character.
inline std::map<OrbitLabel, std::vector<std::pair<RingElement, RingElement>>> theta_orbit_partition(
    const SpectralContext& ctx) {
  const auto& R = ctx.ring();
  const auto& tw = ctx.twisted();
  const auto& elems = R.elements();
  const std::size_t n = elems.size();

  auto table_of = [&](RingElement xi, RingElement zeta) {
    std::vector<std::uint32_t> t;
    t.reserve(n * n);
    for (auto x : elems)
      for (auto z : elems) t.push_back(ctx.phi_phase(xi, zeta, x, z));
    return t;
  };

  std::map<std::vector<std::uint32_t>, std::size_t> lookup;
  std::vector<std::pair<RingElement, RingElement>> chars;
  for (auto xi : elems)
    for (auto zeta : elems) {
      lookup.emplace(table_of(xi, zeta), chars.size());
      chars.emplace_back(xi, zeta);
    }
  if (lookup.size() != chars.size()) throw std::logic_error("characters of A are not distinct");

  const auto thetas = subgroup_elements(tw, {SubgroupKind::Theta});
  std::vector<char> done(chars.size(), 0);
  std::map<OrbitLabel, std::vector<std::pair<RingElement, RingElement>>> out;
  for (std::size_t c = 0; c < chars.size(); ++c) {
    if (done[c]) continue;
    std::vector<std::size_t> orbit;
    for (const auto& th : thetas) {
      // (theta . phi)(a) = phi(theta^{-1} . a)
      const auto inv = e_inverse(tw, th);
      std::vector<std::uint32_t> t;
      t.reserve(n * n);
      for (auto x : elems)
        for (auto z : elems) {
          const auto [gx, gz] = e_act(tw, inv, x, z);
          t.push_back(ctx.phi_phase(chars[c].first, chars[c].second, gx, gz));
        }
      const std::size_t k = lookup.at(t);
      if (!done[k]) {
        done[k] = 1;
        orbit.push_back(k);
      }
    }
    const OrbitLabel label{R.val(chars[c].first), R.val(chars[c].second)};
    auto& slot = out[label];
    if (!slot.empty()) throw std::logic_error("two Theta-orbits share a valuation label");
    for (auto k : orbit) {
      if (OrbitLabel{R.val(chars[k].first), R.val(chars[k].second)} != label)
        throw std::logic_error("Theta-orbit mixes valuation labels");
      slot.push_back(chars[k]);
    }
  }
  return out;
}

/// |pi^i O_m^x|: q^{m-i-1}(q-1) for i < m, 1 for i = m.
inline std::int64_t valuation_shell_size(std::int64_t q, int m, int i) {
  if (i >= m) return 1;
  std::int64_t s = q - 1;
  for (int k = 0; k < m - i - 1; ++k) s *= q;
  return s;
}

namespace detail {

inline SubgroupSpec theta_ij_spec(int i, int j) {
  SubgroupSpec s{SubgroupKind::ThetaIJ};
  s.i = i;
  s.j = j;
  return s;
}

inline void require_label(const SpectralContext& ctx, int i, int j) {
  if (i < 0 || j < 0 || i > ctx.m() || j > ctx.m()) throw std::invalid_argument("orbit label out of range");
}

/// phi_{pi^i xi0, pi^j zeta0} extended trivially over Theta_ij, listed on the elements of `h`.
inline std::vector<cplx> phi_ij_values(const SpectralContext& ctx, const Subgroup& h, int i, int j) {
  const auto& R = ctx.ring();
  const auto xi = R.mul(R.pi_pow(i), ctx.xi0()), zeta = R.mul(R.pi_pow(j), ctx.zeta0());
  std::vector<cplx> v;
  v.reserve(h.order());
  for (auto g : h.elements()) {
    const auto e = ctx.model().decode(g);
    v.push_back(root_of_unity(ctx.phi_phase(xi, zeta, e.ax, e.az), R.size()));
  }
  return v;
}

}  // namespace detail

/// chi of W_ij on the standalone group A Theta.
inline ClassFunction w_character(const SpectralContext& ctx, int i, int j) {
  detail::require_label(ctx, i, j);
  const auto h = ctx.subgroup({SubgroupKind::A}, detail::theta_ij_spec(i, j));
  const auto local = relative_subgroup(*h, ctx.a_theta(), ctx.a_theta_group());
  const auto v = detail::phi_ij_values(ctx, *h, i, j);
  return induce_character(local, std::span<const cplx>(v));
}

/// chi of Wt_ij on E^delta.
inline ClassFunction w_tilde(const SpectralContext& ctx, int i, int j) {
  detail::require_label(ctx, i, j);
  const auto h = ctx.subgroup({SubgroupKind::A}, detail::theta_ij_spec(i, j));
  const auto v = detail::phi_ij_values(ctx, *h, i, j);
  return induce_character(*h, std::span<const cplx>(v));
}

/// Elements of Delta (as positions in ctx.delta()) lying over the identity of
/// the level m-1 stabilizer.
inline std::vector<std::uint32_t> delta_reduction_kernel(const SpectralContext& ctx) {
  const auto& R = ctx.ring();
  std::vector<std::uint32_t> out;
  for (std::uint32_t k = 0; k < ctx.delta().order(); ++k) {
    const auto e = ctx.model().decode(ctx.delta().elements()[k]);
    const bool in_kernel =
        R.is_unit(ctx.epsilon()) ? R.val(R.sub(e.alpha, R.one())) >= ctx.m() - 1 : R.val(e.beta) >= ctx.m() - 1;
    if (in_kernel) out.push_back(k);
  }
  return out;
}

/// The abelian group Delta on positions 0..|Delta|-1.
inline AbelianGroup delta_as_abelian(const SpectralContext& ctx) {
  const Subgroup* d = &ctx.delta();
  const FiniteGroup* E = &ctx.E();
  return {static_cast<std::uint32_t>(d->order()), static_cast<std::uint32_t>(d->local_index(E->identity())),
          [d, E](std::uint32_t a, std::uint32_t b) {
            return static_cast<std::uint32_t>(d->local_index(E->multiply(d->elements()[a], d->elements()[b])));
          }};
}

/// All characters of Delta, each flagged new unless it factors through level m-1.
inline std::vector<SigmaLabel> sigma_labels(const SpectralContext& ctx) {
  const auto dual = abelian_dual(delta_as_abelian(ctx));
  const auto kernel = delta_reduction_kernel(ctx);
  std::vector<SigmaLabel> out;
  for (std::size_t s = 0; s < dual.size(); ++s)
    out.push_back({ctx.delta_exp(), s, dual.exponent(), dual.phases(s), !is_pullback(dual, s, kernel)});
  return out;
}

/// chi of L_sigma on E^delta.
inline ClassFunction l_sigma_character(const SpectralContext& ctx, const SigmaLabel& sigma) {
  if (sigma.delta_exp != ctx.delta_exp() || sigma.phases.size() != ctx.delta().order())
    throw std::invalid_argument("sigma is not a character of this stabilizer");
  const auto& R = ctx.ring();
  const auto& ad = ctx.a_delta();
  std::vector<cplx> v;
  v.reserve(ad.order());
  for (auto g : ad.elements()) {
    const auto e = ctx.model().decode(g);
    const EElement d{R.zero(), R.zero(), e.alpha, e.beta, e.gamma};
    const auto k = ctx.delta().local_index(ctx.model().encode(d));
    if (k < 0) throw std::logic_error("A Delta element with Gamma-part outside Delta");
    v.push_back(root_of_unity(ctx.phi_phase(ctx.xi0(), ctx.zeta0(), e.ax, e.az), R.size()) *
                root_of_unity(sigma.phases[static_cast<std::size_t>(k)], sigma.exponent));
  }
  return induce_character(ad, std::span<const cplx>(v));
}

inline SubgroupSpec r_spec(SubgroupKind kind, std::array<int, 3> r) {
  SubgroupSpec s{kind};
  s.r = r;
  return s;
}

/// N_r Theta as a subgroup of E^delta (requires 0 <= r <= m rho).
inline std::unique_ptr<Subgroup> n_r_theta(const SpectralContext& ctx, std::array<int, 3> r) {
  for (int k : r)
    if (k > ctx.m()) throw std::invalid_argument("r exceeds m rho");
  return std::make_unique<Subgroup>(ctx.E(), ctx.indices(subgroup_elements(ctx.twisted(), r_spec(SubgroupKind::Q_r, r))));
}

/// chi of U_r = Ind_{N_r Theta}^E (1).
inline ClassFunction u_dm_character(const SpectralContext& ctx, std::array<int, 3> r) {
  const auto h = n_r_theta(ctx, r);
  const std::vector<cplx> ones(h->order(), 1.0);
  return induce_character(*h, std::span<const cplx>(ones));
}

inline std::array<int, 3> m_rho(const SpectralContext& ctx) { return {ctx.m(), ctx.m(), ctx.m()}; }

inline std::array<int, 3> m_rho_minus(const SpectralContext& ctx, int i) {
  auto r = m_rho(ctx);
  --r[static_cast<std::size_t>(i - 1)];
  return r;
}

/// Expected number of new sigma: q-2 (unit, m=1), q^{m-2}(q-1)^2 (unit, m>=2), q^m - q^{m-1} (non-unit).
inline std::int64_t expected_new_count(std::int64_t q, int m, bool unit) {
  if (!unit) return valuation_shell_size(q, m + 1, 1);
  if (m == 1) return q - 2;
  return valuation_shell_size(q, m, 1) * (q - 1);
}

inline std::int64_t expected_l_degree(std::int64_t q, int m, bool unit) {
  std::int64_t d = (q - 1) * (unit ? 1 : (q - 1));
  for (int k = 0; k < 2 * m - (unit ? 1 : 2); ++k) d *= q;
  return d;
}

inline json context_params(const SpectralContext& ctx) {
  return {{"p", ctx.ring().p()},
          {"m", ctx.m()},
          {"delta_exp", ctx.delta_exp()},
          {"backend", to_string(ctx.ring().backend())},
          {"xi", ctx.xi0().code},
          {"zeta", ctx.zeta0().code}};
}

/// |E|, center and projection, and the stabilizer lemma.
inline Report verify_group_structure(const SpectralContext& ctx) {
  Report rep{"group-structure", context_params(ctx)};
  const auto& tw = ctx.twisted();
  const std::int64_t n = ctx.ring().size(), u = ctx.ring().unit_count();
  rep.require(static_cast<std::int64_t>(ctx.E().order()) == n * n * n * u * u, "|E| != q^{3m} |O_m^x|^2");

  const BGroupModel b(tw);
  const auto center = compute_center(tw);
  std::vector<char> image(ctx.E().order(), 0);
  std::size_t kernel = 0, image_size = 0;
  const auto e_id = ctx.model().identity();
  for (std::uint32_t g = 0; g < b.order(); ++g) {
    const auto e = ctx.model().encode(project_to_e(tw, b.decode(g)));
    if (e == e_id) ++kernel;
    if (!image[e]) image[e] = 1, ++image_size;
  }
  // The kernel is always the scalars. It is the whole center only for q >= 3:
  // when q = 2 the torus is too small to move z in pi^{m-1} O_m.
  rep.require(static_cast<std::int64_t>(kernel) == u, "kernel of the projection is not the scalars");
  std::size_t central_in_kernel = 0;
  for (const auto& z : center)
    if (ctx.model().encode(project_to_e(tw, z)) == e_id) ++central_in_kernel;
  rep.require(central_in_kernel == kernel, "a scalar is not central");
  if (ctx.q() >= 3) rep.require(center.size() == kernel, "kernel of the projection differs from the center");
  rep.require(image_size == ctx.E().order(), "projection is not surjective");
  rep.require(image_size * kernel == b.order(), "|image| |kernel| != |B|");

  // Homomorphy: every pair when |B|^2 is small, otherwise a fixed sample.
  const std::uint64_t bo = b.order();
  std::size_t pairs = 0, bad = 0;
  auto check_pair = [&](std::uint32_t g, std::uint32_t h) {
    ++pairs;
    const auto lhs = project_to_e(tw, b.decode(b.multiply(g, h)));
    const auto rhs = e_multiply(tw, project_to_e(tw, b.decode(g)), project_to_e(tw, b.decode(h)));
    if (!(lhs == rhs)) ++bad;
  };
  if (bo * bo <= 1'000'000) {
    for (std::uint32_t g = 0; g < bo; ++g)
      for (std::uint32_t h = 0; h < bo; ++h) check_pair(g, h);
  } else {
    std::mt19937_64 rng(0xb0b);
    std::uniform_int_distribution<std::uint32_t> pick(0, b.order() - 1);
    for (int k = 0; k < 10'000; ++k) check_pair(pick(rng), pick(rng));
  }
  rep.require(bad == 0, "projection is not a homomorphism");

  const auto stab = stabilizer_of_character(tw, ctx.xi0(), ctx.zeta0(), ctx.ring().one());
  rep.require(ctx.indices(stab) == ctx.delta().elements(), "brute-force stabilizer differs from Delta");
  // Orbit of phi under Gamma, by distinct value tables of phi(gamma^{-1} . a).
  const auto gamma = subgroup_elements(tw, {SubgroupKind::Gamma});
  std::set<std::vector<std::uint32_t>> orbit;
  for (const auto& g : gamma) {
    const auto inv = e_inverse(tw, g);
    std::vector<std::uint32_t> t;
    for (auto x : ctx.ring().elements())
      for (auto z : ctx.ring().elements()) {
        const auto [gx, gz] = e_act(tw, inv, x, z);
        t.push_back(ctx.phi_phase(ctx.xi0(), ctx.zeta0(), gx, gz));
      }
    orbit.insert(std::move(t));
  }
  rep.require(gamma.size() == orbit.size() * stab.size(), "|Gamma| != |orbit| |stabilizer|");
  rep.detail["gamma_orbit"] = orbit.size();

  rep.detail["order_B"] = b.order();
  rep.detail["order_E"] = ctx.E().order();
  rep.detail["center"] = center.size();
  rep.detail["classes_E"] = ctx.E().class_count();
  rep.detail["stabilizer"] = stab.size();
  rep.detail["homomorphism_pairs"] = pairs;
  return rep;
}


/// Theta-orbit sizes on the dual of A, and irreducibility of every W_ij.
inline Report verify_orbits(const SpectralContext& ctx) {
  Report rep{"theta-orbits", context_params(ctx)};
  const std::int64_t q = ctx.q();
  const int m = ctx.m();
  const auto parts = theta_orbit_partition(ctx);
  std::int64_t total = 0, w_total = 0;
  json sizes = json::object();
  for (int i = 0; i <= m; ++i)
    for (int j = 0; j <= m; ++j) {
      const auto it = parts.find({i, j});
      const std::int64_t size = it == parts.end() ? 0 : static_cast<std::int64_t>(it->second.size());
      const std::string key = std::to_string(i) + "," + std::to_string(j);
      sizes[key] = size;
      total += size;
      rep.require(size == valuation_shell_size(q, m, i) * valuation_shell_size(q, m, j), "orbit size of " + key);

      const auto w = w_character(ctx, i, j);
      const auto deg = round_integral(w.degree(), "degree");
      rep.require(inner_product(w, w) == 1, "W_" + key + " is not irreducible");
      rep.require(deg == size, "deg W_" + key + " != orbit size");
      w_total += deg;
    }
  rep.require(parts.size() == static_cast<std::size_t>((m + 1) * (m + 1)), "orbit count");
  rep.require(total == static_cast<std::int64_t>(ctx.ring().size()) * ctx.ring().size(), "orbits do not cover A^");
  rep.require(w_total == total, "sum of deg W_ij != q^{2m}");
  rep.detail["orbit_sizes"] = sizes;
  return rep;
}

/// Wt_00 is the multiplicity-free sum of the L_sigma, all of one dimension.
inline Report verify_w00_decomposition(const SpectralContext& ctx) {
  Report rep{"w00-decomposition", context_params(ctx)};
  const std::int64_t q = ctx.q();
  const int m = ctx.m();
  const bool unit = ctx.delta_is_unit();
  const auto w00 = w_tilde(ctx, 0, 0);
  const auto sigmas = sigma_labels(ctx);
  std::vector<ClassFunction> ls;
  std::int64_t deg_sum = 0;
  std::set<std::int64_t> degrees;
  for (const auto& s : sigmas) {
    ls.push_back(l_sigma_character(ctx, s));
    const auto d = round_integral(ls.back().degree(), "degree");
    degrees.insert(d);
    deg_sum += d;
    rep.require(inner_product(w00, ls.back()) == 1, "<Wt_00, L_sigma> != 1");
  }
  for (std::size_t a = 0; a < ls.size(); ++a)
    for (std::size_t b = a; b < ls.size(); ++b)
      rep.require(inner_product(ls[a], ls[b]) == (a == b ? 1 : 0), "L_sigma not orthonormal");

  const auto w_deg = round_integral(w00.degree(), "degree");
  const std::int64_t expected_count =
      unit ? static_cast<std::int64_t>(ctx.ring().unit_count()) : static_cast<std::int64_t>(ctx.ring().size());
  rep.require(static_cast<std::int64_t>(sigmas.size()) == expected_count, "|Sigma|");
  rep.require(deg_sum == w_deg, "sum of deg L_sigma != deg Wt_00");
  rep.require(degrees.size() == 1 && *degrees.begin() == expected_l_degree(q, m, unit), "deg L_sigma");
  rep.require(inner_product(w00, w00) == static_cast<std::int64_t>(sigmas.size()), "Wt_00 is not multiplicity free");
  rep.require(w_deg == static_cast<std::int64_t>(ctx.E().order() / ctx.a_theta().order() *
                                                  ctx.a_theta().order() / (ctx.ring().size() * ctx.ring().size())),
              "deg Wt_00 != [E:A]");

  rep.detail["sigma_count"] = sigmas.size();
  rep.detail["l_degree"] = degrees.empty() ? 0 : *degrees.begin();
  rep.detail["w00_degree"] = w_deg;
  return rep;
}

/// Wt_ij inside the U_d, and multiplicity one of each L_sigma in U_c.
inline Report verify_embedding_props(const SpectralContext& ctx) {
  Report rep{"embedding", context_params(ctx)};
  const int m = ctx.m();
  const auto u_c = u_dm_character(ctx, m_rho(ctx));
  const auto u1 = u_dm_character(ctx, m_rho_minus(ctx, 1));
  const auto u3 = u_dm_character(ctx, m_rho_minus(ctx, 3));

  ClassFunction sum{&ctx.E(), std::vector<cplx>(ctx.E().class_count(), 0.0)};
  json mult = json::object();
  for (int i = 0; i <= m; ++i)
    for (int j = 0; j <= m; ++j) {
      const auto w = w_tilde(ctx, i, j);
      sum += w;
      const std::string key = std::to_string(i) + "," + std::to_string(j);
      const auto norm = inner_product(w, w);
      if (i > 0) {
        const auto h = inner_product(u1, w);
        rep.require(h >= 1 && h >= norm, "Wt_" + key + " not inside U_{m rho - e1}");
        mult["e1:" + key] = h;
      }
      if (j > 0) {
        const auto h = inner_product(u3, w);
        rep.require(h >= 1 && h >= norm, "Wt_" + key + " not inside U_{m rho - e3}");
        mult["e3:" + key] = h;
      }
    }
  rep.require(distance(sum, u_c) < integrality_tolerance, "Ind_Theta^E 1 != sum of Wt_ij");
  rep.require(inner_product(u_c, trivial_character(ctx.E())) == 1, "U_c is not transitive");

  // New sigma occur once in U_c; pulled-back sigma may repeat through the other Wt_ij.
  std::map<std::string, std::int64_t> in_u_c;
  for (const auto& s : sigma_labels(ctx)) {
    const auto h = inner_product(u_c, l_sigma_character(ctx, s));
    if (s.is_new)
      rep.require(h == 1, "<U_c, L_sigma> != 1 for a new sigma");
    else
      rep.require(h >= 1, "<U_c, L_sigma> = 0 for a pulled-back sigma");
    ++in_u_c[std::string(s.is_new ? "new" : "pullback") + ":" + std::to_string(h)];
  }
  rep.detail["multiplicities"] = mult;
  rep.detail["l_sigma_in_u_c"] = in_u_c;
  return rep;
}

/// Hom(L_sigma, U_{c - e_i}) vanishes exactly for the new sigma.
inline Report verify_hom_pattern(const SpectralContext& ctx) {
  Report rep{"hom-pattern", context_params(ctx)};
  const std::array<ClassFunction, 3> u{u_dm_character(ctx, m_rho_minus(ctx, 1)),
                                       u_dm_character(ctx, m_rho_minus(ctx, 2)),
                                       u_dm_character(ctx, m_rho_minus(ctx, 3))};
  const bool unit = ctx.delta_is_unit();
  std::map<std::string, std::int64_t> patterns;
  std::size_t new_count = 0;
  for (const auto& s : sigma_labels(ctx)) {
    const auto l = l_sigma_character(ctx, s);
    std::array<std::int64_t, 3> h{};
    for (int k = 0; k < 3; ++k) h[static_cast<std::size_t>(k)] = inner_product(l, u[static_cast<std::size_t>(k)]);
    const bool hit = std::max({h[0], h[1], h[2]}) >= 1;
    rep.require(hit == !s.is_new, "Hom pattern does not match pullback status");
    rep.require(h[2] == 0, "Hom(L_sigma, U_{m rho - e3}) != 0");
    if (!unit) rep.require(h[0] == 0, "Hom(L_sigma, U_{m rho - e1}) != 0 for non-unit delta");
    if (s.is_new) ++new_count;
    ++patterns[std::string(s.is_new ? "new" : "pullback") + ":" + std::to_string(h[0]) + std::to_string(h[1]) +
               std::to_string(h[2])];
  }
  rep.require(static_cast<std::int64_t>(new_count) == expected_new_count(ctx.q(), ctx.m(), unit), "number of new sigma");
  rep.detail["patterns"] = patterns;
  rep.detail["new_count"] = new_count;
  return rep;
}

/// The sigma labelling the constituents of V_c^m: exactly the new ones.
inline std::vector<SigmaLabel> vcm_constituents(const SpectralContext& ctx) {
  std::vector<SigmaLabel> out;
  for (auto& s : sigma_labels(ctx))
    if (s.is_new) out.push_back(std::move(s));
  return out;
}

inline Report verify_vcm(const SpectralContext& ctx) {
  Report rep{"vcm-constituents", context_params(ctx)};
  const auto v = vcm_constituents(ctx);
  const auto expected = expected_new_count(ctx.q(), ctx.m(), ctx.delta_is_unit());
  rep.require(static_cast<std::int64_t>(v.size()) == expected, "constituent count");
  rep.detail["count"] = v.size();
  rep.detail["expected"] = expected;
  return rep;
}

/// Everything the group suite checks at one (p, m, e, backend).
inline std::vector<Report> group_suite(Backend backend, std::uint32_t p, int m, int delta_exp, std::int64_t xi0 = 1,
                                       std::int64_t zeta0 = 1) {
  const SpectralContext ctx(backend, p, m, delta_exp, xi0, zeta0);
  return {verify_group_structure(ctx), verify_orbits(ctx),      verify_w00_decomposition(ctx),
          verify_embedding_props(ctx), verify_hom_pattern(ctx), verify_vcm(ctx)};
}

}  // namespace psdec

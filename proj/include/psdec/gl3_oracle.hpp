#pragma once

/**
 * @file gl3_oracle.hpp
 * @brief Matrix-level checks inside GL_3(Z/p^l).
 *
 * For c in the cone, P_c is the group of invertible matrices whose entries
 * below the diagonal lie in pi^{c1} (2,1), pi^{c3} (3,1) and pi^{c2} (3,2).
 * N_c is its lower unipotent part, N+ the upper unipotent matrices, T the
 * diagonal torus and T^m its congruence subgroup 1 + pi^m.
 *
 * For mu(c) >= m the map eta : P_{c - m rho} -> B^delta_m with
 * delta = pi^{kappa(c) - m} reads the subdiagonal entries
 *
 *   g21 = pi^{c1-m} x,  g32 = pi^{c2-m} y,  g31 = pi^{c3-m} z,  t = diag(g) mod pi^m.
 */

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "psdec/cone.hpp"
#include "psdec/report.hpp"
#include "psdec/ring.hpp"
#include "psdec/twisted_groups.hpp"

namespace psdec {

/// 3x3 matrix over a ring, row major, entries (i, j) with 1 <= i, j <= 3.
struct Mat3 {
  std::array<RingElement, 9> a{};
  RingElement& operator()(int i, int j) { return a[static_cast<std::size_t>(3 * (i - 1) + (j - 1))]; }
  RingElement operator()(int i, int j) const { return a[static_cast<std::size_t>(3 * (i - 1) + (j - 1))]; }
  friend bool operator==(const Mat3&, const Mat3&) = default;
};

inline Mat3 mat_identity(const Ring& R) {
  Mat3 g;
  for (int i = 1; i <= 3; ++i)
    for (int j = 1; j <= 3; ++j) g(i, j) = i == j ? R.one() : R.zero();
  return g;
}

inline Mat3 mat_mul(const Ring& R, const Mat3& g, const Mat3& h) {
  Mat3 r;
  for (int i = 1; i <= 3; ++i)
    for (int j = 1; j <= 3; ++j) {
      RingElement s = R.zero();
      for (int k = 1; k <= 3; ++k) s = R.add(s, R.mul(g(i, k), h(k, j)));
      r(i, j) = s;
    }
  return r;
}

inline RingElement mat_det(const Ring& R, const Mat3& g) {
  auto minor = [&](int r1, int r2, int c1, int c2) {
    return R.sub(R.mul(g(r1, c1), g(r2, c2)), R.mul(g(r1, c2), g(r2, c1)));
  };
  RingElement d = R.mul(g(1, 1), minor(2, 3, 2, 3));
  d = R.sub(d, R.mul(g(1, 2), minor(2, 3, 1, 3)));
  return R.add(d, R.mul(g(1, 3), minor(2, 3, 1, 2)));
}

inline Mat3 mat_inverse(const Ring& R, const Mat3& g) {
  const auto det_inv = R.inv(mat_det(R, g));
  Mat3 r;
  for (int i = 1; i <= 3; ++i)
    for (int j = 1; j <= 3; ++j) {
      // Cofactor of (j, i).
      int rows[2], cols[2], nr = 0, nc = 0;
      for (int k = 1; k <= 3; ++k) {
        if (k != j) rows[nr++] = k;
        if (k != i) cols[nc++] = k;
      }
      auto cof = R.sub(R.mul(g(rows[0], cols[0]), g(rows[1], cols[1])), R.mul(g(rows[0], cols[1]), g(rows[1], cols[0])));
      if ((i + j) % 2 == 1) cof = R.neg(cof);
      r(i, j) = R.mul(cof, det_inv);
    }
  return r;
}

/// I + x e_ij
inline Mat3 u_elem(const Ring& R, int i, int j, RingElement x) {
  if (i == j) throw std::invalid_argument("elementary unipotent needs i != j");
  auto g = mat_identity(R);
  g(i, j) = x;
  return g;
}

/// I + (x - 1) e_ii
inline Mat3 s_elem(const Ring& R, int i, RingElement x) {
  auto g = mat_identity(R);
  g(i, i) = x;
  return g;
}

inline Mat3 diag(const Ring& R, RingElement t1, RingElement t2, RingElement t3) {
  auto g = mat_identity(R);
  g(1, 1) = t1;
  g(2, 2) = t2;
  g(3, 3) = t3;
  return g;
}

/// Exponents of the (2,1), (3,1), (3,2) ideals of P_c.
struct LowerPattern {
  int e21 = 0, e31 = 0, e32 = 0;
};

inline LowerPattern pattern_of(const ConePoint& c) { return {c.c1, c.c3, c.c2}; }

inline LowerPattern pattern_of(const ConePoint& c, int m) { return {c.c1 - m, c.c3 - m, c.c2 - m}; }

inline bool in_pattern(const Ring& R, const Mat3& g, const LowerPattern& p) {
  return R.val(g(2, 1)) >= p.e21 && R.val(g(3, 1)) >= p.e31 && R.val(g(3, 2)) >= p.e32;
}

/// Membership in P_c (mod pi^l) and a uniform sampler, for l >= c3.
class ParahoricOracle {
 public:
  ParahoricOracle(Ring ring, LowerPattern pattern) : R_(std::move(ring)), pat_(pattern) {
    if (pat_.e21 < 0 || pat_.e31 < 0 || pat_.e32 < 0) throw std::invalid_argument("negative ideal exponent");
    if (std::max({pat_.e21, pat_.e31, pat_.e32}) > R_.m())
      throw std::invalid_argument("level too small to detect the congruence pattern");
  }

  static ParahoricOracle for_point(Ring ring, const ConePoint& c) {
    require_in_cone(c);
    if (ring.m() < c.c3) throw std::invalid_argument("level l must be at least c3");
    return {std::move(ring), pattern_of(c)};
  }

  const Ring& ring() const { return R_; }
  const LowerPattern& pattern() const { return pat_; }

  bool contains(const Mat3& g) const { return in_pattern(R_, g, pat_) && R_.is_unit(mat_det(R_, g)); }

  template <class Rng>
  Mat3 sample(Rng& rng) const {
    std::uniform_int_distribution<std::uint32_t> pick(0, R_.size() - 1);
    auto any = [&] { return RingElement{pick(rng)}; };
    auto in_ideal = [&](int k) { return R_.mul(any(), R_.pi_pow(k)); };
    for (;;) {
      Mat3 g;
      for (int i = 1; i <= 3; ++i)
        for (int j = i; j <= 3; ++j) g(i, j) = any();
      g(2, 1) = in_ideal(pat_.e21);
      g(3, 1) = in_ideal(pat_.e31);
      g(3, 2) = in_ideal(pat_.e32);
      if (R_.is_unit(mat_det(R_, g))) return g;
    }
  }

  /// [P_pattern : P_finer] as the product of the ideal indices.
  std::int64_t index_in(const LowerPattern& finer) const {
    std::int64_t idx = 1;
    const std::int64_t q = R_.q();
    for (int k = 0; k < (finer.e21 - pat_.e21) + (finer.e31 - pat_.e31) + (finer.e32 - pat_.e32); ++k) idx *= q;
    return idx;
  }

 private:
  Ring R_;
  LowerPattern pat_;
};

/// g = n t n+ with n lower unipotent, t diagonal, n+ upper unipotent.
struct Iwahori {
  Mat3 n, t, n_plus;
};

/// Gaussian peeling; nullopt when a pivot is not a unit.
inline std::optional<Iwahori> iwahori_factor(const Ring& R, const Mat3& g) {
  if (!R.is_unit(g(1, 1))) return std::nullopt;
  const auto d1 = g(1, 1), i1 = R.inv(d1);
  const auto l21 = R.mul(g(2, 1), i1), l31 = R.mul(g(3, 1), i1);
  const auto u12 = R.mul(g(1, 2), i1), u13 = R.mul(g(1, 3), i1);
  const auto s22 = R.sub(g(2, 2), R.mul(l21, g(1, 2)));
  const auto s23 = R.sub(g(2, 3), R.mul(l21, g(1, 3)));
  const auto s32 = R.sub(g(3, 2), R.mul(l31, g(1, 2)));
  const auto s33 = R.sub(g(3, 3), R.mul(l31, g(1, 3)));
  if (!R.is_unit(s22)) return std::nullopt;
  const auto i2 = R.inv(s22);
  const auto l32 = R.mul(s32, i2), u23 = R.mul(s23, i2);
  const auto d3 = R.sub(s33, R.mul(l32, s23));
  Iwahori f{mat_identity(R), diag(R, d1, s22, d3), mat_identity(R)};
  f.n(2, 1) = l21;
  f.n(3, 1) = l31;
  f.n(3, 2) = l32;
  f.n_plus(1, 2) = u12;
  f.n_plus(1, 3) = u13;
  f.n_plus(2, 3) = u23;
  return f;
}

/// eta and its section for one (c, m, l).
class EtaMap {
 public:
  EtaMap(std::uint32_t p, const ConePoint& c, int m, int level)
      : c_(c), m_(m), big_(Ring::make(Backend::zmod, p, level)), tw_(Ring::make(Backend::zmod, p, m), delta_exp(c, m, level)) {}

  const Ring& big() const { return big_; }
  const Ring& small() const { return tw_.ring; }
  const TwistedContext& twisted() const { return tw_; }
  const ConePoint& point() const { return c_; }
  int m() const { return m_; }
  LowerPattern source_pattern() const { return pattern_of(c_, m_); }
  LowerPattern kernel_pattern() const { return pattern_of(c_); }

  BElement operator()(const Mat3& g) const {
    const auto pat = source_pattern();
    if (!in_pattern(big_, g, pat) || !big_.is_unit(mat_det(big_, g)))
      throw std::invalid_argument("matrix is not in P_{c - m rho}");
    auto rd = [&](RingElement a) { return big_.reduce_to(small(), a); };
    return {rd(big_.divide_by_pi_pow(g(2, 1), pat.e21)), rd(big_.divide_by_pi_pow(g(3, 2), pat.e32)),
            rd(big_.divide_by_pi_pow(g(3, 1), pat.e31)), rd(g(1, 1)), rd(g(2, 2)), rd(g(3, 3))};
  }

  /// The lower-triangular lift of a B-element; eta(section(b)) = b.
  Mat3 section(const BElement& b) const {
    const auto pat = source_pattern();
    auto lift = [&](RingElement a) { return small().lift_to(big_, a); };
    auto g = diag(big_, lift(b.t1), lift(b.t2), lift(b.t3));
    g(2, 1) = big_.mul(big_.pi_pow(pat.e21), lift(b.x));
    g(3, 2) = big_.mul(big_.pi_pow(pat.e32), lift(b.y));
    g(3, 1) = big_.mul(big_.pi_pow(pat.e31), lift(b.z));
    return g;
  }

  /// Whether an Iwahori factorization has n in N_c and t in T^m.
  bool in_kernel_form(const Iwahori& f) const {
    const auto kp = kernel_pattern();
    auto one_mod = [&](RingElement t) { return big_.val(big_.sub(t, big_.one())) >= m_; };
    return in_pattern(big_, f.n, kp) && one_mod(f.t(1, 1)) && one_mod(f.t(2, 2)) && one_mod(f.t(3, 3));
  }

 private:
  static int delta_exp(const ConePoint& c, int m, int level) {
    const auto inv = invariants(c);
    if (m < 1) throw std::invalid_argument("eta needs m >= 1");
    if (inv.mu < m) throw std::invalid_argument("eta needs mu(c) >= m");
    if (level < c.c3) throw std::invalid_argument("level l must be at least c3");
    return inv.kappa - m;
  }

  ConePoint c_;
  int m_;
  Ring big_;
  TwistedContext tw_;
};

/// Coordinates (x, y, z) of the coset b T_m in B^delta_m / T_m.
inline std::array<RingElement, 3> b_coset_coordinates(const TwistedContext& tw, const BElement& b) {
  const auto& R = tw.ring;
  const auto i1 = R.inv(b.t1);
  return {R.mul(b.x, i1), R.mul(b.y, R.inv(b.t2)), R.mul(b.z, i1)};
}

struct Gl3Params {
  std::uint32_t p = 2;
  ConePoint c{2, 2, 3};
  int m = 1;
  int level = 3;  // l
  std::uint64_t seed = 1;
  int homomorphism_pairs = 10'000;
  int kernel_samples = 1'000;
  int iwahori_samples = 1'000;
};

inline json gl3_params_json(const Gl3Params& p) {
  return {{"p", p.p}, {"c", {p.c.c1, p.c.c2, p.c.c3}}, {"m", p.m}, {"level", p.level}, {"seed", p.seed}};
}

/// Independent stream per check, derived from the root seed.
inline std::mt19937_64 check_rng(std::uint64_t seed, std::uint64_t check) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(check)};
  return std::mt19937_64(seq);
}

inline Report verify_eta_homomorphism(const Gl3Params& prm) {
  Report rep{"eta-homomorphism", gl3_params_json(prm)};
  const EtaMap eta(prm.p, prm.c, prm.m, prm.level);
  const auto src = ParahoricOracle(eta.big(), eta.source_pattern());
  auto rng = check_rng(prm.seed, 1);
  int bad = 0;
  for (int k = 0; k < prm.homomorphism_pairs; ++k) {
    const auto g = src.sample(rng), h = src.sample(rng);
    if (!(eta(mat_mul(eta.big(), g, h)) == b_multiply(eta.twisted(), eta(g), eta(h)))) ++bad;
  }
  rep.require(bad == 0, std::to_string(bad) + " pairs with eta(gh) != eta(g) eta(h)");
  rep.require(eta(mat_identity(eta.big())) == b_identity(eta.twisted()), "eta(I) is not the identity");
  rep.detail["pairs"] = prm.homomorphism_pairs;
  rep.detail["delta_exp"] = eta.twisted().delta_exp;
  return rep;
}

/// eta(g) = 1 exactly when g in N_c T^m N+, tested on three kinds of samples.
inline Report verify_eta_kernel(const Gl3Params& prm) {
  Report rep{"eta-kernel", gl3_params_json(prm)};
  const EtaMap eta(prm.p, prm.c, prm.m, prm.level);
  const auto& R = eta.big();
  const auto src = ParahoricOracle(R, eta.source_pattern());
  const auto ker_lower = ParahoricOracle(R, eta.kernel_pattern());
  const auto id = b_identity(eta.twisted());
  auto rng = check_rng(prm.seed, 2);
  std::uniform_int_distribution<std::uint32_t> pick(0, R.size() - 1);
  auto any = [&] { return RingElement{pick(rng)}; };

  int agree = 0, in_kernel = 0, total = 0;
  auto test = [&](const Mat3& g) {
    const auto f = iwahori_factor(R, g);
    const bool factored = f && eta.in_kernel_form(*f);
    const bool trivial = eta(g) == id;
    ++total;
    if (trivial) ++in_kernel;
    if (factored == trivial) ++agree;
  };
  for (int k = 0; k < prm.kernel_samples; ++k) {
    // A product n t n+ built from the three kernel pieces.
    auto n = mat_identity(R);
    const auto low = ker_lower.sample(rng);
    n(2, 1) = low(2, 1);
    n(3, 1) = low(3, 1);
    n(3, 2) = low(3, 2);
    auto t1 = [&] { return R.add(R.one(), R.mul(R.pi_pow(prm.m), any())); };
    const auto t = diag(R, t1(), t1(), t1());
    auto np = mat_identity(R);
    np(1, 2) = any();
    np(1, 3) = any();
    np(2, 3) = any();
    test(mat_mul(R, mat_mul(R, n, t), np));

    // A random element, and the same element corrected into the kernel.
    const auto g = src.sample(rng);
    test(g);
    test(mat_mul(R, eta.section(b_inverse(eta.twisted(), eta(g))), g));
  }
  rep.require(agree == total, std::to_string(total - agree) + " samples where eta(g) = 1 and the factorization disagree");
  rep.require(in_kernel >= 2 * prm.kernel_samples, "too few kernel samples");
  rep.detail["samples"] = total;
  rep.detail["kernel_samples"] = in_kernel;
  return rep;
}

inline Report verify_iwahori(const Gl3Params& prm) {
  Report rep{"iwahori", gl3_params_json(prm)};
  const EtaMap eta(prm.p, prm.c, prm.m, prm.level);
  const auto& R = eta.big();
  const auto src = ParahoricOracle(R, eta.source_pattern());
  auto rng = check_rng(prm.seed, 3);
  int ok = 0;
  for (int k = 0; k < prm.iwahori_samples; ++k) {
    const auto g = src.sample(rng);
    const auto f = iwahori_factor(R, g);
    if (!f) continue;
    const bool round_trip = mat_mul(R, mat_mul(R, f->n, f->t), f->n_plus) == g;
    if (round_trip && in_pattern(R, f->n, src.pattern())) ++ok;
  }
  const auto triv = iwahori_factor(R, mat_identity(R));
  rep.require(triv && triv->n == mat_identity(R) && triv->t == mat_identity(R) && triv->n_plus == mat_identity(R),
              "identity does not factor trivially");
  rep.require(ok == prm.iwahori_samples, std::to_string(prm.iwahori_samples - ok) + " samples fail to round-trip");
  rep.detail["samples"] = prm.iwahori_samples;
  return rep;
}

/// The generators: u21, u31, u32 in N_{c - m rho}; s1, s2, s3; u12, u13, u23.
inline std::vector<std::pair<std::string, Mat3>> parahoric_generators(const EtaMap& eta) {
  const auto& R = eta.big();
  const auto pat = eta.source_pattern();
  std::vector<std::pair<std::string, Mat3>> out;
  for (auto a : R.elements()) {
    out.emplace_back("u21", u_elem(R, 2, 1, R.mul(R.pi_pow(pat.e21), a)));
    out.emplace_back("u31", u_elem(R, 3, 1, R.mul(R.pi_pow(pat.e31), a)));
    out.emplace_back("u32", u_elem(R, 3, 2, R.mul(R.pi_pow(pat.e32), a)));
    out.emplace_back("u12", u_elem(R, 1, 2, a));
    out.emplace_back("u13", u_elem(R, 1, 3, a));
    out.emplace_back("u23", u_elem(R, 2, 3, a));
  }
  for (auto u : R.units())
    for (int i = 1; i <= 3; ++i) out.emplace_back("s" + std::to_string(i), s_elem(R, i, u));
  return out;
}

/// P_{c - m rho}/P_c as N_{c - m rho}/N_c, identified with B^delta_m / T_m through eta.
inline Report verify_coset_identification(const Gl3Params& prm) {
  Report rep{"coset-identification", gl3_params_json(prm)};
  const EtaMap eta(prm.p, prm.c, prm.m, prm.level);
  const auto& R = eta.big();
  const auto& S = eta.small();
  const auto& tw = eta.twisted();
  const std::uint64_t cosets = static_cast<std::uint64_t>(S.size()) * S.size() * S.size();
  if (cosets > 10'000) throw std::length_error("coset space too large for exhaustive identification");

  // Coset of h in P_{c - m rho}: read the N-part of its Iwahori factorization through eta.
  auto coset_of = [&](const Mat3& h) {
    const auto f = iwahori_factor(R, h);
    if (!f) throw std::logic_error("element of P_{c - m rho} without Iwahori factorization");
    const auto b = eta(f->n);
    return std::array<RingElement, 3>{b.x, b.y, b.z};
  };
  auto rep_of = [&](RingElement x, RingElement y, RingElement z) {
    return eta.section({x, y, z, S.one(), S.one(), S.one()});
  };

  const auto gens = parahoric_generators(eta);
  const auto kernel_pattern = ParahoricOracle(R, eta.kernel_pattern());
  auto rng = check_rng(prm.seed, 4);
  std::uniform_int_distribution<std::uint32_t> pick(0, R.size() - 1);
  std::map<std::string, int> mismatches;
  std::size_t actions = 0, trivial_on_kernel = 0, kernel_tests = 0;
  for (auto x : S.elements())
    for (auto y : S.elements())
      for (auto z : S.elements()) {
        const auto n = rep_of(x, y, z);
        if (coset_of(n) != std::array<RingElement, 3>{x, y, z}) ++mismatches["representative"];
        // A random other representative n k with k in P_c.
        const auto k = kernel_pattern.sample(rng);
        const auto nk = mat_mul(R, n, k);
        for (const auto& [name, g] : gens) {
          ++actions;
          const auto moved = coset_of(mat_mul(R, g, n));
          if (coset_of(mat_mul(R, g, nk)) != moved) ++mismatches["well-defined:" + name];
          const auto b = b_multiply(tw, eta(g), {x, y, z, S.one(), S.one(), S.one()});
          if (b_coset_coordinates(tw, b) != moved) ++mismatches["intertwining:" + name];
        }
        // N_c, T^m and N+ act trivially.
        std::vector<Mat3> kernel_elems{
            u_elem(R, 2, 1, R.mul(R.pi_pow(prm.c.c1), RingElement{pick(rng)})),
            u_elem(R, 3, 1, R.mul(R.pi_pow(prm.c.c3), RingElement{pick(rng)})),
            u_elem(R, 3, 2, R.mul(R.pi_pow(prm.c.c2), RingElement{pick(rng)})),
            s_elem(R, 1 + static_cast<int>(pick(rng) % 3), R.add(R.one(), R.mul(R.pi_pow(prm.m), RingElement{pick(rng)}))),
            u_elem(R, 1, 2, RingElement{pick(rng)}),
            u_elem(R, 1, 3, RingElement{pick(rng)}),
            u_elem(R, 2, 3, RingElement{pick(rng)})};
        for (const auto& g : kernel_elems) {
          ++kernel_tests;
          if (coset_of(mat_mul(R, g, n)) == std::array<RingElement, 3>{x, y, z}) ++trivial_on_kernel;
        }
      }
  for (const auto& [what, count] : mismatches) rep.require(false, what + ": " + std::to_string(count));
  rep.require(trivial_on_kernel == kernel_tests, "kernel element moves a coset");
  rep.detail["cosets"] = cosets;
  rep.detail["generator_actions"] = actions;
  rep.detail["generators"] = gens.size();
  rep.detail["delta_exp"] = tw.delta_exp;
  return rep;
}

/// The two displayed conjugation rules for elementary matrices, checked entrywise.
inline Report verify_conjugation_formulas(const Gl3Params& prm) {
  Report rep{"conjugation-formulas", gl3_params_json(prm)};
  const auto R = Ring::make(Backend::zmod, prm.p, prm.level);
  auto rng = check_rng(prm.seed, 5);
  std::uniform_int_distribution<std::uint32_t> pick(0, R.size() - 1);
  std::uniform_int_distribution<std::uint32_t> pick_unit(0, R.unit_count() - 1);
  auto e = [&](int i, int j, RingElement v) {
    Mat3 g;
    for (auto& entry : g.a) entry = R.zero();
    g(i, j) = v;
    return g;
  };
  auto add = [&](Mat3 a, const Mat3& b) {
    for (std::size_t k = 0; k < 9; ++k) a.a[k] = R.add(a.a[k], b.a[k]);
    return a;
  };
  int checks = 0, bad = 0;
  for (int trial = 0; trial < 20; ++trial)
    for (int i = 1; i <= 3; ++i)
      for (int j = 1; j <= 3; ++j) {
        if (i == j) continue;
        const RingElement x{pick(rng)};
        for (int k = 1; k <= 3; ++k)
          for (int l = 1; l <= 3; ++l) {
            if (k == l) continue;
            const RingElement y{pick(rng)};
            const auto lhs = mat_mul(R, mat_mul(R, u_elem(R, i, j, x), u_elem(R, k, l, y)), u_elem(R, i, j, R.neg(x)));
            auto rhs = add(mat_identity(R), e(k, l, y));
            const auto xy = R.mul(x, y);
            if (i == l && j != k) rhs = add(rhs, e(k, j, R.neg(xy)));
            if (i != l && j == k) rhs = add(rhs, e(i, l, xy));
            if (i == l && j == k)
              rhs = add(add(add(rhs, e(l, l, xy)), e(k, k, R.neg(xy))), e(i, j, R.neg(R.mul(x, xy))));
            ++checks;
            if (!(lhs == rhs)) ++bad;
          }
        // [u_ij(x), s_k(y)] = u s u^{-1} s^{-1}
        for (int k = 1; k <= 3; ++k) {
          const auto y = R.units()[pick_unit(rng)];
          const auto lhs = mat_mul(R, mat_mul(R, mat_mul(R, u_elem(R, i, j, x), s_elem(R, k, y)), u_elem(R, i, j, R.neg(x))),
                                   s_elem(R, k, R.inv(y)));
          Mat3 rhs = mat_identity(R);
          if (i == k) rhs = u_elem(R, i, j, R.mul(x, R.sub(R.one(), y)));
          if (j == k) rhs = u_elem(R, i, j, R.mul(x, R.sub(R.one(), R.inv(y))));
          ++checks;
          if (!(lhs == rhs)) ++bad;
        }
      }
  rep.require(bad == 0, std::to_string(bad) + " conjugation identities fail");
  rep.detail["checks"] = checks;
  return rep;
}

/// |GL_3(Z/p^l)| and |B(Z/p^l)| (upper triangular) by enumerating all matrices.
struct FlagCount {
  std::uint64_t gl3 = 0, borel = 0;
};

inline FlagCount count_gl3_and_borel(std::uint32_t p, int level, std::uint64_t bound = enumeration_bound()) {
  const auto R = Ring::make(Backend::zmod, p, level);
  const std::uint64_t n = R.size();
  std::uint64_t total = 1;
  for (int k = 0; k < 9; ++k) total *= n;
  if (total > bound) throw std::length_error("matrix space exceeds the enumeration bound");
  FlagCount out;
  Mat3 g;
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    std::uint64_t r = idx;
    for (auto& entry : g.a) {
      entry = {static_cast<std::uint32_t>(r % n)};
      r /= n;
    }
    if (!R.is_unit(mat_det(R, g))) continue;
    ++out.gl3;
    if (g(2, 1).code == 0 && g(3, 1).code == 0 && g(3, 2).code == 0) ++out.borel;
  }
  return out;
}

/// [GL_3 : B] by order counting at small (p, l), compared with q^{3(l-1)}(q+1)(q^2+q+1).
inline Report verify_flag_index(std::uint32_t p, int level, std::uint64_t bound = enumeration_bound()) {
  Report rep{"flag-index", {{"p", p}, {"level", level}}};
  const auto counts = count_gl3_and_borel(p, level, bound);
  std::uint64_t expected = (p + 1) * (p * p + p + 1);
  for (int k = 0; k < 3 * (level - 1); ++k) expected *= p;
  rep.require(counts.gl3 % counts.borel == 0, "|B| does not divide |GL_3|");
  rep.require(counts.gl3 / counts.borel == expected, "index differs from the flag count");
  rep.detail["gl3"] = counts.gl3;
  rep.detail["borel"] = counts.borel;
  rep.detail["index"] = counts.gl3 / counts.borel;
  return rep;
}

/// |image eta| * |kernel eta| = |P_{c - m rho}| by enumerating P_{c - m rho} mod pi^l.
inline Report verify_eta_fibres(const Gl3Params& prm, std::uint64_t bound = enumeration_bound()) {
  Report rep{"eta-fibres", gl3_params_json(prm)};
  const EtaMap eta(prm.p, prm.c, prm.m, prm.level);
  const auto& R = eta.big();
  const auto pat = eta.source_pattern();
  std::vector<RingElement> i21, i31, i32;
  for (auto a : R.elements()) {
    if (R.val(a) >= pat.e21) i21.push_back(a);
    if (R.val(a) >= pat.e31) i31.push_back(a);
    if (R.val(a) >= pat.e32) i32.push_back(a);
  }
  const std::uint64_t n = R.size();
  const std::uint64_t upper = n * n * n * n * n * n;
  if (upper * i21.size() * i31.size() * i32.size() > bound)
    throw std::length_error("P_{c - m rho} exceeds the enumeration bound");
  const BGroupModel b(eta.twisted());
  std::vector<char> image(b.order(), 0);
  std::uint64_t order = 0, kernel = 0, image_size = 0;
  const auto id = b.identity();
  Mat3 g;
  for (auto x : i21)
    for (auto z : i31)
      for (auto y : i32)
        for (std::uint64_t idx = 0; idx < upper; ++idx) {
          std::uint64_t r = idx;
          for (int i = 1; i <= 3; ++i)
            for (int j = i; j <= 3; ++j) {
              g(i, j) = {static_cast<std::uint32_t>(r % n)};
              r /= n;
            }
          g(2, 1) = x;
          g(3, 1) = z;
          g(3, 2) = y;
          if (!R.is_unit(mat_det(R, g))) continue;
          ++order;
          const auto k = b.encode(eta(g));
          if (k == id) ++kernel;
          if (!image[k]) image[k] = 1, ++image_size;
        }
  rep.require(image_size == b.order(), "eta is not surjective");
  rep.require(image_size * kernel == order, "|image| |kernel| != |P_{c - m rho}|");
  rep.detail["order"] = order;
  rep.detail["kernel"] = kernel;
  rep.detail["image"] = image_size;
  return rep;
}

/// The sampled and exhaustive matrix checks at one parameter point.
inline std::vector<Report> gl3_suite(const Gl3Params& prm) {
  return {verify_eta_homomorphism(prm), verify_eta_kernel(prm), verify_iwahori(prm),
          verify_coset_identification(prm), verify_conjugation_formulas(prm)};
}

}  // namespace psdec

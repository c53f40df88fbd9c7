#pragma once

/**
 * @file ring.hpp
 * @brief Finite local rings O_m with residue field F_p.
 *
 * Two presentations with identical residue cardinality:
 *  - Backend::zmod     O_m = Z/p^m,        uniformizer p
 *  - Backend::polymod  O_m = F_p[t]/(t^m), uniformizer t
 *
 * Elements are canonical codes in [0, p^m). For zmod the code is the residue
 * itself; for polymod it is sum a_k p^k where a_k is the coefficient of t^k.
 * All arithmetic goes through the owning Ring, which is immutable and cheap to
 * copy.
 */

#include <complex>
#include <cstdint>
#include <cstdlib>
#include <memory>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace psdec {

using cplx = std::complex<double>;

/// Default cap on the number of elements any enumeration may produce.
inline std::uint64_t enumeration_bound() {
  if (const char* env = std::getenv("PSDEC_BOUND")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && v > 0) return v;
  }
  return 1'000'000;
}

/// exp(2 pi i k / n)
inline cplx root_of_unity(std::uint64_t k, std::uint64_t n) {
  const double angle = 2.0 * std::numbers::pi * static_cast<double>(k % n) / static_cast<double>(n);
  return std::polar(1.0, angle);
}

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

enum class Backend { zmod, polymod };

inline const char* to_string(Backend b) { return b == Backend::zmod ? "zmod" : "polymod"; }

inline Backend parse_backend(const std::string& s) {
  if (s == "zmod") return Backend::zmod;
  if (s == "polymod") return Backend::polymod;
  throw std::invalid_argument("unknown backend '" + s + "'");
}

struct RingElement {
  std::uint32_t code = 0;
  friend constexpr bool operator==(RingElement, RingElement) = default;
  friend constexpr auto operator<=>(RingElement, RingElement) = default;
};

class Ring {
 public:
  static Ring make(Backend backend, std::uint32_t p, int m, std::uint64_t bound = enumeration_bound()) {
    if (!is_prime(p)) throw std::invalid_argument("residue characteristic " + std::to_string(p) + " is not prime");
    if (m < 0) throw std::invalid_argument("negative level");
    std::uint64_t n = 1;
    for (int k = 0; k < m; ++k) {
      n *= p;
      if (n > bound) throw std::length_error("ring O_m with p^m > enumeration bound");
    }
    return Ring(std::make_shared<const Impl>(backend, p, m, static_cast<std::uint32_t>(n)));
  }

  Backend backend() const { return impl_->backend; }
  std::uint32_t p() const { return impl_->p; }
  /// Residue field cardinality; equals p for both backends.
  std::uint32_t q() const { return impl_->p; }
  int m() const { return impl_->m; }
  std::uint32_t size() const { return impl_->n; }
  std::uint32_t unit_count() const { return static_cast<std::uint32_t>(impl_->units.size()); }

  RingElement zero() const { return {0}; }
  RingElement one() const { return {impl_->n == 1 ? 0u : 1u}; }

  /// pi^e, with pi^e = 0 once e >= m.
  RingElement pi_pow(int e) const {
    if (e < 0) throw std::invalid_argument("negative exponent of the uniformizer");
    if (e >= m()) return zero();
    return {impl_->pow_p[e]};
  }
  RingElement pi() const { return pi_pow(1); }

  /// Image of an integer under Z -> O_m.
  RingElement from_int(std::int64_t v) const {
    const std::int64_t mod = backend() == Backend::zmod ? static_cast<std::int64_t>(size()) : p();
    std::int64_t r = v % mod;
    if (r < 0) r += mod;
    if (size() == 1) r = 0;
    return {static_cast<std::uint32_t>(r)};
  }

  RingElement element(std::uint32_t code) const {
    if (code >= size()) throw std::out_of_range("ring element code out of range");
    return {code};
  }

  RingElement add(RingElement a, RingElement b) const {
    if (impl_->tabled) return {impl_->add_table[a.code * size() + b.code]};
    return {impl_->add_raw(a.code, b.code)};
  }
  RingElement mul(RingElement a, RingElement b) const {
    if (impl_->tabled) return {impl_->mul_table[a.code * size() + b.code]};
    return {impl_->mul_raw(a.code, b.code)};
  }
  RingElement neg(RingElement a) const { return {impl_->neg_raw(a.code)}; }
  RingElement sub(RingElement a, RingElement b) const { return add(a, neg(b)); }

  bool is_unit(RingElement a) const { return impl_->unit_index[a.code] >= 0; }

  RingElement inv(RingElement a) const {
    const std::int32_t k = impl_->unit_index[a.code];
    if (k < 0) throw std::domain_error("inverse of a non-unit");
    return {impl_->unit_inverse[static_cast<std::size_t>(k)]};
  }

  /// Position of a unit in units(); -1 for non-units.
  std::int32_t unit_index(RingElement a) const { return impl_->unit_index[a.code]; }

  /// Largest k <= m with a in pi^k O_m; val(0) = m.
  int val(RingElement a) const {
    if (a.code == 0) return m();
    int k = 0;
    std::uint32_t c = a.code;
    while (c % p() == 0) {
      c /= p();
      ++k;
    }
    return k;
  }

  /// x / pi^k for x in pi^k O_m. The result is the canonical lift, which is
  /// only meaningful modulo pi^(m-k).
  RingElement divide_by_pi_pow(RingElement a, int k) const {
    if (val(a) < k) throw std::domain_error("element not divisible by the requested power of the uniformizer");
    if (k >= m()) return zero();
    return {a.code / impl_->pow_p[k]};
  }

  /// Reduction O_m -> O_target for target.m() <= m() over the same backend and p.
  RingElement reduce_to(const Ring& target, RingElement a) const {
    if (target.backend() != backend() || target.p() != p() || target.m() > m())
      throw std::invalid_argument("reduction target is not a quotient of this ring");
    return {a.code % target.size()};
  }

  /// Canonical lift O_m -> O_target for target.m() >= m().
  RingElement lift_to(const Ring& target, RingElement a) const {
    if (target.backend() != backend() || target.p() != p() || target.m() < m())
      throw std::invalid_argument("lift target is not a cover of this ring");
    return {a.code};
  }

  /// Phase k of the fixed primitive additive character, psi(a) = exp(2 pi i k / p^m).
  std::uint32_t trace_phase(RingElement a) const {
    if (m() == 0) throw std::domain_error("additive character on the zero ring");
    if (backend() == Backend::zmod) return a.code;
    const std::uint32_t top = impl_->pow_p[m() - 1];
    return (a.code / top) * top;
  }

  const std::vector<RingElement>& elements() const { return impl_->all; }
  const std::vector<RingElement>& units() const { return impl_->units; }

  std::string describe() const {
    return std::string(to_string(backend())) + "(p=" + std::to_string(p()) + ",m=" + std::to_string(m()) + ")";
  }

  friend bool operator==(const Ring& a, const Ring& b) {
    return a.impl_ == b.impl_ ||
           (a.backend() == b.backend() && a.p() == b.p() && a.m() == b.m());
  }

 private:
  struct Impl {
    Backend backend;
    std::uint32_t p;
    int m;
    std::uint32_t n;
    std::vector<std::uint32_t> pow_p;
    bool tabled = false;
    std::vector<std::uint32_t> add_table, mul_table;
    std::vector<RingElement> all, units;
    std::vector<std::int32_t> unit_index;
    std::vector<std::uint32_t> unit_inverse;

    Impl(Backend b, std::uint32_t p_, int m_, std::uint32_t n_) : backend(b), p(p_), m(m_), n(n_) {
      pow_p.resize(static_cast<std::size_t>(m) + 1);
      pow_p[0] = 1;
      for (int k = 1; k <= m; ++k) pow_p[k] = pow_p[k - 1] * p;

      all.reserve(n);
      for (std::uint32_t c = 0; c < n; ++c) all.push_back({c});

      unit_index.assign(n, -1);
      for (std::uint32_t c = 0; c < n; ++c) {
        // A unit is anything outside the maximal ideal; in the zero ring 0 = 1 is a unit.
        if (n == 1 || c % p != 0) {
          unit_index[c] = static_cast<std::int32_t>(units.size());
          units.push_back({c});
        }
      }

      if (static_cast<std::uint64_t>(n) * n <= (1u << 18)) {
        tabled = true;
        add_table.resize(static_cast<std::size_t>(n) * n);
        mul_table.resize(static_cast<std::size_t>(n) * n);
        for (std::uint32_t a = 0; a < n; ++a)
          for (std::uint32_t b = 0; b < n; ++b) {
            add_table[a * n + b] = add_raw(a, b);
            mul_table[a * n + b] = mul_raw(a, b);
          }
      }

      unit_inverse.resize(units.size());
      for (std::size_t i = 0; i < units.size(); ++i) unit_inverse[i] = invert_raw(units[i].code);
    }

    std::uint32_t add_raw(std::uint32_t a, std::uint32_t b) const {
      if (backend == Backend::zmod) return static_cast<std::uint32_t>((static_cast<std::uint64_t>(a) + b) % n);
      std::uint32_t r = 0;
      for (int k = 0; k < m; ++k) {
        const std::uint32_t d = (a / pow_p[k] % p + b / pow_p[k] % p) % p;
        r += d * pow_p[k];
      }
      return r;
    }

    std::uint32_t neg_raw(std::uint32_t a) const {
      if (backend == Backend::zmod) return a == 0 ? 0 : n - a;
      std::uint32_t r = 0;
      for (int k = 0; k < m; ++k) {
        const std::uint32_t d = a / pow_p[k] % p;
        r += ((p - d) % p) * pow_p[k];
      }
      return r;
    }

    std::uint32_t mul_raw(std::uint32_t a, std::uint32_t b) const {
      if (backend == Backend::zmod) return static_cast<std::uint32_t>(static_cast<std::uint64_t>(a) * b % n);
      // Truncated polynomial product in F_p[t]/(t^m).
      std::vector<std::uint64_t> acc(static_cast<std::size_t>(m), 0);
      for (int i = 0; i < m; ++i) {
        const std::uint64_t ai = a / pow_p[i] % p;
        if (ai == 0) continue;
        for (int j = 0; i + j < m; ++j) acc[i + j] += ai * (b / pow_p[j] % p);
      }
      std::uint32_t r = 0;
      for (int k = 0; k < m; ++k) r += static_cast<std::uint32_t>(acc[k] % p) * pow_p[k];
      return r;
    }

    std::uint32_t invert_raw(std::uint32_t a) const {
      if (n == 1) return 0;
      if (backend == Backend::zmod) {
        std::int64_t t = 0, new_t = 1, r = n, new_r = a;
        while (new_r != 0) {
          const std::int64_t quot = r / new_r;
          t -= quot * new_t;
          std::swap(t, new_t);
          r -= quot * new_r;
          std::swap(r, new_r);
        }
        if (t < 0) t += n;
        return static_cast<std::uint32_t>(t);
      }
      // u^{-1} = u^{|O_m^x| - 1}
      std::uint64_t e = units.size() - 1;
      std::uint32_t base = a, result = 1;
      while (e > 0) {
        if (e & 1) result = mul_raw(result, base);
        base = mul_raw(base, base);
        e >>= 1;
      }
      return result;
    }
  };

  explicit Ring(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<const Impl> impl_;
};

/// psi_xi(x) = psi(xi x), the additive character attached to xi under self-duality.
class AdditiveCharacter {
 public:
  AdditiveCharacter(Ring ring, RingElement xi) : ring_(std::move(ring)), xi_(xi) {
    if (ring_.m() == 0) throw std::domain_error("additive characters need m >= 1");
  }

  RingElement index() const { return xi_; }

  /// Value is exp(2 pi i phase / p^m).
  std::uint32_t phase(RingElement x) const { return ring_.trace_phase(ring_.mul(xi_, x)); }
  cplx operator()(RingElement x) const { return root_of_unity(phase(x), ring_.size()); }

 private:
  Ring ring_;
  RingElement xi_;
};

inline AdditiveCharacter additive_character(const Ring& ring, RingElement xi) { return {ring, xi}; }

}  // namespace psdec

#pragma once

// Laurent polynomials in one variable with int64 coefficients.

#include <algorithm>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace psdec {

class Poly {
 public:
  Poly() = default;
  Poly(std::int64_t c) {  // NOLINT(google-explicit-constructor)
    if (c != 0) terms_[0] = c;
  }

  static Poly monomial(std::int64_t coef, int exponent) {
    Poly p;
    if (coef != 0) p.terms_[exponent] = coef;
    return p;
  }
  static Poly x(int exponent = 1) { return monomial(1, exponent); }

  /// 1 + x + ... + x^{k-1}; zero for k <= 0.
  static Poly geometric(int k) {
    Poly p;
    for (int e = 0; e < k; ++e) p.terms_[e] = 1;
    return p;
  }

  bool is_zero() const { return terms_.empty(); }
  const std::map<int, std::int64_t>& terms() const { return terms_; }
  int min_exponent() const { return terms_.empty() ? 0 : terms_.begin()->first; }
  int degree() const { return terms_.empty() ? 0 : terms_.rbegin()->first; }
  bool is_polynomial() const { return min_exponent() >= 0; }

  std::int64_t coefficient(int e) const {
    const auto it = terms_.find(e);
    return it == terms_.end() ? 0 : it->second;
  }

  Poly& operator+=(const Poly& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }
  Poly& operator-=(const Poly& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, checked_neg(c));
    return *this;
  }
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b) {
    Poly r;
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) r.add_term(ea + eb, checked_mul(ca, cb));
    return r;
  }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }
  friend bool operator==(const Poly&, const Poly&) = default;

  /// Value at an integer point; throws std::overflow_error past int64.
  std::int64_t evaluate(std::int64_t q) const {
    if (q == 0 && min_exponent() < 0) throw std::domain_error("negative power of zero");
    // Clear the denominator q^{-min}, evaluate, then divide back exactly.
    const int shift = std::min(0, min_exponent());
    std::int64_t acc = 0;
    for (int e = degree(); e >= shift; --e) acc = checked_add(checked_mul(acc, q), coefficient(e));
    if (shift < 0) {
      std::int64_t den = 1;
      for (int k = 0; k < -shift; ++k) den = checked_mul(den, q);
      if (acc % den != 0) throw std::domain_error("Laurent polynomial is not integral at this point");
      acc /= den;
    }
    return acc;
  }

  std::string to_string(const std::string& var = "q") const {
    if (terms_.empty()) return "0";
    std::string s;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      const auto [e, c] = *it;
      const std::int64_t mag = c < 0 ? -c : c;
      if (s.empty())
        s += c < 0 ? "-" : "";
      else
        s += c < 0 ? " - " : " + ";
      if (e == 0 || mag != 1) s += std::to_string(mag);
      if (e != 0) {
        if (mag != 1) s += "*";
        s += var;
        if (e != 1) s += "^" + std::to_string(e);
      }
    }
    return s;
  }

  /// Coefficients from the lowest exponent upward, with that exponent.
  std::pair<int, std::vector<std::int64_t>> coefficient_list() const {
    if (terms_.empty()) return {0, {}};
    const int lo = min_exponent();
    std::vector<std::int64_t> c(static_cast<std::size_t>(degree() - lo + 1), 0);
    for (const auto& [e, v] : terms_) c[static_cast<std::size_t>(e - lo)] = v;
    return {lo, c};
  }

  static std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("integer overflow in polynomial arithmetic");
    return r;
  }
  static std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("integer overflow in polynomial arithmetic");
    return r;
  }
  static std::int64_t checked_neg(std::int64_t a) { return checked_mul(a, -1); }

 private:
  void add_term(int e, std::int64_t c) {
    if (c == 0) return;
    const auto v = checked_add(coefficient(e), c);
    if (v == 0)
      terms_.erase(e);
    else
      terms_[e] = v;
  }

  std::map<int, std::int64_t> terms_;
};

inline Poly pow(const Poly& p, int k) {
  if (k < 0) throw std::domain_error("negative power of a polynomial");
  Poly r(1);
  for (int i = 0; i < k; ++i) r *= p;
  return r;
}

}  // namespace psdec

#include <gtest/gtest.h>

#include <random>
#include <set>
#include <tuple>

#include "psdec/abelian.hpp"
#include "psdec/ring.hpp"

using namespace psdec;

namespace {

class RingAxioms : public ::testing::TestWithParam<std::tuple<Backend, int, int>> {};

TEST_P(RingAxioms, CommutativeRingOnRandomTriples) {
  const auto [backend, p, m] = GetParam();
  const auto R = Ring::make(backend, p, m);
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<std::uint32_t> pick(0, R.size() - 1);
  for (int k = 0; k < 500; ++k) {
    const RingElement a{pick(rng)}, b{pick(rng)}, c{pick(rng)};
    EXPECT_EQ(R.add(a, R.add(b, c)), R.add(R.add(a, b), c));
    EXPECT_EQ(R.mul(a, R.mul(b, c)), R.mul(R.mul(a, b), c));
    EXPECT_EQ(R.mul(a, R.add(b, c)), R.add(R.mul(a, b), R.mul(a, c)));
    EXPECT_EQ(R.add(a, b), R.add(b, a));
    EXPECT_EQ(R.mul(a, b), R.mul(b, a));
    EXPECT_EQ(R.add(a, R.neg(a)), R.zero());
    EXPECT_EQ(R.mul(a, R.one()), a);
  }
}

TEST_P(RingAxioms, UnitsAreExactlyTheValuationZeroElements) {
  const auto [backend, p, m] = GetParam();
  const auto R = Ring::make(backend, p, m);
  std::uint32_t expected = p - 1;
  for (int k = 1; k < m; ++k) expected *= p;
  EXPECT_EQ(R.unit_count(), expected);
  for (auto a : R.elements()) {
    EXPECT_EQ(R.is_unit(a), R.val(a) == 0);
    if (R.is_unit(a)) {
      EXPECT_EQ(R.mul(a, R.inv(a)), R.one());
    }
  }
}

TEST_P(RingAxioms, ValuationIsMultiplicative) {
  const auto [backend, p, m] = GetParam();
  const auto R = Ring::make(backend, p, m);
  for (auto a : R.elements())
    for (auto b : R.elements())
      EXPECT_EQ(R.val(R.mul(a, b)), std::min(m, R.val(a) + R.val(b)));
}

TEST_P(RingAxioms, DivisionByPiPowersInvertsMultiplication) {
  const auto [backend, p, m] = GetParam();
  const auto R = Ring::make(backend, p, m);
  for (int k = 0; k <= m; ++k)
    for (auto a : R.elements()) {
      const auto b = R.mul(a, R.pi_pow(k));
      const auto d = R.divide_by_pi_pow(b, k);
      EXPECT_EQ(R.mul(d, R.pi_pow(k)), b);
    }
}

TEST_P(RingAxioms, ReductionIsARingMapAndLiftIsASection) {
  const auto [backend, p, m] = GetParam();
  const auto R = Ring::make(backend, p, m);
  for (int k = 0; k <= m; ++k) {
    const auto S = Ring::make(backend, p, k);
    for (auto a : R.elements())
      for (auto b : R.elements()) {
        EXPECT_EQ(R.reduce_to(S, R.mul(a, b)), S.mul(R.reduce_to(S, a), R.reduce_to(S, b)));
        EXPECT_EQ(R.reduce_to(S, R.add(a, b)), S.add(R.reduce_to(S, a), R.reduce_to(S, b)));
      }
    for (auto s : S.elements()) EXPECT_EQ(R.reduce_to(S, S.lift_to(R, s)), s);
  }
}

TEST_P(RingAxioms, AdditiveCharactersAreHomomorphisms) {
  const auto [backend, p, m] = GetParam();
  const auto R = Ring::make(backend, p, m);
  for (auto xi : R.elements()) {
    const auto psi = additive_character(R, xi);
    for (auto a : R.elements())
      for (auto b : R.elements())
        EXPECT_EQ(psi.phase(R.add(a, b)), (psi.phase(a) + psi.phase(b)) % R.size());
  }
}

INSTANTIATE_TEST_SUITE_P(Rings, RingAxioms,
                         ::testing::Values(std::make_tuple(Backend::zmod, 2, 3), std::make_tuple(Backend::zmod, 3, 2),
                                           std::make_tuple(Backend::zmod, 5, 1), std::make_tuple(Backend::polymod, 2, 3),
                                           std::make_tuple(Backend::polymod, 3, 2), std::make_tuple(Backend::polymod, 2, 1)));

TEST(Ring, SizesOfSmallRings) {
  const auto z = Ring::make(Backend::zmod, 3, 2);
  EXPECT_EQ(z.size(), 9u);
  EXPECT_EQ(z.unit_count(), 6u);
  const auto t = Ring::make(Backend::polymod, 3, 2);
  EXPECT_EQ(t.size(), 9u);
  EXPECT_EQ(t.unit_count(), 6u);
}

TEST(Ring, ZeroRingHasOneUnit) {
  const auto R = Ring::make(Backend::zmod, 2, 0);
  EXPECT_EQ(R.size(), 1u);
  EXPECT_EQ(R.unit_count(), 1u);
  EXPECT_EQ(R.one(), R.zero());
}

TEST(Ring, ValuationExamples) {
  const auto R = Ring::make(Backend::zmod, 3, 2);
  EXPECT_EQ(R.val(R.zero()), 2);
  EXPECT_EQ(R.val(R.from_int(6)), 1);
  EXPECT_EQ(R.val(R.from_int(5)), 0);
}

TEST(Ring, BackendsDifferInCharacteristic) {
  const auto z = Ring::make(Backend::zmod, 2, 2);
  const auto t = Ring::make(Backend::polymod, 2, 2);
  EXPECT_NE(z.add(z.one(), z.one()), z.zero());
  EXPECT_EQ(t.add(t.one(), t.one()), t.zero());
  EXPECT_EQ(t.val(t.pi()), 1);
  EXPECT_EQ(t.mul(t.pi(), t.pi()), t.zero());
}

TEST(Ring, RejectsBadParameters) {
  EXPECT_THROW(Ring::make(Backend::zmod, 4, 1), std::invalid_argument);
  EXPECT_THROW(Ring::make(Backend::zmod, 3, -1), std::invalid_argument);
  EXPECT_THROW(Ring::make(Backend::zmod, 2, 30, 1'000'000), std::length_error);
  const auto R = Ring::make(Backend::zmod, 3, 2);
  EXPECT_THROW(R.inv(R.from_int(3)), std::domain_error);
  EXPECT_THROW(R.divide_by_pi_pow(R.one(), 1), std::domain_error);
}

TEST(Abelian, DualSizes) {
  EXPECT_EQ(abelian_dual(unit_group(Ring::make(Backend::zmod, 3, 1))).size(), 2u);
  EXPECT_EQ(abelian_dual(additive_group(Ring::make(Backend::zmod, 3, 2))).size(), 9u);
  EXPECT_EQ(abelian_dual(unit_group(Ring::make(Backend::zmod, 2, 2))).size(), 2u);
}

// Column orthogonality: sum over characters of chi(x) vanishes off the identity.
TEST(Abelian, CharactersAreDistinctHomomorphisms) {
  for (auto backend : {Backend::zmod, Backend::polymod}) {
    const auto R = Ring::make(backend, 2, 3);
    for (const auto& g : {unit_group(R), additive_group(R)}) {
      const auto d = abelian_dual(g);
      ASSERT_EQ(d.size(), g.order);
      std::set<std::vector<std::uint32_t>> tables;
      for (std::size_t chi = 0; chi < d.size(); ++chi) {
        tables.insert(d.phases(chi));
        for (std::uint32_t a = 0; a < g.order; ++a)
          for (std::uint32_t b = 0; b < g.order; ++b)
            EXPECT_EQ(d.phase(chi, g.op(a, b)), (d.phase(chi, a) + d.phase(chi, b)) % d.exponent());
      }
      EXPECT_EQ(tables.size(), d.size());
      for (std::uint32_t x = 0; x < g.order; ++x) {
        cplx s = 0;
        for (std::size_t chi = 0; chi < d.size(); ++chi) s += d.value(chi, x);
        EXPECT_NEAR(std::abs(s), x == g.identity ? g.order : 0.0, 1e-9);
      }
    }
  }
}

TEST(Abelian, PullbacksFactorThroughTheQuotient) {
  const auto R = Ring::make(Backend::zmod, 3, 2);
  const auto d = abelian_dual(additive_group(R));
  const auto kernel = additive_reduction_kernel(R);
  int pulled = 0;
  for (std::size_t chi = 0; chi < d.size(); ++chi) pulled += is_pullback(d, chi, kernel);
  EXPECT_EQ(pulled, 3);

  const auto F = Ring::make(Backend::zmod, 3, 1);
  const auto du = abelian_dual(unit_group(F));
  const auto uk = unit_reduction_kernel(F);
  for (std::size_t chi = 0; chi < du.size(); ++chi) EXPECT_EQ(is_pullback(du, chi, uk), du.is_trivial(chi));
}

}  // namespace

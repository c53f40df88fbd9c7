#include <gtest/gtest.h>

#include <tuple>

#include "psdec/closed_forms.hpp"
#include "psdec/spectral.hpp"

using namespace psdec;

namespace {

TEST(Spectral, OrbitPartition) {
  const SpectralContext ctx(Backend::zmod, 3, 2, 0);
  const auto parts = theta_orbit_partition(ctx);
  EXPECT_EQ(parts.size(), 9u);
  EXPECT_EQ(parts.at({0, 0}).size(), 36u);
  ASSERT_EQ(parts.at({2, 2}).size(), 1u);
  EXPECT_EQ(parts.at({2, 2}).front(), std::make_pair(ctx.ring().zero(), ctx.ring().zero()));
  std::size_t total = 0;
  for (const auto& [label, orbit] : parts) {
    total += orbit.size();
    EXPECT_EQ(static_cast<std::int64_t>(orbit.size()),
              valuation_shell_size(3, 2, label.i) * valuation_shell_size(3, 2, label.j));
  }
  EXPECT_EQ(total, 81u);
}

TEST(Spectral, WCharacters) {
  const SpectralContext ctx(Backend::zmod, 3, 2, 0);
  const auto w = w_character(ctx, 0, 0);
  EXPECT_NEAR(w.degree().real(), 36.0, 1e-9);
  EXPECT_EQ(inner_product(w, w), 1);
  EXPECT_THROW(w_character(ctx, 3, 0), std::invalid_argument);
}

// Ind_Theta^{A Theta} 1 has (m+1)^2 distinct constituents, one per orbit.
TEST(Spectral, InductionFromThetaToATheta) {
  for (int m : {1, 2}) {
    const SpectralContext ctx(Backend::zmod, 3, m, 0);
    const auto local = relative_subgroup(ctx.theta(), ctx.a_theta(), ctx.a_theta_group());
    const auto ind = induce_character(local, trivial_character(*local.as_group()));
    EXPECT_EQ(inner_product(ind, ind), (m + 1) * (m + 1));
  }
}

TEST(Spectral, WTildeOfTheTopOrbit) {
  const SpectralContext ctx(Backend::zmod, 3, 1, 0);
  const auto w = w_tilde(ctx, 0, 0);
  EXPECT_NEAR(w.degree().real(), 12.0, 1e-9);
  EXPECT_EQ(inner_product(w, w), 2);
  const auto sigmas = sigma_labels(ctx);
  ASSERT_EQ(sigmas.size(), 2u);
  for (const auto& s : sigmas) EXPECT_NEAR(l_sigma_character(ctx, s).degree().real(), 6.0, 1e-9);
}

TEST(Spectral, LSigmaDegreesAtTwo) {
  const SpectralContext unit(Backend::zmod, 2, 2, 0);
  ASSERT_EQ(sigma_labels(unit).size(), 2u);
  for (const auto& s : sigma_labels(unit)) EXPECT_NEAR(l_sigma_character(unit, s).degree().real(), 8.0, 1e-9);
  const SpectralContext nonunit(Backend::zmod, 2, 2, 1);
  ASSERT_EQ(sigma_labels(nonunit).size(), 4u);
  for (const auto& s : sigma_labels(nonunit)) EXPECT_NEAR(l_sigma_character(nonunit, s).degree().real(), 4.0, 1e-9);
}

TEST(Spectral, PullbackCountForNonUnitDelta) {
  const SpectralContext ctx(Backend::zmod, 3, 2, 1);
  int pulled = 0;
  for (const auto& s : sigma_labels(ctx)) pulled += !s.is_new;
  EXPECT_EQ(pulled, 3);
}

TEST(Spectral, EmbeddingExamples) {
  const SpectralContext a(Backend::zmod, 3, 1, 0);
  EXPECT_GE(inner_product(u_dm_character(a, m_rho_minus(a, 1)), w_tilde(a, 1, 0)), 1);
  const SpectralContext b(Backend::zmod, 2, 2, 1);
  EXPECT_GE(inner_product(u_dm_character(b, m_rho_minus(b, 3)), w_tilde(b, 0, 1)), 1);
}

TEST(Spectral, UOfZeroIsTrivial) {
  const SpectralContext ctx(Backend::zmod, 3, 1, 0);
  const auto u0 = u_dm_character(ctx, {0, 0, 0});
  EXPECT_NEAR(u0.degree().real(), 1.0, 1e-9);
  EXPECT_LT(distance(u0, trivial_character(ctx.E())), 1e-9);
  EXPECT_THROW(u_dm_character(ctx, {2, 1, 1}), std::invalid_argument);
}

TEST(Spectral, UOfMRhoIsTheSumOfAllWTilde) {
  for (auto [p, m, e] : {std::tuple{2, 2, 0}, {3, 1, 0}, {2, 2, 1}}) {
    const SpectralContext ctx(Backend::zmod, p, m, e);
    ClassFunction sum{&ctx.E(), std::vector<cplx>(ctx.E().class_count(), 0.0)};
    for (int i = 0; i <= m; ++i)
      for (int j = 0; j <= m; ++j) sum += w_tilde(ctx, i, j);
    EXPECT_LT(distance(sum, u_dm_character(ctx, m_rho(ctx))), 1e-6);
  }
}

TEST(Spectral, HomPatternAtThreeOne) {
  const SpectralContext ctx(Backend::zmod, 3, 1, 0);
  for (const auto& s : sigma_labels(ctx)) {
    const auto l = l_sigma_character(ctx, s);
    std::int64_t best = 0;
    for (int i = 1; i <= 3; ++i) best = std::max(best, inner_product(l, u_dm_character(ctx, m_rho_minus(ctx, i))));
    if (s.is_new)
      EXPECT_EQ(best, 0);
    else
      EXPECT_GE(best, 1);
  }
}

TEST(Spectral, VcmConstituents) {
  EXPECT_TRUE(vcm_constituents(SpectralContext(Backend::zmod, 2, 1, 0)).empty());
  EXPECT_EQ(vcm_constituents(SpectralContext(Backend::zmod, 3, 1, 0)).size(), 1u);
  EXPECT_EQ(vcm_constituents(SpectralContext(Backend::zmod, 3, 2, 1)).size(), 6u);
}

// The closed-form count q-2, q^{m-2}(q-1)^2 or q^m - q^{m-1} against the brute-force new sigma.
TEST(Spectral, ClosedFormCountsMatchBruteForce) {
  const std::vector<std::tuple<ConePoint, int>> points{
      {{2, 2, 3}, 1}, {{3, 3, 4}, 1}, {{4, 4, 6}, 2}, {{5, 5, 7}, 2}, {{4, 5, 7}, 2}};
  for (const auto& [c, m] : points) {
    const auto inv = invariants(c);
    ASSERT_EQ(inv.mu, m);
    ASSERT_EQ(region(c), Region::interior);
    for (std::uint32_t p : {2u, 3u}) {
      const SpectralContext ctx(Backend::zmod, p, m, inv.kappa - m);
      EXPECT_EQ(static_cast<std::int64_t>(vcm_constituents(ctx).size()), constituents_of_class(c, p).count)
          << c.to_string() << " p=" << p;
    }
  }
}

class Suite : public ::testing::TestWithParam<std::tuple<Backend, int, int, int>> {};

TEST_P(Suite, AllReportsPass) {
  const auto [backend, p, m, e] = GetParam();
  for (const auto& r : group_suite(backend, p, m, e)) EXPECT_TRUE(r.ok()) << json(r).dump();
}

INSTANTIATE_TEST_SUITE_P(Points, Suite,
                         ::testing::Values(std::make_tuple(Backend::zmod, 2, 2, 0), std::make_tuple(Backend::zmod, 2, 2, 1),
                                           std::make_tuple(Backend::zmod, 3, 1, 0), std::make_tuple(Backend::zmod, 3, 2, 0),
                                           std::make_tuple(Backend::zmod, 3, 2, 1), std::make_tuple(Backend::zmod, 2, 3, 0),
                                           std::make_tuple(Backend::zmod, 2, 1, 0), std::make_tuple(Backend::zmod, 3, 1, 1),
                                           std::make_tuple(Backend::polymod, 2, 2, 0),
                                           std::make_tuple(Backend::polymod, 2, 2, 1),
                                           std::make_tuple(Backend::polymod, 3, 2, 0),
                                           std::make_tuple(Backend::polymod, 3, 2, 1)));

json without_backend(const Report& r) {
  json j = r;
  j["params"].erase("backend");
  return j;
}

TEST(Spectral, BackendsGiveIdenticalReports) {
  for (auto [p, m, e] : {std::tuple{2, 2, 0}, {2, 2, 1}, {3, 2, 0}, {3, 2, 1}}) {
    const auto z = group_suite(Backend::zmod, p, m, e);
    const auto t = group_suite(Backend::polymod, p, m, e);
    ASSERT_EQ(z.size(), t.size());
    for (std::size_t k = 0; k < z.size(); ++k) EXPECT_EQ(without_backend(z[k]), without_backend(t[k]));
  }
}

TEST(Spectral, OtherBaseCharactersGiveTheSameCounts) {
  const auto base = group_suite(Backend::zmod, 3, 2, 0);
  const auto twisted = group_suite(Backend::zmod, 3, 2, 0, 2, 5);
  for (std::size_t k = 0; k < base.size(); ++k) {
    EXPECT_TRUE(twisted[k].ok());
    EXPECT_EQ(base[k].detail, twisted[k].detail);
  }
}

TEST(Spectral, GroupStructureDetail) {
  const SpectralContext ctx(Backend::zmod, 3, 1, 0);
  const auto r = verify_group_structure(ctx);
  EXPECT_TRUE(r.ok());
  EXPECT_EQ(r.detail["order_E"], 108);
  EXPECT_EQ(r.detail["order_B"], 216);
  EXPECT_EQ(r.detail["center"], 2);
  EXPECT_EQ(r.detail["stabilizer"], 2);
}

TEST(Spectral, RejectsBadContexts) {
  EXPECT_THROW(SpectralContext(Backend::zmod, 3, 0, 0), std::invalid_argument);
  EXPECT_THROW(SpectralContext(Backend::zmod, 3, 1, 0, 3, 1), std::invalid_argument);
}

}  // namespace

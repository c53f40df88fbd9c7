#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <set>
#include <string>
#include <vector>

#include "psdec/cli.hpp"
#include "psdec/closed_forms.hpp"
#include "psdec/gl3_oracle.hpp"
#include "psdec/spectral.hpp"

using namespace psdec;

namespace {

// Pinned tolerances and budgets.
constexpr double integrality_tol = 1e-6;
constexpr double budget_c1 = 0.1, budget_c2 = 1.0, budget_c3 = 1.0, budget_c5 = 300.0, budget_c6 = 120.0;

struct Outcome {
  bool ok = true;
  std::string note;
  void fail(const std::string& why) {
    if (ok) note = why;
    ok = false;
  }
};

bool reports_ok(const std::vector<Report>& rs, Outcome& out) {
  for (const auto& r : rs)
    if (!r.ok()) {
      out.fail(r.check + ": " + json(r).dump());
      return false;
    }
  return true;
}

Outcome level_one_spectrum() {
  Outcome out;
  const std::vector<ConePoint> pts{{0, 0, 0}, {1, 0, 1}, {0, 1, 1}, {1, 1, 1}};
  for (std::int64_t q : {2, 3, 5}) {
    std::multiset<std::int64_t> got;
    for (const auto& c : pts) {
      const auto e = cli::cmd_decompose(c, q, false).document["entries"][0];
      got.insert(e["dim"].get<std::int64_t>());
    }
    const std::multiset<std::int64_t> want{1, q * q + q, q * q + q, q * q * q};
    if (got != want) out.fail("level-1 dims differ at q=" + std::to_string(q));
  }
  return out;
}

Outcome flag_identity() {
  Outcome out;
  for (std::int64_t q : {2, 3, 4, 5, 7, 8, 9})
    if (!flag_identity_check(6, q).ok()) out.fail("flag identity fails at q=" + std::to_string(q));
  const auto counts = count_gl3_and_borel(2, 2, 1u << 20);
  if (counts.gl3 != 86016 || counts.borel != 512 || counts.gl3 / counts.borel != 168)
    out.fail("GL_3(Z/4) order counting gives " + std::to_string(counts.gl3) + "/" + std::to_string(counts.borel));
  return out;
}

Outcome eta1_series() {
  Outcome out;
  const auto cat = catalogue(level_for_exponent(16));
  for (int n = 0; n <= 16; ++n) {
    const auto have = catalogue_count(cat, {DimFamily::eta1, n});
    if (n % 2 && !f_poly(n).is_zero()) out.fail("f_" + std::to_string(n) + " is nonzero");
    for (std::int64_t q : {2, 3, 5})
      if (have.evaluate(q) != f_poly(n).evaluate(q)) out.fail("eta1 count differs at n=" + std::to_string(n));
  }
  return out;
}

Outcome eta2_series() {
  Outcome out;
  const auto cat = catalogue(4);
  const std::vector<std::pair<int, std::int64_t>> want{{5, 2}, {6, 1}, {7, 2}};
  for (const auto& [n, k] : want)
    if (catalogue_count(cat, {DimFamily::eta2, n}) != Poly(k)) out.fail("eta2 count at n=" + std::to_string(n));
  if (g_poly(5) != Poly::monomial(2, 1) + 2 || g_poly(6) != Poly::x(2) + Poly::monomial(2, 1) + 2)
    out.fail("printed g_n not reproduced");
  for (std::int64_t q : {2, 3, 5}) {
    const auto r = cli::cmd_zeta(q, 8, false, false);
    if (r.exit_code != cli::exit_ok) out.fail("zeta reported a failure");
    for (const auto& row : r.document["entries"]) {
      if (row["family"] != "eta2") continue;
      const int n = row["n"];
      if (n >= 5 && n <= 6 && row["status"] != "expected-deviation")
        out.fail("eta2 n=" + std::to_string(n) + " not flagged as expected deviation");
      if (row["status"] == "pass" && row["catalogue"] != row["printed"]) out.fail("silent adoption");
    }
  }
  return out;
}

struct GroupPoint {
  std::uint32_t p;
  int m, e;
};

const std::vector<GroupPoint> group_points{{2, 2, 0}, {2, 2, 1}, {3, 1, 0}, {3, 2, 0}, {3, 2, 1}, {2, 3, 0}};

Outcome group_suites() {
  Outcome out;
  for (const auto& g : group_points) {
    reports_ok(group_suite(Backend::zmod, g.p, g.m, g.e), out);
    if (g.m <= 2) reports_ok(group_suite(Backend::polymod, g.p, g.m, g.e), out);
  }
  return out;
}

// (2,(3,3,4),2,4) has mu = 1 < m and lies outside the domain of eta; (2,(4,4,6),2,6) keeps p = 2, m = 2.
Outcome gl3_suites() {
  Outcome out;
  struct P {
    std::uint32_t p;
    ConePoint c;
    int m, level;
  };
  for (const auto& pt : {P{2, {2, 2, 3}, 1, 3}, P{3, {2, 2, 3}, 1, 3}, P{2, {4, 4, 6}, 2, 6}}) {
    Gl3Params prm;
    prm.p = pt.p;
    prm.c = pt.c;
    prm.m = pt.m;
    prm.level = pt.level;
    prm.seed = 20240;
    prm.homomorphism_pairs = 10000;
    prm.kernel_samples = 1000;
    prm.iwahori_samples = 1000;
    const auto first = gl3_suite(prm);
    reports_ok(first, out);
    if (json(first) != json(gl3_suite(prm))) out.fail("gl3 suite is not deterministic");
  }
  return out;
}

json without_backend(const Report& r) {
  json j = r;
  j["params"].erase("backend");
  return j;
}

Outcome backend_universality() {
  Outcome out;
  for (const auto& g : group_points) {
    if (g.m != 2) continue;
    const auto z = group_suite(Backend::zmod, g.p, g.m, g.e);
    const auto t = group_suite(Backend::polymod, g.p, g.m, g.e);
    if (z.size() != t.size()) out.fail("suite sizes differ");
    for (std::size_t k = 0; k < z.size() && k < t.size(); ++k)
      if (without_backend(z[k]) != without_backend(t[k])) out.fail("backends differ in " + z[k].check);
  }
  return out;
}

Outcome degenerate_vanishing() {
  Outcome out;
  if (!vcm_constituents(SpectralContext(Backend::zmod, 2, 1, 0)).empty()) out.fail("vcm(2,1,0) is not empty");
  if (cli::cmd_decompose({2, 3, 4}, 2, false).document["entries"][0]["count"] != 0) out.fail("decompose count not 0");
  if (!flag_identity_check(6, 2).ok()) out.fail("flag identity fails at q=2");
  return out;
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Outcome()> run;
    double budget;
  };
  const std::vector<Criterion> criteria{
      {"C1 level-1 spectrum", level_one_spectrum, budget_c1},
      {"C2 flag-count identity", flag_identity, budget_c2},
      {"C3 eta1 series", eta1_series, budget_c3},
      {"C4 eta2 comparison", eta2_series, 0},
      {"C5 brute-force group suite", group_suites, budget_c5},
      {"C6 GL3 oracle", gl3_suites, budget_c6},
      {"C7 backend universality", backend_universality, 0},
      {"C8 degenerate vanishing", degenerate_vanishing, 0},
  };
  static_assert(integrality_tolerance == integrality_tol);
  int failures = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = c.run();
    } catch (const std::exception& e) {
      out.fail(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.budget > 0 && secs > c.budget) out.fail("over the " + std::to_string(c.budget) + " s budget");
    failures += !out.ok;
    std::printf("%s %-28s %8.3f s%s%s\n", out.ok ? "PASS" : "FAIL", c.name, secs, out.note.empty() ? "" : "  ",
                out.note.c_str());
  }
  return failures == 0 ? 0 : 1;
}

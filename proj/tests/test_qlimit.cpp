#include <gtest/gtest.h>

#include <cmath>
#include <set>
#include <stdexcept>

#include "oracles.hpp"
#include "soq/qlimit.hpp"

using namespace soq;

namespace {

LaurentOp t_times(const TruncOp& a) { return LaurentOp::monomial(1, a); }

}  // namespace

TEST(LimitPair, D4GeneratorForm) {
  const QParams p = make_params(0.5);
  const LimitPair pr = build_limit_pair(LimitFamily::D4, 0, 3, p);
  ASSERT_EQ(pr.gens_q.size(), pr.gens_0.size());
  ASSERT_EQ(pr.names.size(), pr.gens_q.size());
  const TruncOp a = sqrt_diag_op(1, 2, p.q, p.d) * adj(shift_op(p.d));
  EXPECT_LE(oracle::max_diff(pr.at_q("X2"), t_times(kron(a, a))), 1e-15);
  const TruncOp s = adj(shift_op(p.d));
  EXPECT_LE(oracle::max_diff(pr.at_0("X2"), t_times(kron(s, s))), 1e-15);
  EXPECT_LE(oracle::max_diff(pr.at_q("Y0"), t_times(kron(a, a))), 1e-15);
  EXPECT_THROW(pr.at_q("X7"), std::invalid_argument);
}

TEST(LimitPair, Y2StarIsDiagonal) {
  const QParams p = make_params(0.5);
  const LimitPair pr = build_limit_pair(LimitFamily::D4, 0, 3, p);
  const LaurentOp y = pr.at_q("Y2");
  const TruncOp q2 = qn_op(2, p.q, p.d);
  EXPECT_LE(oracle::max_diff(adj(y) * y, LaurentOp::constant(kron(q2, q2))), 1e-15);
}

TEST(LimitPair, ConvergesAsQVanishes) {
  for (auto [f, n, k] : {std::tuple{LimitFamily::D4, 0, 3}, {LimitFamily::B, 3, 3}, {LimitFamily::B, 2, 3}}) {
    // the top B case carries half-integer powers of q, so the rate is sqrt(q)
    for (double q : {1e-6, 1e-10}) {
      const LimitPair pr = build_limit_pair(f, n, k, make_params(q, 8, 2));
      for (std::size_t g = 0; g < pr.gens_q.size(); ++g)
        EXPECT_LE(oracle::max_diff(pr.gens_q[g], pr.gens_0[g]), 2.0 * std::sqrt(q)) << pr.names[g];
    }
  }
}

TEST(LimitPair, LimitSideIndependentOfQ) {
  for (auto [f, n, k] : {std::tuple{LimitFamily::D4, 0, 3}, {LimitFamily::B, 3, 2}}) {
    const LimitPair a = build_limit_pair(f, n, k, make_params(0.3));
    const LimitPair b = build_limit_pair(f, n, k, make_params(0.7));
    for (std::size_t g = 0; g < a.gens_0.size(); ++g) EXPECT_EQ(oracle::max_diff(a.gens_0[g], b.gens_0[g]), 0.0);
  }
}

TEST(Identity, Y2StarExact) {
  const QParams p = make_params(0.5);
  const LimitPair pr = build_limit_pair(LimitFamily::D4, 0, 3, p);
  EXPECT_LE(verify_identity("D4-Y2-star", pr, 12, p), 1e-14);
  EXPECT_THROW(verify_identity("no-such-identity", pr, 12, p), std::invalid_argument);
}

TEST(Identity, X2SeriesWithinTolerance) {
  const QParams p = make_params(0.5);
  const IdentityResult r = run_identity("D4-X2q-series", p, 12);
  EXPECT_LE(r.residual, p.tol);
  EXPECT_TRUE(r.monotone);
  EXPECT_TRUE(r.series);
}

TEST(Identity, SeriesDecayMatchesInteriorPower) {
  // on interior vectors each series term carries q^{2l(N+1)} with N >= 1, so the tail decays like q^{4L}
  for (double q : {0.3, 0.5}) {
    const QParams p = make_params(q);
    for (const auto& info : identity_catalog()) {
      if (!info.series || info.printed) continue;
      const IdentityResult r = run_identity(info.name, p, 12);
      EXPECT_NEAR(r.derived_slope, 2.0 * info.series_power * std::log(q), 1e-14);
      EXPECT_TRUE(r.derived_slope_ok()) << info.name << " q=" << q << " slope " << r.decay_slope;
      EXPECT_TRUE(r.monotone) << info.name;
    }
  }
}

TEST(Identity, ResidualShrinksWithCutoff) {
  const QParams p = make_params(0.7);
  const LimitPair pr = build_limit_pair(LimitFamily::D4, 0, 3, p);
  double prev = verify_identity("D4-X2q-series", pr, 2, p);
  for (int L = 4; L <= 12; L += 2) {
    const double cur = verify_identity("D4-X2q-series", pr, L, p);
    EXPECT_LE(cur, prev) << L;
    prev = cur;
  }
}

TEST(Catalog, NonPrintedIdentitiesVanish) {
  for (double q : {0.3, 0.5, 0.7}) {
    const QParams p = make_params(q);
    for (const auto& r : run_catalog(p, 12, false)) {
      EXPECT_FALSE(r.printed);
      EXPECT_LE(r.residual, p.tol) << r.name << " q=" << q;
      EXPECT_FALSE(r.anchor.empty());
    }
  }
}

TEST(Catalog, PrintedFormsNeedCorrection) {
  const QParams p = make_params(0.5);
  int printed = 0;
  for (const auto& r : run_catalog(p, 12, true)) {
    if (!r.printed) continue;
    ++printed;
    EXPECT_GT(r.residual, p.tol) << r.name;
  }
  EXPECT_GE(printed, 3);
}

TEST(Catalog, NamesUniqueAndLookup) {
  std::set<std::string> seen;
  for (const auto& info : identity_catalog()) {
    EXPECT_TRUE(seen.insert(info.name).second) << info.name;
    EXPECT_EQ(identity_info(info.name).anchor, info.anchor);
  }
  EXPECT_THROW(identity_info("nope"), std::invalid_argument);
}

TEST(Continuity, TopGeneratorMatchesDiagonalDifference) {
  // x_k = t (x) (q^N)^{k-1}; on the interior the difference is max |q^{a+b} - q'^{a+b}|
  const std::vector<double> grid{0.3, 0.4, 0.5};
  const int d = 16, m = 6, k = 3;
  const ContinuityReport r = continuity_sweep(LimitFamily::B, 3, k, k, grid, d, m);
  ASSERT_EQ(r.diffs.size(), 1u);
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    double best = 0.0;
    for (int a = 0; a < d - m; ++a)
      for (int b = 0; b < d - m; ++b)
        best = std::max(best, std::abs(std::pow(grid[i], a + b) - std::pow(grid[i + 1], a + b)));
    EXPECT_NEAR(r.diffs[0][i], best, 1e-9);
    // mean value bound: |d/dq q^j| <= j, and j <= (k-1)(d-m-1) on the interior
    EXPECT_LE(r.diffs[0][i], (k - 1) * (d - m - 1) * (grid[i + 1] - grid[i]));
  }
}

TEST(Continuity, SweepsPassOnDefaultGrid) {
  std::vector<double> grid;
  for (int i = 0; i <= 8; ++i) grid.push_back(0.3 + 0.05 * i);
  const ContinuityReport b = continuity_sweep(LimitFamily::B, 2, 3, 0, grid);
  EXPECT_TRUE(b.passed()) << b.max_jump_ratio;
  EXPECT_GT(b.lipschitz, 0.0);
  const ContinuityReport d4 = continuity_sweep(LimitFamily::D4, 0, 3, 0, grid);
  EXPECT_TRUE(d4.passed()) << d4.max_jump_ratio;
  EXPECT_THROW(continuity_sweep(LimitFamily::B, 2, 3, 0, {0.5}), std::invalid_argument);
  EXPECT_THROW(continuity_sweep(LimitFamily::B, 2, 3, 0, {0.5, 1.0}), std::invalid_argument);
}

TEST(Family, NamesRoundTrip) {
  for (auto f : {LimitFamily::B, LimitFamily::D4}) EXPECT_EQ(family_from_name(family_name(f)), f);
  EXPECT_THROW(family_from_name("C"), std::invalid_argument);
}

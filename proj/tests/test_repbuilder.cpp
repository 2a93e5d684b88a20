#include <gtest/gtest.h>

#include <cmath>
#include <stdexcept>

#include "oracles.hpp"
#include "soq/repbuilder.hpp"

using namespace soq;

namespace {

constexpr double kQ = 0.5;

LaurentOp mat(const Expr& e, int d, int nf) { return materialize(e, kQ, std::vector<int>(nf, d)); }

double entry_diff(const RepMatrix& a, const RepMatrix& b, int d) {
  EXPECT_EQ(a.nf, b.nf);
  double r = 0.0;
  for (int i = 1; i <= a.N; ++i)
    for (int j = 1; j <= a.N; ++j) r = std::max(r, oracle::max_diff(mat(a.at(i, j), d, a.nf), mat(b.at(i, j), d, b.nf)));
  return r;
}

TruncOp tensor(const std::vector<TruncOp>& f) {
  TruncOp r = f.front();
  for (std::size_t i = 1; i < f.size(); ++i) r = kron(r, f[i]);
  return r;
}

// min over the sign of the interior distance between e and t * tensor(f)
double signed_distance(const Expr& e, int nf, const std::vector<TruncOp>& f, int d, int m) {
  const LaurentOp x = interior_compress(mat(e, d, nf), m);
  const LaurentOp y = interior_compress(LaurentOp::monomial(1, tensor(f)), m);
  return std::min(oracle::max_diff(x, y), oracle::max_diff(x, cplx(-1.0) * y));
}

}  // namespace

TEST(RMatrix, RhoAndC) {
  for (int N = 3; N <= 8; ++N) {
    const RMatrixData R = build_rmatrix(N, kQ);
    EXPECT_DOUBLE_EQ(R.rho[1], N / 2.0 - 1.0);
    for (int i = 1; i <= N; ++i) {
      EXPECT_DOUBLE_EQ(R.rho[R.prime(i)], -R.rho[i]);
      for (int j = 1; j <= N; ++j) EXPECT_DOUBLE_EQ(R.C(i, j), j == R.prime(i) ? std::pow(kQ, -R.rho[i]) : 0.0);
    }
  }
}

TEST(RMatrix, DiagonalEntries) {
  for (int N = 3; N <= 8; ++N) {
    const RMatrixData R = build_rmatrix(N, kQ);
    for (int i = 1; i <= N; ++i) {
      if (i != R.prime(i)) EXPECT_DOUBLE_EQ(R.R(i, i, i, i), kQ);
      for (int j = i + 1; j <= N; ++j)
        if (j != R.prime(i)) EXPECT_DOUBLE_EQ(R.R(i, j, i, j), 1.0);
    }
  }
}

TEST(Frt, TrivialRepresentationExact) {
  for (int N = 3; N <= 7; ++N) {
    const FrtReport f = check_frt(trivial_rep(N, kQ), build_rmatrix(N, kQ), make_params(kQ));
    EXPECT_EQ(f.frt, 0.0);
    EXPECT_EQ(f.unitary, 0.0);
    EXPECT_EQ(f.involution, 0.0);
  }
}

TEST(Tau, ThreeByThree) {
  const RepMatrix t = build_tau(3, {1}, kQ);
  ASSERT_EQ(t.nf, 0);
  EXPECT_EQ(t.at(1, 1).terms().at(0).deg, -1);
  EXPECT_EQ(t.at(3, 3).terms().at(0).deg, 1);
  EXPECT_EQ(t.at(2, 2).terms().at(0).deg, 0);
  EXPECT_TRUE(t.at(1, 2).is_zero());
  EXPECT_EQ(check_frt(t, build_rmatrix(3, kQ), make_params(kQ)).frt, 0.0);
}

TEST(Tau, TrivialDegreesGiveIdentity) {
  for (int N = 4; N <= 7; ++N) {
    const RepMatrix t = build_tau(N, std::vector<int>(rank_from_N(N), 0), kQ);
    EXPECT_EQ(entry_diff(t, trivial_rep(N, kQ), 4), 0.0);
    EXPECT_EQ(check_frt(build_tau(N, single_circle_degrees(rank_from_N(N)), kQ), build_rmatrix(N, kQ), make_params(kQ)).frt, 0.0);
  }
}

TEST(Elementary, FirstNodeEntries) {
  const int d = 10;
  const RepMatrix r = build_elementary(LieType::B, 2, 1, kQ);
  const TruncOp expect = sqrt_diag_op(1, 2, kQ, d) * shift_op(d);
  EXPECT_LE(oracle::max_diff(mat(r.at(1, 1), d, 1), LaurentOp::constant(expect)), 1e-15);
  EXPECT_LE(oracle::max_diff(mat(r.at(3, 3), d, 1), LaurentOp::identity({d})), 0.0);
}

TEST(Elementary, ShortNodeCarriesDoubleAdjointShift) {
  const RepMatrix r = build_elementary(LieType::B, 2, 2, kQ);
  bool found = false;
  for (int i = 2; i <= 4; ++i)
    for (int j = 2; j <= 4; ++j)
      for (const auto& t : r.at(i, j).terms()) {
        int sd = 0;
        for (const auto& p : simplify(t.f[0])) sd += p.kind == Prim::Sd;
        found = found || sd == 2;
      }
  EXPECT_TRUE(found);
}

TEST(Elementary, AllPassFrt) {
  for (int N = 3; N <= 8; ++N) {
    const LieType t = type_from_N(N);
    const int n = rank_from_N(N);
    const RMatrixData R = build_rmatrix(N, kQ);
    for (int i = 1; i <= n; ++i) {
      const FrtReport f = check_frt(build_elementary(t, n, i, kQ), R, make_params(kQ));
      EXPECT_TRUE(f.passed()) << "N=" << N << " i=" << i << " frt=" << f.frt << " unitary=" << f.unitary;
    }
  }
}

TEST(Frt, CorruptedEntryDetected) {
  for (auto [N, i] : {std::pair{5, 1}, {5, 2}, {6, 3}}) {
    RepMatrix r = build_elementary(type_from_N(N), rank_from_N(N), i, kQ);
    r.at(2, 2) = cplx(1.01) * r.at(2, 2);
    const FrtReport f = check_frt(r, build_rmatrix(N, kQ), make_params(kQ));
    EXPECT_FALSE(f.passed());
    EXPECT_GT(std::max({f.frt, f.unitary, f.involution}), f.tol);
  }
}

TEST(Convolve, TrivialIsNeutral) {
  const RepMatrix e = build_elementary(LieType::B, 2, 1, kQ);
  EXPECT_EQ(entry_diff(convolve(trivial_rep(5, kQ), e), e, 8), 0.0);
  EXPECT_EQ(entry_diff(convolve(e, trivial_rep(5, kQ)), e, 8), 0.0);
}

TEST(Convolve, Associative) {
  const RepMatrix a = build_elementary(LieType::B, 2, 1, kQ), b = build_elementary(LieType::B, 2, 2, kQ);
  EXPECT_LE(entry_diff(convolve(convolve(a, b), a), convolve(a, convolve(b, a)), 5), 1e-14);
}

TEST(Convolve, PairsKeepFrtResidualSmall) {
  const QParams p = make_params(kQ, 10, 4);
  for (int N = 4; N <= 7; ++N) {
    const LieType t = type_from_N(N);
    const int n = rank_from_N(N);
    const RMatrixData R = build_rmatrix(N, kQ);
    for (int i = 1; i <= n; ++i)
      for (int j = 1; j <= n; ++j) {
        const RepMatrix a = build_elementary(t, n, i, kQ), b = build_elementary(t, n, j, kQ);
        const double ra = check_frt(a, R, p).frt, rb = check_frt(b, R, p).frt;
        const FrtReport f = check_frt(convolve(a, b), R, p);
        EXPECT_LE(f.frt, 3 * (ra + rb) + p.tol) << "N=" << N << " s" << i << " s" << j;
        EXPECT_TRUE(f.passed());
      }
  }
}

TEST(Pi, EmptyWordIsTau) {
  for (int N = 4; N <= 7; ++N) {
    const int n = rank_from_N(N);
    const RepMatrix a = build_pi(type_from_N(N), n, WeylWord{type_from_N(N), n, {}}, single_circle_degrees(n), kQ);
    EXPECT_EQ(entry_diff(a, build_tau(N, single_circle_degrees(n), kQ), 4), 0.0);
  }
}

TEST(Pi, LengthThreeWordsPassFrt) {
  const QParams p = make_params(kQ, 10, 4);
  for (auto [N, w] : {std::pair{5, "s1s2s1"}, {6, "s1s2s3"}, {6, "s2s3s1"}}) {
    const LieType t = type_from_N(N);
    const int n = rank_from_N(N);
    const FrtReport f = check_frt(build_pi(t, n, parse_word(t, n, w), single_circle_degrees(n), kQ), build_rmatrix(N, kQ), p);
    EXPECT_TRUE(f.passed()) << "N=" << N << " " << w << " frt=" << f.frt;
  }
}

TEST(Eta, EmbeddingPassesFrt) {
  for (int N : {5, 6}) {
    const LieType ti = type_from_N(N - 2);
    const int ni = rank_from_N(N - 2);
    const RepMatrix inner = build_pi(ti, ni, longest_element(ti, ni), single_circle_degrees(ni), kQ);
    const RepMatrix e = eta_N(inner);
    EXPECT_TRUE(check_frt(e, build_rmatrix(N, kQ), make_params(kQ, 10, 4)).passed());
    for (int j = 1; j <= N; ++j) {
      EXPECT_TRUE(e.at(1, j).is_zero() == (j != 1));
      EXPECT_TRUE(e.at(N, j).is_zero() == (j != N));
    }
  }
}

TEST(Vanishing, AllSmallRanks) {
  for (int N = 3; N <= 7; ++N) {
    const LieType t = type_from_N(N);
    const int n = rank_from_N(N);
    for (int k = 1; k <= omega_k_max(t, n); ++k) {
      const VanishingCheck v = check_vanishing(t, n, k, make_params(kQ));
      EXPECT_TRUE(v.passed()) << "N=" << N << " k=" << k;
      const QuotientGens g = quotient_generators(t, n, k, kQ);
      int nonzero = 0;
      for (const auto& x : g.x) nonzero += !x.is_zero();
      EXPECT_EQ(nonzero, g.expected_nonzero()) << "N=" << N << " k=" << k;
    }
  }
}

TEST(Vanishing, OddRankThreeExample) {
  // omega_5 = s1s2s3s2 for n = 3: v^7_j vanishes for j up to the pattern bound
  const VanishingPattern vp = vanishing_pattern(LieType::B, 3, 5);
  const QuotientGens g = quotient_generators(LieType::B, 3, 5, kQ);
  ASSERT_EQ(omega_k(LieType::B, 3, 5).str(), "s1s2s3s2");
  for (int j = 1; j <= vp.zero_upto; ++j) EXPECT_TRUE(g.x[7 - j].is_zero()) << j;
  EXPECT_FALSE(g.x[7 - vp.eigen_index].is_zero());
}

TEST(QuotientGens, LastGeneratorIsDiagonal) {
  const int d = 10, m = 3;
  for (int n = 2; n <= 3; ++n)
    for (int k = 2; k <= n; ++k) {
      const QuotientGens g = quotient_generators(LieType::B, n, k, kQ);
      ASSERT_EQ(g.nf, k - 1);
      std::vector<TruncOp> f(k - 1, qn_op(1, kQ, d));
      EXPECT_LE(signed_distance(g.x[k - 1], g.nf, f, d, m), 1e-14) << "n=" << n << " k=" << k;
      for (int l = 1; l < k; ++l) {
        std::vector<TruncOp> fl;
        for (int i = 1; i < l; ++i) fl.push_back(qn_op(1, kQ, d));
        fl.push_back(sqrt_diag_op(1, 0, kQ, d) * adj(shift_op(d)));
        for (int i = l + 1; i < k; ++i) fl.push_back(TruncOp::identity({d}));
        EXPECT_LE(signed_distance(g.x[l - 1], g.nf, fl, d, m), 1e-14) << "n=" << n << " k=" << k << " l=" << l;
      }
    }
}

TEST(QuotientGens, EvenTopGenerator) {
  const int d = 10, m = 3;
  for (int n = 2; n <= 3; ++n) {
    const QuotientGens g = quotient_generators(LieType::D, n, n + 1, kQ);
    ASSERT_EQ(g.nf, n);
    EXPECT_LE(signed_distance(g.x[n + 1], g.nf, std::vector<TruncOp>(n, qn_op(1, kQ, d)), d, m), 1e-14);
  }
}

TEST(QuotientGens, RowOneFromInvolution) {
  const RMatrixData R = build_rmatrix(5, kQ);
  const RepMatrix pi = build_pi(LieType::B, 2, omega_k(LieType::B, 2, 3), single_circle_degrees(2), kQ);
  const QuotientGens g = quotient_generators(LieType::B, 2, 3, kQ);
  for (int i = 1; i <= 5; ++i) {
    EXPECT_LE(oracle::max_diff(mat(g.row1[i - 1], 6, g.nf), mat(pi.at(1, i), 6, pi.nf)), 1e-14);
    EXPECT_LE(oracle::max_diff(mat(g.x[i - 1], 6, g.nf), mat(pi.at(5, 6 - i), 6, pi.nf)), 1e-14);
  }
}

TEST(RhoK, KillsLastGeneratorAndFixesUnit) {
  for (int n = 2; n <= 3; ++n)
    for (int k = 2; k <= n; ++k) {
      const QuotientGens g = quotient_generators(LieType::B, n, k, kQ);
      const auto r = rho_k(g.x);
      EXPECT_TRUE(r[k - 1].is_zero());
      const Expr one = rho_k({Expr::identity(g.nf)})[0];
      EXPECT_EQ(one.nf(), g.nf - 1);
      EXPECT_EQ(oracle::max_diff(mat(one, 6, one.nf()), LaurentOp::identity(std::vector<int>(one.nf(), 6))), 0.0);
    }
}

TEST(RhoK, ImagesAreSmallerGenerators) {
  for (auto [t, n, k] : {std::tuple{LieType::B, 3, 3}, {LieType::B, 3, 2}, {LieType::B, 2, 3}, {LieType::D, 3, 3}}) {
    const QuotientGens g = quotient_generators(t, n, k, kQ);
    const QuotientGens h = quotient_generators(t, n, k - 1, kQ);
    const auto r = rho_k(g.x);
    for (int j = 1; j < k; ++j)
      EXPECT_LE(oracle::max_diff(mat(r[j - 1], 6, h.nf), mat(h.x[j - 1], 6, h.nf)), 1e-14) << "k=" << k << " j=" << j;
  }
}

TEST(RhoK, MultiplicativeOnPairs) {
  const QuotientGens g = quotient_generators(LieType::B, 3, 3, kQ);
  std::vector<Expr> gens = g.x;
  for (const auto& x : g.x) gens.push_back(adj(x));
  const int nf = g.nf - 1;
  for (const auto& a : gens)
    for (const auto& b : gens) {
      const Expr lhs = sigma_last(a * b);
      const Expr rhs = sigma_last(a) * sigma_last(b);
      EXPECT_LE(oracle::max_diff(mat(lhs, 6, nf), mat(rhs, 6, nf)), 1e-14);
    }
}

TEST(Distinguishability, OmegaKImagesDiffer) {
  // up to 2n Toeplitz factors, so a small cut-off keeps the sampled norms dense
  const int d = 6;
  const QParams p = make_params(kQ, d, 2);
  for (auto t : {LieType::B, LieType::D})
    for (int n = (t == LieType::B ? 1 : 2); n <= 3; ++n) {
      std::vector<std::vector<double>> feat;
      for (int k = 1; k <= omega_k_max(t, n); ++k) {
        const QuotientGens g = quotient_generators(t, n, k, kQ);
        std::vector<double> f;
        for (const auto& x : g.x) {
          if (x.is_zero() || g.nf == 0) {
            f.push_back(x.is_zero() ? 0.0 : 1.0);
            continue;
          }
          const LaurentOp a = interior_compress(mat(x, d, g.nf), p.m);
          f.push_back(norm(a));
        }
        feat.push_back(f);
      }
      for (std::size_t a = 0; a < feat.size(); ++a)
        for (std::size_t b = a + 1; b < feat.size(); ++b) {
          double gap = 0.0;
          for (std::size_t j = 0; j < feat[a].size(); ++j) gap = std::max(gap, std::abs(feat[a][j] - feat[b][j]));
          EXPECT_GT(gap, 0.05) << "n=" << n << " k=" << a + 1 << " vs " << b + 1;
        }
    }
}

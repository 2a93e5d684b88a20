#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "oracles.hpp"
#include "soq/opcalc.hpp"

using namespace soq;

namespace {

TruncOp projector(int i, int d) { return matrix_unit(i, i, d); }

double entry(const TruncOp& a, int i, int j) { return std::abs(a.dense()(i, j)); }

}  // namespace

TEST(Shift, DimensionTwo) {
  const DMat s = shift_op(2).dense();
  EXPECT_EQ(s(0, 1), cplx(1.0));
  EXPECT_EQ(s.cwiseAbs().sum(), 1.0);
}

TEST(Shift, Products) {
  for (int d : {4, 8, 16}) {
    const TruncOp s = shift_op(d);
    const TruncOp id = TruncOp::identity({d});
    EXPECT_EQ(oracle::max_diff(s * adj(s), id - projector(d - 1, d)), 0.0);
    EXPECT_EQ(oracle::max_diff(adj(s) * s, id - projector(0, d)), 0.0);
    EXPECT_EQ(oracle::max_diff(interior_compress(s * adj(s), 1), interior_compress(id, 1)), 0.0);
  }
}

TEST(QN, Diagonal) {
  const DMat a = qn_op(1, 0.5, 3).dense();
  EXPECT_EQ(a, (DMat(3, 3) << 1, 0, 0, 0, 0.5, 0, 0, 0, 0.25).finished());
  for (double q : {0.3, 0.7}) EXPECT_LE(oracle::max_diff(qn_op(2, q, 8), qn_op(1, q, 8) * qn_op(1, q, 8)), 1e-15);
  EXPECT_LE(oracle::max_diff(qn_op(1, 1e-9, 6), projector(0, 6)), 1e-8);
}

TEST(SqrtShift, Entries) {
  const double q = 0.5;
  const int d = 8;
  const TruncOp a = sqrt_shift_op(q, 2, 1, d);
  for (int n = 1; n < d; ++n) EXPECT_NEAR(entry(a, n - 1, n), std::sqrt(1 - std::pow(q, 2 * (n - 1) + 2)), 1e-15);
  // sqrt(1 - q^{2N+2}) acting before the shift: e_n -> sqrt(1 - q^{2n+2}) e_{n-1}
  const TruncOp b = shift_op(d) * sqrt_diag_op(1, 2, q, d);
  for (int n = 1; n < d; ++n) EXPECT_NEAR(entry(b, n - 1, n), std::sqrt(1 - std::pow(q, 2 * n + 2)), 1e-15);
  // e_n -> sqrt(1 - q^{2n}) e_{n-2}
  const TruncOp c = sqrt_shift_op(q, 2, 2, d) * sqrt_diag_op(1, 0, q, d) * sqrt_diag_op(1, 0, q, d);
  const TruncOp c2 = shift_op(d) * shift_op(d) * sqrt_diag_op(1, 0, q, d);
  for (int n = 2; n < d; ++n) EXPECT_NEAR(entry(c2, n - 2, n), std::sqrt(1 - std::pow(q, 2 * n)), 1e-15);
  EXPECT_LE(oracle::max_diff(sqrt_shift_op(q, 4, 2, d), c2), 1e-15);
  EXPECT_GT(oracle::max_diff(c, c2), 1e-3);
  EXPECT_LE(oracle::max_diff(sqrt_shift_op(1e-12, 2, 1, d), shift_op(d)), 1e-12);
  EXPECT_THROW(sqrt_shift_op(q, 0, 0, d), std::invalid_argument);
}

TEST(Kron, IdentityAndDims) {
  const TruncOp k = kron(TruncOp::identity({3}), TruncOp::identity({4, 2}));
  EXPECT_EQ(k.dims, (std::vector<int>{3, 4, 2}));
  EXPECT_EQ(oracle::max_diff(k, TruncOp::identity({3, 4, 2})), 0.0);
  EXPECT_EQ(k.size(), total_dim(k.dims));
}

TEST(Kron, MixedProduct) {
  std::mt19937_64 rng(3);
  const TruncOp a = oracle::random_op({3}, rng), b = oracle::random_op({2}, rng);
  const TruncOp c = oracle::random_op({3}, rng), e = oracle::random_op({2}, rng);
  EXPECT_LE(oracle::max_diff(kron(a, b) * kron(c, e), kron(a * c, b * e)), 1e-12);
}

TEST(Adjoint, AntiHomomorphismAndInvolution) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const TruncOp a = oracle::random_op({3, 2}, rng), b = oracle::random_op({3, 2}, rng);
    EXPECT_LE(oracle::max_diff(adj(a * b), adj(b) * adj(a)), 1e-12);
    EXPECT_EQ(oracle::max_diff(adj(adj(a)), a), 0.0);
    const LaurentOp x = oracle::random_laurent({4}, rng), y = oracle::random_laurent({4}, rng);
    EXPECT_LE(oracle::max_diff(adj(x * y), adj(y) * adj(x)), 1e-12);
    EXPECT_EQ(oracle::max_diff(adj(adj(x)), x), 0.0);
    const LaurentOp xs = adj(x);
    for (int deg = -1; deg <= 1; ++deg)
      EXPECT_EQ((xs.component(deg).dense() - x.component(-deg).dense().adjoint()).cwiseAbs().maxCoeff(), 0.0);
  }
}

TEST(Laurent, DegreeConvolution) {
  const int d = 5;
  const TruncOp p = projector(0, d);
  const LaurentOp tp = LaurentOp::monomial(1, p);
  const LaurentOp sq = tp * tp;
  EXPECT_EQ(sq.support(), std::vector<int>{2});
  std::mt19937_64 rng(5);
  const LaurentOp a = oracle::random_laurent({3}, rng), b = oracle::random_laurent({3}, rng);
  const LaurentOp ab = a * b;
  for (int deg = -2; deg <= 2; ++deg) {
    TruncOp expect = TruncOp::zero({3});
    for (int e = -1; e <= 1; ++e) expect = expect + a.component(e) * b.component(deg - e);
    EXPECT_LE(oracle::max_diff(ab.component(deg), expect), 1e-12);
  }
}

TEST(Laurent, EvaluationMatchesSum) {
  std::mt19937_64 rng(9);
  const LaurentOp a = oracle::random_laurent({3}, rng);
  const cplx t = std::polar(1.0, 0.7);
  const DMat expect = a.component(-1).dense() / t + a.component(0).dense() + a.component(1).dense() * t;
  EXPECT_LE((a.eval(t).dense() - expect).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Norm, CircleVariableIsUnitary) {
  const LaurentOp t = LaurentOp::monomial(1, TruncOp::identity({4, 4}));
  EXPECT_NEAR(norm(t), 1.0, 1e-12);
  EXPECT_NEAR(norm(qn_op(1, 0.5, 6)), 1.0, 1e-12);
  EXPECT_NEAR(norm(shift_op(6)), 1.0, 1e-12);
  EXPECT_LE(norm(shift_op(6)), norm_bound(shift_op(6).mat) + 1e-12);
}

TEST(Norm, SamplingAdequacy) {
  const int d = 4;
  const double q = 0.5;
  const TruncOp s = shift_op(d), qn = qn_op(1, q, d);
  std::vector<LaurentOp> gens{LaurentOp::monomial(1, kron(qn, adj(s))), LaurentOp::monomial(-1, kron(s, qn)),
                              LaurentOp::constant(kron(TruncOp::identity({d}), qn)),
                              LaurentOp::monomial(1, kron(adj(s), TruncOp::identity({d})))};
  // dense sweep on a grid offset from the default sample points
  auto refined = [](const LaurentOp& x) {
    const int count = 8192;
    double best = 0.0;
    for (int k = 0; k < count; ++k) {
      const cplx t = std::polar(1.0, 2.0 * std::numbers::pi * (k + 0.5) / count);
      const DMat m = x.eval(t).dense();
      Eigen::SelfAdjointEigenSolver<DMat> es(m * m.adjoint(), Eigen::EigenvaluesOnly);
      best = std::max(best, std::sqrt(es.eigenvalues().maxCoeff()));
    }
    return best;
  };
  std::vector<LaurentOp> words{LaurentOp::identity({d, d})};
  for (int len = 1; len <= 6; ++len) {
    std::vector<LaurentOp> next;
    for (std::size_t w = 0; w < words.size() && next.size() < 4; ++w)
      for (std::size_t g = 0; g < gens.size(); ++g) next.push_back(words[w] * (gens[g] + gens[(g + len) % gens.size()]));
    for (const auto& x : next) EXPECT_NEAR(norm(x), refined(x), 1e-8) << "length " << len;
    words = next;
  }
}

TEST(Interior, CompressionIsProjectionOfRank) {
  for (auto [d, m, f] : {std::tuple{8, 3, 1}, {6, 2, 2}, {5, 1, 3}}) {
    const std::vector<int> dims(f, d);
    const TruncOp p = interior_compress(TruncOp::identity(dims), m);
    EXPECT_EQ(oracle::max_diff(p * p, p), 0.0);
    EXPECT_NEAR(p.dense().trace().real(), std::pow(d - m, f), 1e-12);
    const auto mask = interior_mask(dims, m);
    long count = 0;
    for (char c : mask) count += c;
    EXPECT_EQ(count, static_cast<long>(std::pow(d - m, f)));
  }
}

TEST(Interior, HidesTruncationArtifactOfQN) {
  const int d = 16, m = 6;
  const double q = 0.7;
  // S q^N S* = q^{N+1}, broken only on the top basis vector
  const TruncOp s = shift_op(d);
  const TruncOp lhs = s * qn_op(1, q, d) * adj(s);
  const TruncOp rhs = cplx(q) * qn_op(1, q, d);
  EXPECT_NEAR(norm(lhs - rhs), std::pow(q, d), 1e-15);
  EXPECT_LE(norm(interior_compress(lhs - rhs, m)), 1e-15);
}

TEST(DiagMap, AndUnitIndicator) {
  const int d = 6;
  const TruncOp qn = qn_op(2, 0.5, d);
  const TruncOp r = diag_map(qn, [](double x) { return std::sqrt(x); }, 1e-14);
  EXPECT_LE(oracle::max_diff(r, qn_op(1, 0.5, d)), 1e-15);
  EXPECT_THROW(diag_map(shift_op(d), [](double x) { return x; }, 1e-14), std::invalid_argument);
  const TruncOp ind = unit_indicator(LaurentOp::constant(adj(shift_op(d)) * shift_op(d)), 1e-12);
  EXPECT_EQ(oracle::max_diff(ind, TruncOp::identity({d}) - projector(0, d)), 0.0);
  EXPECT_THROW(unit_indicator(LaurentOp::monomial(1, TruncOp::identity({d})), 1e-12), std::invalid_argument);
}

#include <gtest/gtest.h>

#include <stdexcept>

#include "oracles.hpp"
#include "soq/weyl.hpp"

using namespace soq;

TEST(SignedPerm, EmptyWordIsIdentity) {
  EXPECT_EQ(signed_perm(WeylWord{LieType::B, 3, {}}), identity_perm(3));
  EXPECT_EQ(WeylWord{}.str(), "I");
}

TEST(SignedPerm, FirstReflectionSwapsCoordinates) {
  EXPECT_EQ(signed_perm(WeylWord{LieType::B, 2, {1}}), (SignedPerm{2, 1}));
}

TEST(SignedPerm, BraidRelationB2) {
  EXPECT_EQ(signed_perm(WeylWord{LieType::B, 2, {1, 2, 1, 2}}), signed_perm(WeylWord{LieType::B, 2, {2, 1, 2, 1}}));
}

TEST(SignedPerm, TypeDLastReflection) {
  // sign flip of the last two coordinates combined with their transposition
  EXPECT_EQ(reflection(LieType::D, 3, 3), (SignedPerm{1, -3, -2}));
}

TEST(SignedPerm, ConcatenationIsComposition) {
  std::mt19937_64 rng(7);
  for (auto t : {LieType::B, LieType::D})
    for (int trial = 0; trial < 200; ++trial) {
      const int n = 2 + static_cast<int>(rng() % 4);
      WeylWord u{t, n, {}}, v{t, n, {}};
      for (int i = 0, lu = static_cast<int>(rng() % 7); i < lu; ++i) u.letters.push_back(1 + static_cast<int>(rng() % n));
      for (int i = 0, lv = static_cast<int>(rng() % 7); i < lv; ++i) v.letters.push_back(1 + static_cast<int>(rng() % n));
      WeylWord uv = u;
      uv.letters.insert(uv.letters.end(), v.letters.begin(), v.letters.end());
      EXPECT_EQ(signed_perm(uv), compose(signed_perm(u), signed_perm(v)));
    }
}

TEST(CoxeterLength, MatchesBreadthFirstSearch) {
  for (auto [t, n] : {std::pair{LieType::B, 2}, {LieType::B, 3}, {LieType::D, 3}, {LieType::D, 4}}) {
    const auto dist = oracle::bfs_lengths(t, n);
    long order = 1;
    for (int i = 2; i <= n; ++i) order *= i;
    order <<= (t == LieType::B ? n : n - 1);
    EXPECT_EQ(static_cast<long>(dist.size()), order);
    for (const auto& [w, l] : dist) EXPECT_EQ(coxeter_length(t, w), l);
  }
}

TEST(LongestElement, Lengths) {
  EXPECT_EQ(longest_element(LieType::B, 1).letters, std::vector<int>{1});
  for (int n = 1; n <= 5; ++n) {
    const WeylWord w = longest_element(LieType::B, n);
    EXPECT_EQ(static_cast<int>(w.length()), n * n);
    EXPECT_TRUE(is_reduced(w));
  }
  EXPECT_EQ(longest_element(LieType::D, 3).length(), 6u);
  for (int n = 2; n <= 5; ++n) {
    const WeylWord w = longest_element(LieType::D, n);
    EXPECT_EQ(static_cast<int>(w.length()), n * n - n);
    EXPECT_TRUE(is_reduced(w));
  }
}

TEST(LongestElement, MaximalInBreadthFirstSearch) {
  for (auto [t, n] : {std::pair{LieType::B, 3}, {LieType::D, 4}}) {
    const auto dist = oracle::bfs_lengths(t, n);
    int maxlen = 0;
    for (const auto& [w, l] : dist) maxlen = std::max(maxlen, l);
    EXPECT_EQ(dist.at(signed_perm(longest_element(t, n))), maxlen);
  }
}

TEST(LongestElement, PrintedTypeDExponentDiffersByOne) {
  for (int n = 2; n <= 6; ++n) EXPECT_EQ(printed_type_D_exponent(n) + 1, coxeter_length(LieType::D, signed_perm(longest_element(LieType::D, n))));
}

TEST(OmegaK, Examples) {
  for (int n = 1; n <= 4; ++n) EXPECT_TRUE(omega_k(LieType::B, n, 1).letters.empty());
  EXPECT_EQ(omega_k(LieType::B, 3, 5).str(), "s1s2s3s2");
  EXPECT_EQ(omega_k(LieType::D, 4, 6).str(), "s1s2s3s4s2");
  EXPECT_EQ(omega_k_max(LieType::B, 3), 6);
  EXPECT_EQ(omega_k_max(LieType::D, 4), 7);
}

TEST(OmegaK, ReducedAndNested) {
  for (auto t : {LieType::B, LieType::D})
    for (int n = (t == LieType::B ? 1 : 2); n <= 6; ++n)
      for (int k = 1; k <= omega_k_max(t, n); ++k) {
        const WeylWord w = omega_k(t, n, k);
        EXPECT_EQ(coxeter_length(t, signed_perm(w)), static_cast<int>(w.length())) << w.str();
        if (k > 1) EXPECT_TRUE(is_subword(omega_k(t, n, k - 1), w)) << w.str();
      }
}

TEST(OmegaN, Words) {
  EXPECT_EQ(omega_N_words(5).omega.str(), "s1s2s1");
  EXPECT_EQ(omega_N_words(5).omega_prime.str(), "s1s2");
  EXPECT_EQ(omega_N_words(6).omega.str(), "s1s2s3s1");
  EXPECT_EQ(omega_N_words(6).omega_prime.str(), "s1s2s3");
  for (int N = 4; N <= 9; ++N) {
    const auto p = omega_N_words(N);
    EXPECT_TRUE(is_subword(p.omega_prime, p.omega));
  }
}

TEST(ParseWord, Formats) {
  const std::vector<int> e{1, 2, 1};
  EXPECT_EQ(parse_word(LieType::B, 2, "s1,s2,s1").letters, e);
  EXPECT_EQ(parse_word(LieType::B, 2, "1,2,1").letters, e);
  EXPECT_EQ(parse_word(LieType::B, 2, "s1s2s1").letters, e);
  EXPECT_THROW(parse_word(LieType::B, 2, "s3"), std::invalid_argument);
  EXPECT_THROW(validate(WeylWord{LieType::D, 3, {0}}), std::invalid_argument);
}

TEST(Subword, NotContiguous) {
  EXPECT_TRUE(is_subword(WeylWord{LieType::B, 3, {1, 3}}, WeylWord{LieType::B, 3, {1, 2, 3}}));
  EXPECT_FALSE(is_subword(WeylWord{LieType::B, 3, {3, 1}}, WeylWord{LieType::B, 3, {1, 2, 3}}));
}

TEST(Types, NAndRank) {
  EXPECT_EQ(type_from_N(7), LieType::B);
  EXPECT_EQ(type_from_N(8), LieType::D);
  EXPECT_EQ(rank_from_N(7), 3);
  EXPECT_EQ(N_from(LieType::D, 4), 8);
}

#include <gtest/gtest.h>

#include <random>
#include <stdexcept>

#include "oracles.hpp"
#include "soq/branching.hpp"

using namespace soq;

namespace {

std::vector<int> zeros(int len) { return std::vector<int>(len, 0); }

}  // namespace

TEST(Multiplicity, Examples) {
  EXPECT_EQ(multiplicity({5, {1, 0}, {0}}), 2);
  EXPECT_EQ(multiplicity({7, {1, 1, 1}, {0, 0}}), 0);
  EXPECT_EQ(multiplicity({7, {2, 1, 0}, {1, 0}}), oracle::two_step(7, {2, 1, 0}, {1, 0}));
  EXPECT_EQ(multiplicity({7, {2, 1, 0}, {1, 0}}), 4);
}

TEST(TrivialMultiplicity, Examples) {
  EXPECT_EQ(trivial_multiplicity({3, 1, 0, 0}, 9), 3);
  for (int N = 4; N <= 9; ++N) EXPECT_EQ(trivial_multiplicity(zeros(N / 2), N), 1);
  // alpha_1 - |alpha_2| + 1
  EXPECT_EQ(trivial_multiplicity({2, -1}, 4), 2);
  EXPECT_EQ(multiplicity({4, {2, -1}, {0}}), 2);
  EXPECT_EQ(trivial_multiplicity({2, 1, 1}, 7), 0);
}

TEST(Multiplicity, TrivialBetaMatchesClosedFormExhaustive) {
  for (int N = 4; N <= 9; ++N)
    for (const auto& a : dominant_weights(N, 6)) {
      const BranchQuery qy{N, a, zeros(N / 2 - 1)};
      EXPECT_EQ(multiplicity(qy), trivial_multiplicity(a, N)) << "N=" << N;
      EXPECT_EQ(multiplicity(qy), oracle::two_step(N, a, qy.beta)) << "N=" << N;
    }
}

TEST(Multiplicity, RandomNonTrivialBetaMatchesOracle) {
  std::mt19937_64 rng(23);
  int tried = 0;
  while (tried < 200) {
    const int N = 5 + static_cast<int>(rng() % 5);
    const auto a = oracle::random_dominant(N, 5, rng);
    const auto b = oracle::random_dominant(N - 2, 5, rng);
    bool trivial = true;
    for (int x : b) trivial = trivial && x == 0;
    if (trivial) continue;
    ++tried;
    EXPECT_EQ(multiplicity({N, a, b}), oracle::two_step(N, a, b)) << "N=" << N;
  }
}

TEST(Multiplicity, MonotoneInFirstEntry) {
  for (int N = 4; N <= 9; ++N)
    for (const auto& a : dominant_weights(N, 5)) {
      auto bigger = a;
      ++bigger[0];
      const auto b = zeros(N / 2 - 1);
      EXPECT_LE(multiplicity({N, a, b}), multiplicity({N, bigger, b}));
    }
}

TEST(Multiplicity, DimensionsAddUp) {
  for (int N = 4; N <= 9; ++N)
    for (const auto& a : dominant_weights(N, 3)) {
      long sum = 0;
      for (const auto& b : dominant_weights(N - 2, a[0])) sum += multiplicity({N, a, b}) * weyl_dimension(N - 2, b);
      EXPECT_EQ(sum, weyl_dimension(N, a)) << "N=" << N;
    }
}

TEST(WeylDimension, MatchesOracleAndKnownValues) {
  EXPECT_EQ(weyl_dimension(5, {1, 0}), 5);
  EXPECT_EQ(weyl_dimension(5, {1, 1}), 10);
  EXPECT_EQ(weyl_dimension(7, {1, 1, 1}), 35);
  EXPECT_EQ(weyl_dimension(8, {1, 1, 1, 1}), 35);
  EXPECT_EQ(weyl_dimension(4, {1, -1}), 3);
  for (int N = 3; N <= 10; ++N)
    for (const auto& w : dominant_weights(N, 4)) EXPECT_EQ(weyl_dimension(N, w), oracle::weyl_dim(N, w));
}

TEST(DominantWeights, CountAndDominance) {
  // SO(5): pairs a1 >= a2 >= 0 with a1 <= 2
  EXPECT_EQ(dominant_weights(5, 2).size(), 6u);
  // SO(4): a1 >= |a2| with a1 <= 1
  EXPECT_EQ(dominant_weights(4, 1).size(), 4u);
  for (const auto& w : dominant_weights(8, 3)) EXPECT_TRUE(is_dominant(8, w));
}

TEST(Validate, Rejects) {
  EXPECT_THROW(validate({5, {0, 1}, {0}}), std::invalid_argument);
  EXPECT_THROW(validate({7, {1, 0, -1}, {0, 0}}), std::invalid_argument);
  EXPECT_THROW(validate({7, {1, 0}, {0, 0}}), std::invalid_argument);
  EXPECT_THROW(validate({6, {1, 0, 0}, {0}}), std::invalid_argument);
  EXPECT_NO_THROW(validate({6, {1, 1, -1}, {0, 0}}));
  EXPECT_THROW(validate({6, {1, 0, -1}, {0, 0}}), std::invalid_argument);
  EXPECT_THROW(multiplicity({5, {0, 1}, {0}}), std::invalid_argument);
}

TEST(Rules, NamesRoundTrip) {
  for (auto r : {BranchRule::Classical, BranchRule::AsPrinted}) EXPECT_EQ(rule_from_name(rule_name(r)), r);
  EXPECT_THROW(rule_from_name("bogus"), std::invalid_argument);
}

TEST(Rules, AsPrintedAgreesOnTrivialBeta) {
  for (int N = 4; N <= 9; ++N)
    for (const auto& a : dominant_weights(N, 4))
      EXPECT_EQ(multiplicity({N, a, zeros(N / 2 - 1)}, BranchRule::AsPrinted), trivial_multiplicity(a, N)) << N;
}

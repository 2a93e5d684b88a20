#pragma once

#include <string>
#include <utility>
#include <vector>

namespace soq {

enum class LieType { B, D };

char type_char(LieType t);
LieType type_from_N(int N);
int rank_from_N(int N);
int N_from(LieType t, int n);

struct WeylWord {
  LieType type = LieType::B;
  int n = 1;
  std::vector<int> letters;  // simple reflection indices, 1..n

  std::size_t length() const { return letters.size(); }
  std::string str() const;  // "s1s2s1", "I" for the empty word
  bool operator==(const WeylWord&) const = default;
};

// Parses "s1,s2,s1", "1,2,1" or "s1s2s1".
WeylWord parse_word(LieType t, int n, const std::string& text);

// Entry j (0-based) holds the signed image of coordinate j+1.
using SignedPerm = std::vector<int>;

void validate(const WeylWord& w);  // throws std::invalid_argument
SignedPerm identity_perm(int n);
SignedPerm reflection(LieType t, int n, int i);
SignedPerm compose(const SignedPerm& a, const SignedPerm& b);  // a after b
SignedPerm signed_perm(const WeylWord& w);

// Coxeter length of a signed permutation (inversion statistics).
int coxeter_length(LieType t, const SignedPerm& w);
bool is_reduced(const WeylWord& w);

WeylWord longest_element(LieType t, int n);
WeylWord omega_k(LieType t, int n, int k);
int omega_k_max(LieType t, int n);  // 2n for B, 2n-1 for D

struct OmegaPair {
  WeylWord omega;
  WeylWord omega_prime;
};
OmegaPair omega_N_words(int N);

// Letters of sub appear in w in order (not necessarily contiguously).
bool is_subword(const WeylWord& sub, const WeylWord& w);

// Tensor degree printed for the type-D longest element, kept for comparison with the Coxeter length.
int printed_type_D_exponent(int n);

}  // namespace soq

#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "soq/opcalc.hpp"

namespace soq {

// One primitive operator on a single Toeplitz factor.
struct Prim {
  enum Kind : std::uint8_t { S, Sd, QN, Sqrt, Unit };
  Kind kind = S;
  double c = 1.0;  // QN: q^{c N}; Sqrt: sqrt(1 - q^{c (2N + a)})
  int a = 0;       // Sqrt offset, or Unit row
  int b = 0;       // Unit column

  static Prim shift() { return {S, 1.0, 0, 0}; }
  static Prim shift_adj() { return {Sd, 1.0, 0, 0}; }
  static Prim qn(double c) { return {QN, c, 0, 0}; }
  static Prim sqrt_diag(double c, int offset) { return {Sqrt, c, offset, 0}; }
  static Prim unit(int i, int j) { return {Unit, 1.0, i, j}; }

  bool operator==(const Prim& o) const { return kind == o.kind && c == o.c && a == o.a && b == o.b; }
  bool operator<(const Prim& o) const;
};

// Operator product of primitives, leftmost acts last. Empty word is the identity.
using Word = std::vector<Prim>;

struct Term {
  cplx coeff{1.0, 0.0};
  int deg = 0;              // Laurent degree in t
  std::vector<Word> f;      // one word per Toeplitz factor
};

// Finite sum of coeff * t^deg * (w_1 (x) ... (x) w_nf).
class Expr {
 public:
  Expr() = default;
  explicit Expr(int nf) : nf_(nf) {}
  static Expr scalar(cplx c, int nf, int deg = 0);
  static Expr identity(int nf) { return scalar(1.0, nf); }
  static Expr monomial(cplx c, int deg, std::vector<Word> factors);
  static Expr from_terms(int nf, std::vector<Term> terms);

  int nf() const { return nf_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  Expr operator+(const Expr& o) const;
  Expr operator-(const Expr& o) const;
  Expr operator*(const Expr& o) const;
  friend Expr operator*(cplx s, const Expr& e);

  // Merge equal (deg, factors) terms and drop coefficients with |c| <= eps.
  void normalize(double eps = 0.0);

 private:
  int nf_ = 0;
  std::vector<Term> terms_;
};

Word simplify(const Word& w);
Word adj(const Word& w);
Expr kron(const Expr& a, const Expr& b);
Expr adj(const Expr& e);
// Symbol map on the last factor: S, S*, sqrt(1 - q^{...}) -> 1; q^{cN} and matrix units -> 0.
Expr sigma_last(const Expr& e);
// Symbol map on the first factor, same rule.
Expr sigma_first(const Expr& e);
std::string to_string(const Expr& e);
std::string to_string(const Word& w);

// Count of upward index moves (S*) and of all shift moves per factor, maximized over terms.
struct MoveBound {
  std::vector<int> up;
  std::vector<int> total;
};
MoveBound move_bound(const Expr& e);

SpMat materialize_word(const Word& w, double q, int d);
LaurentOp materialize(const Expr& e, double q, const std::vector<int>& dims);
LaurentOp materialize(const Expr& e, double q, int d);

// Columns of an operator on the tensor space, graded by Laurent degree.
using Block = std::map<int, SpMat>;

// Identity columns restricted to indices with every factor index < limit_f.
Block interior_columns(const std::vector<int>& dims, const std::vector<int>& limit);
Block vacuum_column(const std::vector<int>& dims);
// e applied to the block; rows with some factor index >= row_limit_f are dropped when row_limit is given.
Block apply(const Expr& e, double q, const std::vector<int>& dims, const Block& in,
            const std::vector<int>& row_limit = {});
Block add(const Block& a, const Block& b, cplx sb = 1.0);
// Upper bound sum_deg sqrt(||X||_1 ||X||_inf), exact norm when rows are not needed.
double block_norm_bound(const Block& b);
// Sampled operator norm of sum_deg t^deg X_deg.
double block_norm(const Block& b, const NormOptions& opt = {});
bool block_is_zero(const Block& b);

}  // namespace soq

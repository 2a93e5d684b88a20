#pragma once

#include <map>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "soq/repbuilder.hpp"
#include "soq/shiftsum.hpp"

namespace soq {

// v^row_col with row in {1, N}.
struct Letter {
  int row = 1;
  int col = 1;
  auto operator<=>(const Letter&) const = default;
};
using Monomial = std::vector<Letter>;

// Noncommutative polynomial in first- and last-row generators; words are never reordered.
class FreePoly {
 public:
  FreePoly() = default;
  static FreePoly unit();
  static FreePoly letter(Letter l);
  static FreePoly word(const Monomial& w, cplx c = 1.0);

  const std::map<Monomial, cplx>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  void add(const Monomial& w, cplx c);
  FreePoly operator+(const FreePoly& o) const;
  FreePoly operator-(const FreePoly& o) const;
  FreePoly operator*(const FreePoly& o) const;
  friend FreePoly operator*(cplx s, const FreePoly& p);
  // Drops coefficients with |c| <= eps.
  void prune(double eps);
  double max_coeff_diff(const FreePoly& o) const;

 private:
  std::map<Monomial, cplx> terms_;
};

std::string to_string(const FreePoly& p, int N);

struct QGen {
  enum Kind { E, F, K, Kinv };
  Kind kind = E;
  int i = 1;
};

// Vector representation of the generator (type B uses U_{q^{1/2}}, so node n carries c and q^{1/2}).
Eigen::MatrixXd t1_matrix(LieType t, int n, QGen g, double q);

// f . v^i_j = sum_k T1(f)_{kj} v^i_k, extended with D(E) = E(x)K + 1(x)E, D(F) = F(x)1 + K^{-1}(x)F, K grouplike.
FreePoly act(QGen g, const FreePoly& p, LieType t, int n, double q);

// The four letters a, b, c, d of the two-row construction.
struct HwLetters {
  Letter a, b, c, d;
  int ladder_node = 1;  // E_i that moves a -> c and b -> d
};
HwLetters default_letters(int N);
HwLetters negative_letters_n4();  // N = 4 with lambda_2 < 0

// Recurrence coefficients A_0 = 1, A_{k+1} = -A_k A_2^k / A_1^{k+1} with A_2^0 := A_1^0.
std::vector<double> u_lambda_coefficients(int lambda, double q);
FreePoly build_u_lambda(int lambda, const HwLetters& L, double q);

struct HighestWeight {
  int N = 5;
  int l1 = 0;
  int l2 = 0;
};
void validate(const HighestWeight& hw);  // throws std::invalid_argument
// r_i exponents of K_i on a highest weight vector, i = 1..n.
std::vector<int> hw_exponents(const HighestWeight& hw);
std::vector<FreePoly> build_hw_vectors(const HighestWeight& hw, double q);
int expected_hw_count(const HighestWeight& hw);

// Evaluates free polynomials under the representation of the quotient generators.
// Intermediate windows grow per factor so that every word is computed without truncation error on the interior.
class PolyEvaluator {
 public:
  PolyEvaluator(QuotientGens gens, const QParams& p);

  int nf() const { return gens_.nf; }
  int N() const { return N_; }
  const std::vector<int>& interior() const { return interior_; }
  const QParams& params() const { return params_; }
  // Margin per factor needed for an exact interior evaluation of p.
  std::vector<int> required_margin(const FreePoly& p);
  ShiftSum eval(const FreePoly& p);
  // Compressed norm: cheap bound, exact norm only above tol.
  double norm(const FreePoly& p);
  // pi(p) e_0 keyed by (t degree, row multi-index).
  std::map<ShiftSum::Key, cplx> vacuum_image(const FreePoly& p);

 private:
  const ShiftSum& letter_table(Letter l, const std::vector<int>& window);
  const Expr& letter_expr(Letter l) const;

  QuotientGens gens_;
  QParams params_;
  int N_ = 0;
  std::vector<int> interior_;
  std::map<std::pair<Letter, std::vector<int>>, ShiftSum> tables_;
  std::map<Letter, std::pair<std::vector<int>, std::vector<int>>> moves_;  // per factor max up / down shift
};

PolyEvaluator make_faithful_evaluator(int N, const QParams& p);

// Nonzero and rank decisions. Evaluation is exact on the interior, so these use a rounding floor
// rather than the truncation tolerance, which reaches 1e-2 at q = 0.7.
inline constexpr double kRoundingFloor = 1e-10;

struct HwReport {
  double e_residual = 0.0;  // max_i ||pi(E_i x)||
  double k_residual = 0.0;  // max_i ||pi(K_i x - q^{r_i} x)||
  double norm = 0.0;        // ||pi(x)||
  int worst_e = 0;
  int worst_k = 0;
  int margin = 0;
  bool passed(double tol) const { return e_residual <= tol && k_residual <= tol && norm > kRoundingFloor; }
};
HwReport verify_hw(const FreePoly& x, const HighestWeight& hw, PolyEvaluator& ev);

struct RankReport {
  int rank = 0;
  int count = 0;
  std::vector<double> singular_values;
};
RankReport linear_independence(const std::vector<FreePoly>& xs, PolyEvaluator& ev);

// max over lines of ||pi(E_1(a^i b^{n-i} c^{n-i} d^i) - ladder right-hand side)||.
double e1_ladder_residual(int n, PolyEvaluator& ev, double q);

}  // namespace soq

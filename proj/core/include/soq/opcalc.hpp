#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <complex>
#include <functional>
#include <map>
#include <vector>

namespace soq {

using cplx = std::complex<double>;
using SpMat = Eigen::SparseMatrix<cplx>;
using DMat = Eigen::MatrixXcd;

// Operator on a tensor product of cut-off shift spaces. Factor 0 is the most significant index.
struct TruncOp {
  std::vector<int> dims;
  SpMat mat;

  TruncOp() = default;
  TruncOp(std::vector<int> dims_, SpMat m);

  long size() const { return static_cast<long>(mat.rows()); }
  static TruncOp identity(const std::vector<int>& dims);
  static TruncOp zero(const std::vector<int>& dims);
  DMat dense() const { return DMat(mat); }
};

long total_dim(const std::vector<int>& dims);

TruncOp shift_op(int d);                       // e_n -> e_{n-1}, e_0 -> 0
TruncOp qn_op(double c, double q, int d);      // diag(q^{c n})
TruncOp matrix_unit(int i, int j, int d);      // |e_i><e_j|
TruncOp sqrt_diag_op(double c, int offset, double q, int d);  // diag sqrt(1 - q^{c(2n+offset)})
// sqrt(1 - q^{2N+offset}) S^power as an operator product: e_n -> sqrt(1 - q^{2(n-power)+offset}) e_{n-power}
TruncOp sqrt_shift_op(double q, int offset, int power, int d);

TruncOp kron(const TruncOp& a, const TruncOp& b);
TruncOp operator*(const TruncOp& a, const TruncOp& b);
TruncOp operator+(const TruncOp& a, const TruncOp& b);
TruncOp operator-(const TruncOp& a, const TruncOp& b);
TruncOp operator*(cplx s, const TruncOp& a);
TruncOp adj(const TruncOp& a);

// Multi-index mask: true where every factor index is < d_f - m.
std::vector<char> interior_mask(const std::vector<int>& dims, int m);
TruncOp interior_compress(const TruncOp& a, int m);

// Operator 2-norm: dense SVD for small sizes, power iteration on A*A otherwise.
double norm(const SpMat& a);
double norm(const TruncOp& a);
// sqrt(||A||_1 ||A||_inf); an upper bound for the 2-norm.
double norm_bound(const SpMat& a);
double max_abs(const SpMat& a);

// f applied to the diagonal of a; throws std::invalid_argument if an off-diagonal entry exceeds tol.
TruncOp diag_map(const TruncOp& a, const std::function<double(double)>& f, double tol);

// Finitely supported Laurent polynomial in the circle variable t with operator coefficients.
class LaurentOp {
 public:
  LaurentOp() = default;
  explicit LaurentOp(const std::vector<int>& dims);
  static LaurentOp constant(const TruncOp& a);
  static LaurentOp monomial(int degree, const TruncOp& a);
  static LaurentOp identity(const std::vector<int>& dims);

  const std::vector<int>& dims() const { return dims_; }
  const std::map<int, TruncOp>& terms() const { return terms_; }
  TruncOp component(int degree) const;
  void set(int degree, const TruncOp& a);
  std::vector<int> support() const;  // degrees with nonzero coefficient
  TruncOp eval(cplx t) const;
  void prune();

  LaurentOp operator+(const LaurentOp& o) const;
  LaurentOp operator-(const LaurentOp& o) const;
  LaurentOp operator*(const LaurentOp& o) const;
  friend LaurentOp operator*(cplx s, const LaurentOp& a);

 private:
  std::vector<int> dims_;
  std::map<int, TruncOp> terms_;  // always contains degree 0
};

LaurentOp kron(const LaurentOp& a, const LaurentOp& b);
LaurentOp adj(const LaurentOp& a);
LaurentOp interior_compress(const LaurentOp& a, int m);

struct NormOptions {
  int samples = 64;
  int max_samples = 4096;
  double stable = 1e-10;
};
// sup over theta of f(theta): equally spaced samples doubled until stable,
// then the largest sampled peaks refined by golden-section search
double circle_sup(const std::function<double(double)>& f, const NormOptions& opt = {});
// circle_sup of the operator 2-norm of a(e^{i theta})
double norm(const LaurentOp& a, const NormOptions& opt = {});
double norm_bound(const LaurentOp& a);

// Spectral indicator of {1} for a diagonal operator of Laurent degree 0, threshold |x - 1| <= tol.
TruncOp unit_indicator(const LaurentOp& a, double tol);

}  // namespace soq

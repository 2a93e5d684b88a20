#include "soq/ktheory.hpp"

#include <Eigen/SparseLU>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "soq/expr.hpp"
#include "soq/repbuilder.hpp"

namespace soq {

namespace {

TruncOp tensor_power(const TruncOp& a, int count) {
  TruncOp r = TruncOp::identity({});
  for (int i = 0; i < count; ++i) r = kron(r, a);
  return r;
}

double interior_trace(const TruncOp& a, int m) {
  auto mask = interior_mask(a.dims, m);
  cplx s = 0.0;
  for (long i = 0; i < a.size(); ++i)
    if (mask[i]) s += a.mat.coeff(i, i);
  return s.real();
}

// Largest coefficient outside degree 0.
double nonconstant_max(const LaurentOp& a) {
  double v = 0.0;
  for (const auto& [deg, c] : a.terms())
    if (deg != 0) v = std::max(v, max_abs(c.mat));
  return v;
}

TruncOp isometry_seed(KCase c, int n, int k, double q, int d) {
  const TruncOp qn = qn_op(1.0, q, d);
  const TruncOp sd = adj(shift_op(d));
  switch (c) {
    case KCase::A:
      return kron(tensor_power(qn, k - 2), sd);
    case KCase::B:
      return kron(tensor_power(qn, n - 1), sd * sd);
    case KCase::D:
      return kron(tensor_power(qn, n - 1), sd);
  }
  throw std::logic_error("bad case");
}

TruncOp expected_defect(KCase c, int n, int k, int d) {
  const TruncOp p = matrix_unit(0, 0, d);
  switch (c) {
    case KCase::A:
      return tensor_power(p, k - 1);
    case KCase::B:
      return kron(tensor_power(p, n - 1), p + matrix_unit(1, 1, d));
    case KCase::D:
      return tensor_power(p, n);
  }
  throw std::logic_error("bad case");
}

void validate(KCase c, int n, int k) {
  switch (c) {
    case KCase::A:
      if (n < 2 || k < 2 || k > n) throw std::invalid_argument("case A needs 2 <= k <= n");
      return;
    case KCase::B:
      if (n < 1 || k != n + 1) throw std::invalid_argument("case B needs k = n + 1");
      return;
    case KCase::D:
      if (n < 2 || k != n + 1) throw std::invalid_argument("case D needs n >= 2 and k = n + 1");
      return;
  }
}

// y_{n+2} 1_{1}(y*y) = +-t (x) p^n for the type D quotient generator, interior residual.
double membership_residual(int n, const QParams& p) {
  const QuotientGens g = quotient_generators(LieType::D, n, n + 1, p.q);
  const LaurentOp y = materialize(g.x[n + 1], p.q, p.d);
  const TruncOp ind = unit_indicator(adj(y) * y, p.tol);
  const LaurentOp w = interior_compress(y * LaurentOp::constant(ind), p.m);
  const TruncOp target = interior_compress(tensor_power(matrix_unit(0, 0, p.d), n), p.m);
  double best = INFINITY;
  for (double s : {1.0, -1.0}) {
    double r = 0.0;
    for (const auto& [deg, c] : w.terms())
      r = std::max(r, max_abs(deg == 1 ? (c - cplx(s) * target).mat : c.mat));
    if (w.terms().count(1) == 0) r = std::max(r, max_abs(target.mat));
    best = std::min(best, r);
  }
  return best;
}

KWitnessReport witness_at(KCase c, int n, int k, const QParams& p) {
  KWitnessReport r;
  r.kase = c;
  r.n = n;
  r.k = k;
  r.d = p.d;
  r.tol = p.tol;

  const LaurentOp yt = LaurentOp::monomial(1, isometry_seed(c, n, k, p.q, p.d));
  const LaurentOp y = lift_isometry(yt, p.tol);
  const std::vector<int> dims = y.dims();
  const LaurentOp one = LaurentOp::identity(dims);

  const LaurentOp dm = interior_compress(one - adj(y) * y, p.m);
  const LaurentOp dp = interior_compress(one - y * adj(y), p.m);
  if (nonconstant_max(dm) > p.tol || nonconstant_max(dp) > p.tol)
    throw std::runtime_error("defect operators carry circle dependence");
  const TruncOp pm = dm.component(0);
  const TruncOp pp = dp.component(0);

  r.defect_minus = interior_trace(pm, p.m);
  r.defect_plus = interior_trace(pp, p.m);
  r.defect_projection = pp;
  const TruncOp expect_plus = interior_compress(expected_defect(c, n, k, p.d), p.m);
  r.projection_residual = std::max(max_abs((pp - expect_plus).mat), max_abs(pm.mat));
  for (const TruncOp* d : {&pm, &pp}) {
    r.idempotent_residual = std::max(r.idempotent_residual, norm(*d * *d - *d));
    r.selfadjoint_residual = std::max(r.selfadjoint_residual, norm(*d - adj(*d)));
  }

  // Case A is the boundary of u_{k-1}; cases B and D of u_n.
  const int uk = c == KCase::A ? k - 1 : n;
  r.winding = winding(build_uk(uk, p));

  switch (c) {
    case KCase::A:
      r.notices.push_back("case C of the odd series reuses this witness; no separate numerical content");
      break;
    case KCase::B:
      r.notices.push_back("defect = 2 x minimal projection: shadow of the Z/2Z torsion generator");
      break;
    case KCase::D:
      r.ideal_residual = membership_residual(n, p);
      r.ideal_membership = r.ideal_residual <= p.tol;
      r.notices.push_back("triviality of the K0 class of the defect is not decided numerically");
      break;
  }
  return r;
}

}  // namespace

LaurentOp build_uk(int k, const QParams& p) {
  if (k < 1) throw std::invalid_argument("build_uk needs k >= 1");
  const TruncOp pk = tensor_power(matrix_unit(0, 0, p.d), k - 1);
  LaurentOp u = LaurentOp::monomial(1, pk);
  u.set(0, TruncOp::identity(pk.dims) - pk);
  return u;
}

int winding(const LaurentOp& u, const WindingOptions& opt) {
  auto total_turn = [&](int samples) {
    std::vector<cplx> dets(samples);
    for (int j = 0; j < samples; ++j) {
      const cplx t = std::polar(1.0, 2.0 * std::numbers::pi * j / samples);
      const SpMat a = u.eval(t).mat;
      SpMat gram = a * SpMat(a.adjoint());
      SpMat id(a.rows(), a.cols());
      id.setIdentity();
      if (max_abs(gram - id) > opt.unitary_tol) throw std::domain_error("operand is not unitary");
      Eigen::SparseLU<SpMat> lu;
      lu.compute(a);
      if (lu.info() != Eigen::Success) throw std::domain_error("singular determinant");
      const cplx det = lu.determinant();
      if (std::abs(det) < opt.min_abs_det) throw std::domain_error("near-singular determinant");
      dets[j] = det;
    }
    double turn = 0.0;
    for (int j = 0; j < samples; ++j) turn += std::arg(dets[(j + 1) % samples] / dets[j]);
    return static_cast<int>(std::lround(turn / (2.0 * std::numbers::pi)));
  };
  int prev = total_turn(opt.samples);
  int agree = 0;
  for (int s = 2 * opt.samples; s <= opt.max_samples; s *= 2) {
    const int w = total_turn(s);
    agree = w == prev ? agree + 1 : 0;
    prev = w;
    if (agree == 2) return w;
  }
  throw std::domain_error("winding number did not stabilise");
}

LaurentOp lift_isometry(const LaurentOp& a, double tol) {
  const TruncOp ind = unit_indicator(adj(a) * a, tol);
  LaurentOp y = a * LaurentOp::constant(ind);
  y.set(0, y.component(0) + (TruncOp::identity(a.dims()) - ind));
  return y;
}

std::string case_name(KCase c) {
  switch (c) {
    case KCase::A: return "A";
    case KCase::B: return "B";
    case KCase::D: return "D";
  }
  return "?";
}

KCase case_from_name(const std::string& s) {
  if (s == "A" || s == "a") return KCase::A;
  if (s == "B" || s == "b") return KCase::B;
  if (s == "D" || s == "d") return KCase::D;
  throw std::invalid_argument("unknown case: " + s);
}

long KWitnessReport::difference() const { return std::lround(defect_plus - defect_minus); }

bool KWitnessReport::passed() const {
  const auto integral = [&](double x) { return std::abs(x - std::round(x)) <= tol && x > -tol; };
  bool ok = winding == 1 && integral(defect_minus) && integral(defect_plus) &&
            difference() == expected_difference() && difference_small_d == difference() &&
            projection_residual <= tol && idempotent_residual <= tol && selfadjoint_residual <= tol;
  if (kase == KCase::D) ok = ok && ideal_membership;
  return ok;
}

KWitnessReport boundary_witness(KCase c, int n, int k, const QParams& p) {
  validate(c, n, k);
  KWitnessReport r = witness_at(c, n, k, p);
  const QParams small = make_params(p.q, 8, std::min(p.m, 3));
  r.difference_small_d = static_cast<int>(witness_at(c, n, k, small).difference());
  return r;
}

}  // namespace soq

#include "soq/opcalc.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace soq {

namespace {

SpMat diag_sparse(const std::vector<cplx>& v) {
  const int n = static_cast<int>(v.size());
  SpMat m(n, n);
  std::vector<Eigen::Triplet<cplx>> t;
  for (int i = 0; i < n; ++i)
    if (v[i] != cplx(0)) t.emplace_back(i, i, v[i]);
  m.setFromTriplets(t.begin(), t.end());
  return m;
}

void require_same(const TruncOp& a, const TruncOp& b, const char* what) {
  if (a.dims != b.dims || a.mat.rows() != b.mat.rows())
    throw std::invalid_argument(std::string("dimension mismatch in ") + what);
}

}  // namespace

long total_dim(const std::vector<int>& dims) {
  long n = 1;
  for (int d : dims) n *= d;
  return n;
}

TruncOp::TruncOp(std::vector<int> dims_, SpMat m) : dims(std::move(dims_)), mat(std::move(m)) {
  if (mat.rows() != total_dim(dims) || mat.cols() != total_dim(dims))
    throw std::invalid_argument("matrix size does not match factor dims");
}

TruncOp TruncOp::identity(const std::vector<int>& dims) {
  long n = total_dim(dims);
  SpMat m(n, n);
  m.setIdentity();
  return TruncOp(dims, m);
}

TruncOp TruncOp::zero(const std::vector<int>& dims) {
  long n = total_dim(dims);
  return TruncOp(dims, SpMat(n, n));
}

TruncOp shift_op(int d) {
  if (d < 2) throw std::invalid_argument("shift_op needs d >= 2");
  SpMat m(d, d);
  std::vector<Eigen::Triplet<cplx>> t;
  for (int n = 1; n < d; ++n) t.emplace_back(n - 1, n, 1.0);
  m.setFromTriplets(t.begin(), t.end());
  return TruncOp({d}, m);
}

TruncOp qn_op(double c, double q, int d) {
  std::vector<cplx> v(d);
  for (int n = 0; n < d; ++n) v[n] = std::pow(q, c * n);
  return TruncOp({d}, diag_sparse(v));
}

TruncOp matrix_unit(int i, int j, int d) {
  if (i < 0 || j < 0 || i >= d || j >= d) throw std::invalid_argument("matrix unit out of range");
  SpMat m(d, d);
  m.insert(i, j) = 1.0;
  return TruncOp({d}, m);
}

TruncOp sqrt_diag_op(double c, int offset, double q, int d) {
  std::vector<cplx> v(d);
  for (int n = 0; n < d; ++n) v[n] = std::sqrt(std::max(0.0, 1.0 - std::pow(q, c * (2.0 * n + offset))));
  return TruncOp({d}, diag_sparse(v));
}

TruncOp sqrt_shift_op(double q, int offset, int power, int d) {
  if (power < 1) throw std::invalid_argument("sqrt_shift_op needs power >= 1");
  TruncOp s = shift_op(d);
  TruncOp p = s;
  for (int k = 1; k < power; ++k) p = p * s;
  return sqrt_diag_op(1.0, offset, q, d) * p;
}

TruncOp kron(const TruncOp& a, const TruncOp& b) {
  std::vector<int> dims = a.dims;
  dims.insert(dims.end(), b.dims.begin(), b.dims.end());
  const long nb = b.mat.rows();
  SpMat m(a.mat.rows() * nb, a.mat.cols() * nb);
  std::vector<Eigen::Triplet<cplx>> t;
  t.reserve(static_cast<std::size_t>(a.mat.nonZeros() * b.mat.nonZeros()));
  for (int ja = 0; ja < a.mat.outerSize(); ++ja)
    for (SpMat::InnerIterator ia(a.mat, ja); ia; ++ia)
      for (int jb = 0; jb < b.mat.outerSize(); ++jb)
        for (SpMat::InnerIterator ib(b.mat, jb); ib; ++ib)
          t.emplace_back(ia.row() * nb + ib.row(), ja * nb + jb, ia.value() * ib.value());
  m.setFromTriplets(t.begin(), t.end());
  return TruncOp(dims, m);
}

TruncOp operator*(const TruncOp& a, const TruncOp& b) {
  require_same(a, b, "mul");
  SpMat m = (a.mat * b.mat).pruned();
  return TruncOp(a.dims, m);
}

TruncOp operator+(const TruncOp& a, const TruncOp& b) {
  require_same(a, b, "add");
  return TruncOp(a.dims, SpMat(a.mat + b.mat));
}

TruncOp operator-(const TruncOp& a, const TruncOp& b) {
  require_same(a, b, "sub");
  return TruncOp(a.dims, SpMat(a.mat - b.mat));
}

TruncOp operator*(cplx s, const TruncOp& a) { return TruncOp(a.dims, SpMat(s * a.mat)); }

TruncOp adj(const TruncOp& a) { return TruncOp(a.dims, SpMat(a.mat.adjoint())); }

std::vector<char> interior_mask(const std::vector<int>& dims, int m) {
  const long n = total_dim(dims);
  std::vector<char> mask(n, 1);
  for (long idx = 0; idx < n; ++idx) {
    long x = idx;
    for (int f = static_cast<int>(dims.size()) - 1; f >= 0; --f) {
      if (x % dims[f] >= dims[f] - m) {
        mask[idx] = 0;
        break;
      }
      x /= dims[f];
    }
  }
  return mask;
}

TruncOp interior_compress(const TruncOp& a, int m) {
  auto mask = interior_mask(a.dims, m);
  SpMat out = a.mat;
  out.prune([&](Eigen::Index r, Eigen::Index c, const cplx&) { return mask[r] && mask[c]; });
  return TruncOp(a.dims, out);
}

double max_abs(const SpMat& a) {
  double v = 0.0;
  for (int j = 0; j < a.outerSize(); ++j)
    for (SpMat::InnerIterator it(a, j); it; ++it) v = std::max(v, std::abs(it.value()));
  return v;
}

TruncOp diag_map(const TruncOp& a, const std::function<double(double)>& f, double tol) {
  std::vector<Eigen::Triplet<cplx>> t;
  for (int j = 0; j < a.mat.outerSize(); ++j)
    for (SpMat::InnerIterator it(a.mat, j); it; ++it)
      if (it.row() != it.col() && std::abs(it.value()) > tol)
        throw std::invalid_argument("operator is not diagonal");
  for (long i = 0; i < a.size(); ++i) {
    const double v = f(a.mat.coeff(i, i).real());
    if (v != 0.0) t.emplace_back(i, i, v);
  }
  SpMat m(a.size(), a.size());
  m.setFromTriplets(t.begin(), t.end());
  return TruncOp(a.dims, m);
}

double norm_bound(const SpMat& a) {
  if (a.nonZeros() == 0) return 0.0;
  std::vector<double> rows(a.rows(), 0.0);
  double c1 = 0.0;
  for (int j = 0; j < a.outerSize(); ++j) {
    double s = 0.0;
    for (SpMat::InnerIterator it(a, j); it; ++it) {
      double v = std::abs(it.value());
      s += v;
      rows[it.row()] += v;
    }
    c1 = std::max(c1, s);
  }
  double ci = 0.0;
  for (double r : rows) ci = std::max(ci, r);
  return std::sqrt(c1 * ci);
}

double norm(const SpMat& a) {
  if (a.nonZeros() == 0 || max_abs(a) == 0.0) return 0.0;
  if (a.rows() * a.cols() <= 300 * 300) {
    // JacobiSVD was seen to overshoot sigma_max by ~1e-6 on some complex 16x16 inputs.
    DMat dense(a);
    Eigen::SelfAdjointEigenSolver<DMat> es(dense.adjoint() * dense, Eigen::EigenvaluesOnly);
    return std::sqrt(std::max(0.0, es.eigenvalues().maxCoeff()));
  }
  // Power iteration on A*A from a fixed start vector keeps results reproducible.
  Eigen::VectorXcd x(a.cols());
  for (Eigen::Index i = 0; i < x.size(); ++i) x(i) = cplx(1.0 + 0.37 * std::sin(1.3 * i), 0.11 * std::cos(0.7 * i));
  x.normalize();
  SpMat ah = a.adjoint();
  double est = 0.0;
  for (int it = 0; it < 2000; ++it) {
    Eigen::VectorXcd y = a * x;
    double ny = y.norm();
    if (ny == 0.0) return est;
    Eigen::VectorXcd z = ah * y;
    double nz = z.norm();
    if (nz == 0.0) return ny;
    double next = std::sqrt(nz);  // ||A*A x|| with ||x|| = 1 approaches sigma_max^2
    x = z / nz;
    if (it > 5 && std::abs(next - est) <= 1e-13 * next) return next;
    est = next;
  }
  return est;
}

double norm(const TruncOp& a) { return norm(a.mat); }

LaurentOp::LaurentOp(const std::vector<int>& dims) : dims_(dims) {
  terms_.emplace(0, TruncOp::zero(dims));
}

LaurentOp LaurentOp::constant(const TruncOp& a) {
  LaurentOp r(a.dims);
  r.terms_[0] = a;
  return r;
}

LaurentOp LaurentOp::monomial(int degree, const TruncOp& a) {
  LaurentOp r(a.dims);
  r.set(degree, a);
  return r;
}

LaurentOp LaurentOp::identity(const std::vector<int>& dims) { return constant(TruncOp::identity(dims)); }

TruncOp LaurentOp::component(int degree) const {
  auto it = terms_.find(degree);
  return it == terms_.end() ? TruncOp::zero(dims_) : it->second;
}

void LaurentOp::set(int degree, const TruncOp& a) {
  if (a.dims != dims_) throw std::invalid_argument("LaurentOp component dims mismatch");
  terms_[degree] = a;
}

std::vector<int> LaurentOp::support() const {
  std::vector<int> s;
  for (const auto& [k, v] : terms_)
    if (max_abs(v.mat) > 0.0) s.push_back(k);
  return s;
}

TruncOp LaurentOp::eval(cplx t) const {
  SpMat acc(total_dim(dims_), total_dim(dims_));
  for (const auto& [k, v] : terms_) acc += std::pow(t, k) * v.mat;
  return TruncOp(dims_, acc);
}

void LaurentOp::prune() {
  for (auto it = terms_.begin(); it != terms_.end();) {
    if (it->first != 0 && max_abs(it->second.mat) == 0.0)
      it = terms_.erase(it);
    else
      ++it;
  }
}

LaurentOp LaurentOp::operator+(const LaurentOp& o) const {
  if (o.dims_ != dims_) throw std::invalid_argument("dimension mismatch in Laurent add");
  LaurentOp r = *this;
  for (const auto& [k, v] : o.terms_) {
    auto it = r.terms_.find(k);
    if (it == r.terms_.end())
      r.terms_.emplace(k, v);
    else
      it->second = it->second + v;
  }
  return r;
}

LaurentOp LaurentOp::operator-(const LaurentOp& o) const { return *this + cplx(-1.0) * o; }

LaurentOp LaurentOp::operator*(const LaurentOp& o) const {
  if (o.dims_ != dims_) throw std::invalid_argument("dimension mismatch in Laurent mul");
  LaurentOp r(dims_);
  for (const auto& [ka, a] : terms_)
    for (const auto& [kb, b] : o.terms_) {
      if (a.mat.nonZeros() == 0 || b.mat.nonZeros() == 0) continue;
      TruncOp p = a * b;
      auto it = r.terms_.find(ka + kb);
      if (it == r.terms_.end())
        r.terms_.emplace(ka + kb, p);
      else
        it->second = it->second + p;
    }
  r.prune();
  return r;
}

LaurentOp operator*(cplx s, const LaurentOp& a) {
  LaurentOp r = a;
  for (auto& [k, v] : r.terms_) v = s * v;
  return r;
}

LaurentOp kron(const LaurentOp& a, const LaurentOp& b) {
  std::vector<int> dims = a.dims();
  dims.insert(dims.end(), b.dims().begin(), b.dims().end());
  LaurentOp r(dims);
  for (const auto& [ka, x] : a.terms())
    for (const auto& [kb, y] : b.terms()) {
      if (x.mat.nonZeros() == 0 || y.mat.nonZeros() == 0) continue;
      r = r + LaurentOp::monomial(ka + kb, kron(x, y));
    }
  return r;
}

LaurentOp adj(const LaurentOp& a) {
  LaurentOp r(a.dims());
  for (const auto& [k, v] : a.terms()) r.set(-k, adj(v));
  if (r.terms().find(0) == r.terms().end()) r.set(0, TruncOp::zero(a.dims()));
  return r;
}

LaurentOp interior_compress(const LaurentOp& a, int m) {
  LaurentOp r(a.dims());
  for (const auto& [k, v] : a.terms()) r.set(k, interior_compress(v, m));
  return r;
}

double norm_bound(const LaurentOp& a) {
  double s = 0.0;
  for (const auto& [k, v] : a.terms()) s += norm_bound(v.mat);
  return s;
}

double circle_sup(const std::function<double(double)>& at, const NormOptions& opt) {
  auto sampled = [&](int count) {
    std::vector<double> v(count);
    for (int k = 0; k < count; ++k) v[k] = at(2.0 * std::numbers::pi * k / count);
    return v;
  };
  int count = opt.samples;
  std::vector<double> vals = sampled(count);
  double prev = *std::max_element(vals.begin(), vals.end());
  while (count < opt.max_samples) {
    std::vector<double> next = sampled(count * 2);
    count *= 2;
    const double cur = *std::max_element(next.begin(), next.end());
    vals = std::move(next);
    const bool stable = std::abs(cur - prev) <= opt.stable * std::max(1.0, cur);
    prev = cur;
    if (stable) break;
  }
  // Every grid contains t = 1, so agreement between doublings can miss a peak between grid points.
  // Golden-section search around the largest local maxima of the final grid.
  std::vector<int> peaks;
  for (int k = 0; k < count; ++k)
    if (vals[k] >= vals[(k + count - 1) % count] && vals[k] >= vals[(k + 1) % count]) peaks.push_back(k);
  std::sort(peaks.begin(), peaks.end(), [&](int x, int y) { return vals[x] > vals[y]; });
  if (peaks.size() > 4) peaks.resize(4);
  const double h = 2.0 * std::numbers::pi / count;
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  double best = prev;
  for (int k : peaks) {
    double lo = h * (k - 1), hi = h * (k + 1);
    double x1 = hi - g * (hi - lo), x2 = lo + g * (hi - lo);
    double f1 = at(x1), f2 = at(x2);
    while (hi - lo > 1e-9 * h) {
      if (f1 < f2) {
        lo = x1;
        x1 = x2;
        f1 = f2;
        x2 = lo + g * (hi - lo);
        f2 = at(x2);
      } else {
        hi = x2;
        x2 = x1;
        f2 = f1;
        x1 = hi - g * (hi - lo);
        f1 = at(x1);
      }
    }
    best = std::max({best, f1, f2});
  }
  return best;
}

double norm(const LaurentOp& a, const NormOptions& opt) {
  auto sup = a.support();
  if (sup.empty()) return 0.0;
  if (sup.size() == 1) return norm(a.component(sup[0]));
  return circle_sup([&](double theta) { return norm(a.eval(std::polar(1.0, theta))); }, opt);
}

TruncOp unit_indicator(const LaurentOp& a, double tol) {
  for (const auto& [deg, c] : a.terms())
    if (deg != 0 && max_abs(c.mat) > tol) throw std::invalid_argument("operator is not of degree 0");
  return diag_map(a.component(0), [tol](double x) { return std::abs(x - 1.0) <= tol ? 1.0 : 0.0; }, tol);
}

}  // namespace soq

#include "soq/repbuilder.hpp"

#include "soq/shiftsum.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <map>
#include <stdexcept>
#include <tuple>

namespace soq {

double RMatrixData::C(int i, int j) const { return j == prime(i) ? std::pow(q, -rho[i]) : 0.0; }

RMatrixData build_rmatrix(int N, double q) {
  if (N < 3) throw std::invalid_argument("build_rmatrix needs N >= 3");
  RMatrixData d;
  d.N = N;
  d.q = q;
  d.rho.assign(N + 1, 0.0);
  for (int i = 1; i <= N; ++i)
    if (i < d.prime(i)) d.rho[i] = N / 2.0 - i;
  for (int i = 1; i <= N; ++i)
    if (i > d.prime(i)) d.rho[i] = -d.rho[d.prime(i)];
  d.r.assign(static_cast<std::size_t>(N) * N * N * N, 0.0);
  const double qq = q - 1.0 / q;
  for (int i = 1; i <= N; ++i)
    for (int j = 1; j <= N; ++j)
      for (int m = 1; m <= N; ++m)
        for (int n = 1; n <= N; ++n) {
          double v;
          if (i > m) {
            v = qq * ((j == m && i == n ? 1.0 : 0.0) - d.C(j, i) * d.C(m, n));
          } else {
            v = (i == m && j == n) ? std::pow(q, (i == j ? 1 : 0) - (i == d.prime(j) ? 1 : 0)) : 0.0;
          }
          d.r[(((i - 1) * N + (j - 1)) * N + (m - 1)) * N + (n - 1)] = v;
        }
  return d;
}

RepMatrix::RepMatrix(int N_, int nf_, double q_, std::string label_)
    : N(N_), nf(nf_), q(q_), label(std::move(label_)), e(static_cast<std::size_t>(N_) * N_, Expr(nf_)) {}

RepMatrix trivial_rep(int N, double q) {
  RepMatrix r(N, 0, q, "counit");
  for (int i = 1; i <= N; ++i) r.at(i, i) = Expr::identity(0);
  return r;
}

RepMatrix build_tau(int N, const std::vector<int>& t_degrees, double q) {
  const int n = N / 2;
  if (static_cast<int>(t_degrees.size()) != n) throw std::invalid_argument("t_degrees must have length floor(N/2)");
  RepMatrix r(N, 0, q, "tau");
  for (int i = 1; i <= N; ++i) {
    int deg = 0;
    if (i <= n)
      deg = -t_degrees[i - 1];
    else if (N + 1 - i <= n)
      deg = t_degrees[N - i];
    r.at(i, i) = Expr::scalar(1.0, 0, deg);
  }
  return r;
}

std::vector<int> single_circle_degrees(int n) { return std::vector<int>(n, 1); }

Expr su2_entry(double c, int k, int l, double q) {
  const double qc = std::pow(q, c);
  if (k == 1 && l == 1) return Expr::monomial(1.0, 0, {Word{Prim::sqrt_diag(c, 2), Prim::shift()}});
  if (k == 2 && l == 2) return Expr::monomial(1.0, 0, {Word{Prim::shift_adj(), Prim::sqrt_diag(c, 2)}});
  if (k == 1 && l == 2) return Expr::monomial(-qc, 0, {Word{Prim::qn(c)}});
  if (k == 2 && l == 1) return Expr::monomial(1.0, 0, {Word{Prim::qn(c)}});
  throw std::invalid_argument("su2_entry index out of range");
}

namespace {

struct HalfBlock {
  int a, b, eps;
};

// Spin-1 matrix coefficients: orthonormal basis of the top component of C^2 (x) C^2,
// generated from e1 (x) e1 by the coproduct of E with K = diag(q_i^{-1}, q_i).
std::array<std::array<Expr, 3>, 3> spin_one_block(double c, double q) {
  const double qi = std::pow(q, c);
  const double cc = std::sqrt(qi + 1.0 / qi);
  Eigen::Matrix2d E, K, I2;
  E << 0, 0, 1, 0;
  K << 1.0 / qi, 0, 0, qi;
  I2.setIdentity();
  Eigen::Matrix4d dE;
  for (int r = 0; r < 4; ++r)
    for (int s = 0; s < 4; ++s)
      dE(r, s) = E(r / 2, s / 2) * K(r % 2, s % 2) + I2(r / 2, s / 2) * E(r % 2, s % 2);
  Eigen::Matrix<double, 4, 3> J;
  J.setZero();
  J(0, 0) = 1.0;
  J.col(1) = dE * J.col(0) / cc;
  J.col(2) = -dE * J.col(1) / (cc * qi);
  for (int k = 0; k < 3; ++k) J.col(k).normalize();
  std::array<std::array<Expr, 3>, 3> W;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) {
      Expr acc(1);
      for (int x = 0; x < 4; ++x)
        for (int y = 0; y < 4; ++y) {
          double coef = J(x, a) * J(y, b);
          if (coef == 0.0) continue;
          acc = acc + cplx(coef) * (su2_entry(c, x / 2 + 1, y / 2 + 1, q) * su2_entry(c, x % 2 + 1, y % 2 + 1, q));
        }
      acc.normalize(1e-14);
      W[a][b] = acc;
    }
  return W;
}

}  // namespace

RepMatrix build_elementary(LieType t, int n, int i, double q) {
  if (i < 1 || i > n) throw std::invalid_argument("elementary index out of range");
  if (t == LieType::D && n < 2) throw std::invalid_argument("type D needs rank >= 2");
  const int N = N_from(t, n);
  RepMatrix V(N, 1, q, std::string("pi_s") + std::to_string(i));
  for (int k = 1; k <= N; ++k) V.at(k, k) = Expr::identity(1);
  std::vector<HalfBlock> blocks;
  if (t == LieType::B) {
    if (i < n) blocks = {{i, i + 1, 1}, {2 * n - i + 1, 2 * n - i + 2, -1}};
  } else {
    if (i < n)
      blocks = {{i, i + 1, 1}, {2 * n - i, 2 * n - i + 1, -1}};
    else
      blocks = {{n, n + 2, -1}, {n - 1, n + 1, 1}};
  }
  for (const auto& bl : blocks) {
    V.at(bl.a, bl.a) = su2_entry(1.0, 1, 1, q);
    V.at(bl.b, bl.b) = su2_entry(1.0, 2, 2, q);
    V.at(bl.a, bl.b) = cplx(bl.eps) * su2_entry(1.0, 1, 2, q);
    V.at(bl.b, bl.a) = cplx(bl.eps) * su2_entry(1.0, 2, 1, q);
  }
  if (t == LieType::B && i == n) {
    auto W = spin_one_block(0.5, q);
    const int idx[3] = {n, n + 1, n + 2};
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) V.at(idx[a], idx[b]) = W[a][b];
  }
  return V;
}

RepMatrix convolve(const RepMatrix& a, const RepMatrix& b) {
  if (a.N != b.N) throw std::invalid_argument("convolve needs equal N");
  RepMatrix r(a.N, a.nf + b.nf, a.q, a.label.empty() ? b.label : a.label + "*" + b.label);
  for (int i = 1; i <= a.N; ++i)
    for (int j = 1; j <= a.N; ++j) {
      std::vector<Term> ts;
      for (int k = 1; k <= a.N; ++k) {
        const Expr& x = a.at(i, k);
        const Expr& y = b.at(k, j);
        for (const auto& s : x.terms())
          for (const auto& u : y.terms()) {
            Term t{s.coeff * u.coeff, s.deg + u.deg, s.f};
            t.f.insert(t.f.end(), u.f.begin(), u.f.end());
            ts.push_back(std::move(t));
          }
      }
      r.at(i, j) = Expr::from_terms(a.nf + b.nf, std::move(ts));
    }
  return r;
}

RepMatrix build_pi(LieType t, int n, const WeylWord& w, const std::vector<int>& t_degrees, double q) {
  validate(w);
  if (w.type != t || w.n != n) throw std::invalid_argument("word type/rank mismatch");
  const int N = N_from(t, n);
  RepMatrix r = build_tau(N, t_degrees, q);
  for (int l : w.letters) r = convolve(r, build_elementary(t, n, l, q));
  r.label = "pi_{t," + w.str() + "}";
  return r;
}

RepMatrix eta_N(const RepMatrix& inner) {
  const int N = inner.N + 2;
  RepMatrix r(N, inner.nf, inner.q, "eta(" + inner.label + ")");
  r.at(1, 1) = Expr::identity(inner.nf);
  r.at(N, N) = Expr::identity(inner.nf);
  for (int i = 2; i < N; ++i)
    for (int j = 2; j < N; ++j) r.at(i, j) = inner.at(i - 1, j - 1);
  return r;
}

std::vector<Expr> rho_k(const std::vector<Expr>& gens) {
  std::vector<Expr> out;
  out.reserve(gens.size());
  for (const auto& g : gens) out.push_back(sigma_last(g));
  return out;
}

namespace {

// Cheap bound first; the exact compressed norm only when the bound could exceed both tol and `floor`.
double residual(const ShiftSum& x, const std::vector<int>& interior, double tol, double floor = 0.0) {
  double bound = compressed_bound(x, interior);
  if (bound <= std::max(tol, floor)) return bound;
  return block_norm(compressed_block(x, interior));
}

}  // namespace

FrtReport check_frt(const RepMatrix& rep, const RMatrixData& R, const QParams& p, const FrtOptions& opt) {
  if (rep.N != R.N) throw std::invalid_argument("check_frt: N mismatch");
  const int N = rep.N;
  FrtReport out;
  out.tol = p.tol;
  const std::vector<int> dims(rep.nf, p.d), interior(rep.nf, p.d - p.m);

  const double q = rep.q;

  std::vector<ShiftSum> V;
  V.reserve(static_cast<std::size_t>(N) * N);
  for (const auto& e : rep.e) V.push_back(shift_sum(e, q, dims));
  auto v = [&](int a, int b) -> const ShiftSum& { return V[(a - 1) * N + (b - 1)]; };
  auto product = [&](int a, int b, int c, int e) { return multiply(v(a, b), v(c, e), interior); };

  // Nonzero R entries grouped by their upper and by their lower index pair.
  std::vector<std::vector<std::tuple<int, int, double>>> upper(static_cast<std::size_t>(N) * N);
  std::vector<std::vector<std::tuple<int, int, double>>> lower(static_cast<std::size_t>(N) * N);
  for (int i = 1; i <= N; ++i)
    for (int j = 1; j <= N; ++j)
      for (int m = 1; m <= N; ++m)
        for (int n = 1; n <= N; ++n) {
          double r = R.R(i, j, m, n);
          if (r == 0.0) continue;
          upper[(i - 1) * N + (j - 1)].emplace_back(m, n, r);
          lower[(m - 1) * N + (n - 1)].emplace_back(i, j, r);
        }

  // Relation (i,j,s,t): sum_{k,l} R^{ji}_{kl} v^k_s v^l_t - R^{lk}_{st} v^i_k v^j_l.
  // Products are cached per column pair; the pairs (s,t) and (t,s) are handled together.
  for (int s = 1; s <= N; ++s)
    for (int t = s; t <= N; ++t) {
      std::map<std::array<int, 4>, ShiftSum> cache;
      auto prod = [&](int a, int b, int c, int e) -> const ShiftSum& {
        const bool keep = (b == s && e == t) || (b == t && e == s);
        std::array<int, 4> key{a, b, c, e};
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
        if (!keep) {
          static thread_local ShiftSum scratch;
          scratch = product(a, b, c, e);
          return scratch;
        }
        return cache.emplace(key, product(a, b, c, e)).first->second;
      };
      for (int pass = 0; pass < (s == t ? 1 : 2); ++pass) {
        const int ss = pass == 0 ? s : t, tt = pass == 0 ? t : s;
        for (int i = 1; i <= N; ++i)
          for (int j = 1; j <= N; ++j) {
            ShiftSum acc(interior);
            for (const auto& [k, l, r] : upper[(j - 1) * N + (i - 1)]) acc.axpy(prod(k, ss, l, tt), r);
            for (const auto& [l, k, r] : lower[(ss - 1) * N + (tt - 1)]) acc.axpy(prod(i, k, j, l), -r);
            double res = residual(acc, interior, p.tol, out.frt);
            ++out.relations;
            if (res > out.frt) {
              out.frt = res;
              out.frt_worst = {i, j, ss, tt};
            }
          }
      }
    }

  if (opt.unitarity) {
    std::vector<ShiftSum> Vadj;
    Vadj.reserve(V.size());
    for (const auto& e : rep.e) Vadj.push_back(shift_sum(adj(e), q, dims));
    auto va = [&](int a, int b) -> const ShiftSum& { return Vadj[(a - 1) * N + (b - 1)]; };
    for (int i = 1; i <= N; ++i)
      for (int j = 1; j <= N; ++j) {
        ShiftSum vv(interior), ww(interior);
        for (int k = 1; k <= N; ++k) {
          vv.axpy(multiply(v(i, k), va(j, k), interior), 1.0);
          ww.axpy(multiply(va(k, i), v(k, j), interior), 1.0);
        }
        if (i == j) {
          ShiftSum id = shift_sum(Expr::identity(rep.nf), q, interior);
          vv.axpy(id, -1.0);
          ww.axpy(id, -1.0);
        }
        out.unitary = std::max({out.unitary, residual(vv, interior, p.tol, out.unitary), residual(ww, interior, p.tol, out.unitary)});
      }
  }

  if (opt.involution) {
    for (int k = 1; k <= N; ++k)
      for (int l = 1; l <= N; ++l) {
        Expr diff = adj(rep.at(k, l)) - cplx(std::pow(q, R.rho[k] - R.rho[l])) * rep.at(R.prime(k), R.prime(l));
        out.involution = std::max(out.involution, residual(shift_sum(diff, q, interior), interior, p.tol, out.involution));
      }
  }
  return out;
}

QuotientGens quotient_generators(LieType t, int n, int k, double q) {
  const int N = N_from(t, n);
  RepMatrix rep = build_pi(t, n, omega_k(t, n, k), single_circle_degrees(n), q);
  RMatrixData R = build_rmatrix(N, q);
  QuotientGens g;
  g.type = t;
  g.n = n;
  g.k = k;
  g.nf = rep.nf;
  for (int j = 1; j <= N; ++j) g.x.push_back(rep.at(N, N + 1 - j));
  for (int i = 1; i <= N; ++i)
    g.row1.push_back(cplx(std::pow(q, R.rho[1] - R.rho[i])) * adj(rep.at(N, N + 1 - i)));
  return g;
}

VanishingPattern vanishing_pattern(LieType t, int n, int k) {
  const int N = N_from(t, n);
  if (k < 1 || k > omega_k_max(t, n)) throw std::invalid_argument("k out of range");
  if (k == 1) return {N - 1, N};
  if (t == LieType::B) {
    if (k <= n) return {2 * n - k + 1, 2 * n - k + 2};
    return {2 * n - k, 2 * n - k + 1};
  }
  if (k <= n) return {2 * n - k, 2 * n - k + 1};
  return {2 * n - k - 1, 2 * n - k};
}

VanishingCheck check_vanishing(LieType t, int n, int k, const QParams& p) {
  const int N = N_from(t, n);
  VanishingCheck c;
  c.pattern = vanishing_pattern(t, n, k);
  QuotientGens g = quotient_generators(t, n, k, p.q);
  auto row_N = [&](int j) -> const Expr& { return g.x[N - j]; };
  c.zeros_exact = true;
  for (int j = 1; j <= c.pattern.zero_upto; ++j) c.zeros_exact = c.zeros_exact && row_N(j).is_zero();
  const std::vector<int> dims(g.nf, p.d);
  const Block vac = vacuum_column(dims);
  Block img = apply(row_N(c.pattern.eigen_index), p.q, dims, vac);
  auto it = img.find(1);
  if (it == img.end()) return c;
  const double a = it->second.coeff(0, 0).real();
  c.sign = a > 0.5 ? 1 : (a < -0.5 ? -1 : 0);
  if (c.sign == 0) return c;
  // Exact comparison: the vacuum image must be sign * t * e_0 with no other component.
  Block diff = add(img, Block{{1, vac.begin()->second}}, -static_cast<double>(c.sign));
  c.eigen_residual = block_norm_bound(diff);
  return c;
}

}  // namespace soq

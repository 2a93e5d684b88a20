#include "soq/qlimit.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <stdexcept>

#include "soq/expr.hpp"
#include "soq/repbuilder.hpp"

namespace soq {

namespace {

using LO = LaurentOp;

LO op(int deg, const std::vector<TruncOp>& fs) {
  TruncOp r = TruncOp::identity({});
  for (const auto& f : fs) r = kron(r, f);
  return LO::monomial(deg, r);
}

std::vector<TruncOp> repeat(const TruncOp& a, int count) { return std::vector<TruncOp>(std::max(count, 0), a); }

std::vector<TruncOp> cat(std::vector<TruncOp> a, const std::vector<TruncOp>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

LO pw(const LO& a, int e) {
  LO r = LO::identity(a.dims());
  for (int i = 0; i < e; ++i) r = r * a;
  return r;
}

// Sum over degrees of the interior-compressed norm of a - b.
double residual(const LO& a, const LO& b, int m) {
  const LO c = interior_compress(a - b, m);
  double s = 0.0;
  for (const auto& [deg, x] : c.terms()) s += norm(x);
  return s;
}

// (a*a)^{-1/2} for diagonal a*a; entries killed by the cut-off stay 0.
LO abs_inverse(const LO& a, double tol) {
  const LO g = adj(a) * a;
  for (const auto& [deg, c] : g.terms())
    if (deg != 0 && max_abs(c.mat) > tol) throw std::invalid_argument("operator modulus is not of degree 0");
  return LO::constant(diag_map(g.component(0), [](double x) { return x > 1e-300 ? 1.0 / std::sqrt(x) : 0.0; }, tol));
}

LO abs_of(const LO& a, double tol) {
  const LO g = adj(a) * a;
  return LO::constant(diag_map(g.component(0), [](double x) { return std::sqrt(std::max(x, 0.0)); }, tol));
}

// prod_{l=1..j} sqrt(1 - q^{2l + shift})
double coeff_prod(int j, double q, int shift) {
  double r = 1.0;
  for (int l = 1; l <= j; ++l) r *= std::sqrt(1.0 - std::pow(q, 2 * l + shift));
  return r;
}

struct Ops {
  int d;
  double q;
  TruncOp I, p, Sd, A, AB;
  explicit Ops(const QParams& pr)
      : d(pr.d), q(pr.q), I(TruncOp::identity({pr.d})), p(matrix_unit(0, 0, pr.d)), Sd(adj(shift_op(pr.d))),
        A(sqrt_diag_op(1.0, 2, pr.q, pr.d) * Sd), AB(sqrt_diag_op(1.0, 0, pr.q, pr.d) * Sd) {}
  TruncOp qn(double c) const { return qn_op(c, q, d); }
  TruncOp pu(int i, int j) const { return matrix_unit(i, j, d); }
  // -sum_{l <= L} coeff_l q^{2lN}, the cut series of sqrt(1 - q^{2N+2})
  TruncOp sqrt_series(int L) const {
    TruncOp s = TruncOp::zero({d});
    for (int l = 0; l <= L; ++l) s = s - cplx(sqrt_series_coeff(l, q)) * qn(2.0 * l);
    return s;
  }
};

// q -> 0 limit of a word: q^{cN} -> p, sqrt(1 - q^{c(2N+a)}) -> 1 except where the exponent vanishes.
SpMat limit_word(const Word& w, int d) {
  SpMat r(d, d);
  r.setIdentity();
  for (const Prim& pr : w) {
    SpMat f(d, d);
    std::vector<Eigen::Triplet<cplx>> t;
    switch (pr.kind) {
      case Prim::S:
        f = shift_op(d).mat;
        break;
      case Prim::Sd:
        f = adj(shift_op(d)).mat;
        break;
      case Prim::QN:
        if (pr.c == 0.0)
          f.setIdentity();
        else
          f = matrix_unit(0, 0, d).mat;
        break;
      case Prim::Sqrt:
        for (int n = 0; n < d; ++n)
          if (pr.c * (2 * n + pr.a) != 0.0) t.emplace_back(n, n, 1.0);
        f.setFromTriplets(t.begin(), t.end());
        break;
      case Prim::Unit:
        f = matrix_unit(pr.a, pr.b, d).mat;
        break;
    }
    r = r * f;
  }
  return r;
}

LO limit_materialize(const Expr& e, int d) {
  std::vector<int> dims(e.nf(), d);
  LO r(dims);
  for (const Term& t : e.terms()) {
    TruncOp acc = TruncOp::identity({});
    for (const Word& w : t.f) acc = kron(acc, TruncOp({d}, limit_word(w, d)));
    r = r + LO::monomial(t.deg, cplx(t.coeff) * acc);
  }
  return r;
}

void push(LimitPair& pr, const std::string& name, const LO& gq, const LO& g0) {
  pr.names.push_back(name);
  pr.gens_q.push_back(gq);
  pr.gens_0.push_back(g0);
}

// ---- D4 identities (pair k = 3 unless noted) ----

double d4_y2_star(const LimitPair& pr, int, const QParams& p) {
  Ops o(p);
  const LO& y2 = pr.at_q("Y2");
  return residual(adj(y2) * y2, op(0, {o.qn(2), o.qn(2)}), p.m);
}

double d4_pp_indicator(const LimitPair& pr, int, const QParams& p) {
  Ops o(p);
  const LO& y2 = pr.at_q("Y2");
  return residual(LO::constant(unit_indicator(adj(y2) * y2, p.tol)), op(0, {o.p, o.p}), p.m);
}

double d4_pp_power(const LimitPair& pr, int, const QParams& p) {
  Ops o(p);
  const LO& y2 = pr.at_q("Y2");
  const LO pp = LO::constant(unit_indicator(adj(y2) * y2, p.tol));
  double r = 0.0;
  for (int m = -3; m <= 3; ++m) {
    const LO lhs = m >= 0 ? pw(y2, m) * pp : pw(adj(y2), -m) * pp;
    r = std::max(r, residual(lhs, op(m, {o.p, o.p}), p.m));
  }
  return r;
}

double d4_units_q(const LimitPair& pr, const QParams& p, bool printed) {
  Ops o(p);
  const LO& x1 = pr.at_q("X1");
  const LO& y1 = pr.at_q("Y1");
  double r = 0.0;
  for (int m : {-1, 1})
    for (int i1 = 0; i1 <= 2; ++i1)
      for (int j1 = 0; j1 <= 2; ++j1)
        for (int i2 = 0; i2 <= 2; ++i2)
          for (int j2 = 0; j2 <= 2; ++j2) {
            const LO lhs = pw(y1, j2) * pw(x1, j1) * op(m + i1 + i2 - j1 - j2, {o.p, o.p}) * pw(adj(x1), i1) *
                           pw(adj(y1), i2);
            double c = coeff_prod(i1, o.q, 2) * coeff_prod(j1, o.q, 2) * coeff_prod(i2, o.q, 2) *
                       coeff_prod(j2, o.q, 2);
            if (!printed) c *= std::pow(o.q, i1 * i2 + j1 * j2);
            r = std::max(r, residual(lhs, cplx(c) * op(m, {o.pu(j1, i1), o.pu(j2, i2)}), p.m));
          }
  return r;
}

LO d4_z(const Ops& o) { return op(1, {o.Sd, o.qn(1)}); }

double d4_x1q_reconstruction(const LimitPair& pr, int, const QParams& p) {
  Ops o(p);
  return residual(d4_z(o), op(1, {o.Sd - o.A, o.qn(1)}) + pr.at_q("X1"), p.m);
}

double d4_odd_power(const LimitPair&, int, const QParams& p) {
  Ops o(p);
  const LO z = d4_z(o);
  double r = 0.0;
  for (int k = 0; k <= 3; ++k) r = std::max(r, residual(z * pw(adj(z) * z, k), op(1, {o.Sd, o.qn(2 * k + 1)}), p.m));
  return r;
}

double d4_sp_indicator(const LimitPair&, int, const QParams& p) {
  Ops o(p);
  const LO z = d4_z(o);
  return residual(z * LO::constant(unit_indicator(adj(z) * z, p.tol)), op(1, {o.Sd, o.p}), p.m);
}

double d4_abs_x2(const LimitPair& pr, int, const QParams& p) {
  Ops o(p);
  const TruncOp s4 = sqrt_diag_op(1.0, 4, o.q, o.d);
  return residual(abs_of(pr.at_q("X2"), p.tol), op(0, {s4, s4}), p.m);
}

double d4_polar_x2(const LimitPair& pr, int, const QParams& p) {
  Ops o(p);
  const LO& x2 = pr.at_q("X2");
  return residual(x2 * abs_inverse(x2, p.tol), op(1, {o.Sd, o.Sd}), p.m);
}

double d4_units_0(const LimitPair& pr, int, const QParams& p) {
  Ops o(p);
  const LO& x1 = pr.at_0("X1");
  const LO& y1 = pr.at_0("Y1");
  double r = 0.0;
  for (int m : {-1, 1})
    for (int i = 0; i <= 3; ++i)
      for (int j = 0; j <= 3; ++j) {
        const LO mid = op(m + i - j, {o.p, o.p});
        r = std::max(r, residual(pw(x1, j) * mid * pw(adj(x1), i), op(m, {o.pu(j, i), o.p}), p.m));
        r = std::max(r, residual(pw(y1, j) * mid * pw(adj(y1), i), op(m, {o.p, o.pu(j, i)}), p.m));
      }
  return r;
}

double d4_units_x2_0(const LimitPair& pr, int, const QParams& p) {
  Ops o(p);
  const LO& x2 = pr.at_0("X2");
  double r = 0.0;
  for (int m : {-1, 1})
    for (int i1 = 0; i1 <= 2; ++i1)
      for (int j1 = 0; j1 <= 2; ++j1)
        for (int i2 = 0; i2 <= 2; ++i2)
          for (int j2 = 0; j2 <= 2; ++j2) {
            const LO target = op(m, {o.pu(j1, i1), o.pu(j2, i2)});
            if (i1 >= i2 && j1 >= j2) {
              const LO lhs = pw(x2, j2) * op(m + i2 - j2, {o.pu(j1 - j2, i1 - i2), o.p}) * pw(adj(x2), i2);
              r = std::max(r, residual(lhs, target, p.m));
            }
            if (i1 <= i2 && j1 <= j2) {
              const LO lhs = pw(x2, j1) * op(m + i1 - j1, {o.p, o.pu(j2 - j1, i2 - i1)}) * pw(adj(x2), i1);
              r = std::max(r, residual(lhs, target, p.m));
            }
          }
  return r;
}

double d4_diag_series(const LimitPair& pr, int, const QParams& p) {
  Ops o(p);
  double r = 0.0;
  auto diag_sum = [&](double c1, double c2, int m) {
    LO s(std::vector<int>{o.d, o.d});
    for (int i = 0; i < o.d; ++i)
      for (int j = 0; j < o.d; ++j) s = s + cplx(std::pow(o.q, c1 * i + c2 * j)) * op(m, {o.pu(i, i), o.pu(j, j)});
    return s;
  };
  for (auto [c1, c2] : {std::pair{1.0, 1.0}, {2.0, 1.0}, {0.5, 2.0}})
    for (int m : {0, 1}) r = std::max(r, residual(diag_sum(c1, c2, m), op(m, {o.qn(c1), o.qn(c2)}), p.m));
  r = std::max(r, residual(diag_sum(1.0, 1.0, 1), pr.at_q("Y2"), p.m));
  return r;
}

double d4_x2q_series(const LimitPair& pr, int L, const QParams& p) {
  Ops o(p);
  // the double sum over (l, r) factors into a product of two single sums
  const TruncOp s = o.sqrt_series(L);
  return residual(op(0, {s, s}) * pr.at_0("X2"), pr.at_q("X2"), p.m);
}

LO d4_sp_unit(const LimitPair& pr, const Ops& o, int i, bool y_side, bool printed) {
  const LO& x2 = pr.at_0("X2");
  const LO& g = pr.at_0(y_side ? "Y1" : "X1");
  LO r = pw(x2, i) * g * (printed ? pw(x2, i) : pw(adj(x2), i));
  for (int l = 0; l < i; ++l)
    r = r + (y_side ? op(1, {o.pu(i, i), o.pu(l + 1, l)}) : op(1, {o.pu(l + 1, l), o.pu(i, i)}));
  return r;
}

double d4_spii_0(const LimitPair& pr, int, const QParams& p) {
  Ops o(p);
  double r = 0.0;
  for (int i = 0; i <= 5; ++i) r = std::max(r, residual(d4_sp_unit(pr, o, i, false, false), op(1, {o.Sd, o.pu(i, i)}), p.m));
  return r;
}

double d4_sq_sum(const LimitPair& pr, int, const QParams& p) {
  Ops o(p);
  double r = 0.0;
  for (double c : {0.5, 1.0}) {
    LO s(std::vector<int>{o.d, o.d});
    for (int i = 0; i < o.d - p.m; ++i) s = s + cplx(std::pow(o.q, c * i)) * d4_sp_unit(pr, o, i, false, false);
    r = std::max(r, residual(s, op(1, {o.Sd, o.qn(c)}), p.m));
  }
  return r;
}

double d4_x1q_series(const LimitPair& pr, int L, const QParams& p) {
  Ops o(p);
  return residual(op(0, {o.sqrt_series(L), o.qn(0.5)}) * op(1, {o.Sd, o.qn(0.5)}), pr.at_q("X1"), p.m);
}

double d4_psii_0(const LimitPair& pr, const QParams& p, bool printed) {
  Ops o(p);
  double r = 0.0;
  for (int i = 0; i <= 5; ++i)
    r = std::max(r, residual(d4_sp_unit(pr, o, i, true, printed), op(1, {o.pu(i, i), o.Sd}), p.m));
  return r;
}

double d4_y1q_series(const LimitPair& pr, int L, const QParams& p) {
  Ops o(p);
  return residual(op(0, {o.qn(0.5), o.sqrt_series(L)}) * op(1, {o.qn(0.5), o.Sd}), pr.at_q("Y1"), p.m);
}

double d4k2_x1q_series(const LimitPair& pr, int L, const QParams& p) {
  Ops o(p);
  return residual(op(0, {o.sqrt_series(L)}) * pr.at_0("X1"), pr.at_q("X1"), p.m);
}

double d4k2_polar(const LimitPair& pr, int, const QParams& p) {
  const LO& x1 = pr.at_q("X1");
  return residual(x1 * abs_inverse(x1, p.tol), pr.at_0("X1"), p.m);
}

// ---- B identities ----

std::string xname(int j) { return "x" + std::to_string(j); }

double b_generator_form(const LimitPair& pr, int, const QParams& p) {
  const QuotientGens g = quotient_generators(LieType::B, pr.n, pr.k, p.q);
  const std::vector<int> dims(pr.k - 1, p.d);
  double r = 0.0;
  for (int j = 1; j <= static_cast<int>(g.x.size()); ++j) {
    const LO x = materialize(g.x[j - 1], p.q, dims);
    if (j <= pr.k) {
      const LO& want = pr.at_q(xname(j));
      r = std::max(r, std::min(residual(x, want, p.m), residual(x, cplx(-1.0) * want, p.m)));
    } else {
      r = std::max(r, residual(x, LO(dims), p.m));
    }
  }
  return r;
}

double b_units(const LimitPair& pr, const QParams& p, bool printed) {
  Ops o(p);
  const int k = pr.k;
  const LO& xk = pr.at_q(xname(k));
  const LO proj = LO::constant(unit_indicator(adj(xk) * xk, p.tol));
  double r = 0.0;
  for (int l = 1; l < k; ++l) {
    const LO& xl = pr.at_q(xname(l));
    for (int rr = 1; rr <= 2; ++rr) {
      const LO core = pw(xk, rr) * proj;
      for (int i = 0; i <= 3; ++i)
        for (int j = 0; j <= 3; ++j) {
          const LO lhs = pw(xl, j) * core * pw(adj(xl), i);
          LO rhs;
          if (printed)
            rhs = op(rr, cat(cat(repeat(o.p, l - 1), {o.pu(i, j)}), repeat(o.p, k - l - 1)));
          else
            rhs = cplx(coeff_prod(i, o.q, 0) * coeff_prod(j, o.q, 0)) *
                  op(rr + j - i, cat(cat(repeat(o.p, l - 1), {o.pu(j, i)}), repeat(o.p, k - l - 1)));
          r = std::max(r, residual(lhs, rhs, p.m));
        }
    }
  }
  return r;
}

double b_xl_series(const LimitPair& pr, int L, const QParams& p) {
  Ops o(p);
  const int k = pr.k;
  double r = 0.0;
  for (int l = 1; l < k; ++l) {
    const LO hat = op(1, cat(cat(repeat(o.qn(1), l - 1), {o.Sd}), repeat(o.I, k - l - 1)));
    const LO series = op(0, cat(cat(repeat(o.I, l - 1), {o.sqrt_series(L)}), repeat(o.I, k - l - 1)));
    r = std::max(r, residual(hat * series, pr.at_q(xname(l)), p.m));
  }
  return r;
}

double b_polar(const LimitPair& pr, int, const QParams& p) {
  const LO& x1 = pr.at_q("x1");
  return residual(x1 * abs_inverse(x1, p.tol), pr.at_0("x1"), p.m);
}

double b_top_membership(const LimitPair& pr, int, const QParams& p) {
  Ops o(p);
  const LO& y = pr.at_q(pr.names.back());
  const LO w = y * LO::constant(unit_indicator(adj(y) * y, p.tol));
  const LO target = op(1, repeat(o.p, static_cast<int>(y.dims().size())));
  return std::min(residual(w, target, p.m), residual(w, cplx(-1.0) * target, p.m));
}

using IdentityFn = std::function<double(const LimitPair&, int, const QParams&)>;

struct Entry {
  IdentityInfo info;
  IdentityFn fn;
};

const std::vector<Entry>& entries() {
  static const std::vector<Entry> e = [] {
    using F = LimitFamily;
    const std::string d4 = "D4 q-invariance: ";
    const std::string bq = "odd quotient ideal structure: ";
    const std::string bt = "odd q-invariance at k = n+1: ";
    std::vector<Entry> v = {
        {{"D4-Y2-star", F::D4, 0, 3, false, false, d4 + "Y*_{2,q} Y_{2,q} = 1 (x) q^{2N} (x) q^{2N}"}, d4_y2_star},
        {{"D4-pp-indicator", F::D4, 0, 3, false, false, d4 + "1 (x) p (x) p from Y*_{2,q} Y_{2,q}"}, d4_pp_indicator},
        {{"D4-pp-power", F::D4, 0, 3, false, false, d4 + "t^m (x) p (x) p = Y_{2,q}^m (1 (x) p (x) p)"}, d4_pp_power},
        {{"D4-units-q", F::D4, 0, 3, false, false,
          d4 + "t^m (x) p_{j1 i1} (x) p_{j2 i2} from X_{1,q}, Y_{1,q} conjugation, with factor q^{i1 i2 + j1 j2}"},
         [](const LimitPair& pr, int, const QParams& p) { return d4_units_q(pr, p, false); }},
        {{"D4-units-q-printed", F::D4, 0, 3, false, true,
          d4 + "t^m (x) p_{j1 i1} (x) p_{j2 i2} from X_{1,q}, Y_{1,q} conjugation, coefficient as displayed"},
         [](const LimitPair& pr, int, const QParams& p) { return d4_units_q(pr, p, true); }},
        {{"D4-X1q-reconstruction", F::D4, 0, 3, false, false,
          d4 + "t (x) S* (x) q^N = t (x) (1 - sqrt(1-q^{2N+2})) S* (x) q^N + X_{1,q}"},
         d4_x1q_reconstruction},
        {{"D4-odd-power", F::D4, 0, 3, false, false, d4 + "t (x) S* (x) q^{(2k+1)N} = Z (Z*Z)^k"}, d4_odd_power},
        {{"D4-Sp-indicator", F::D4, 0, 3, false, false, d4 + "t (x) S* (x) p in D4_3(q)"}, d4_sp_indicator},
        {{"D4-abs-X2", F::D4, 0, 3, false, false, d4 + "|X_{2,q}| = 1 (x) sqrt(1-q^{2N+4}) (x) sqrt(1-q^{2N+4})"},
         d4_abs_x2},
        {{"D4-polar-X2", F::D4, 0, 3, false, false, d4 + "t (x) S* (x) S* = X_{2,q} |X_{2,q}|^{-1}"}, d4_polar_x2},
        {{"D4-units-0", F::D4, 0, 3, false, false, d4 + "t^m (x) p_{ji} (x) p and t^m (x) p (x) p_{ji} in D4_3(0)"},
         d4_units_0},
        {{"D4-units-X2-0", F::D4, 0, 3, false, false, d4 + "t^m (x) p_{j1 i1} (x) p_{j2 i2} via X_{2,0} conjugation"},
         d4_units_x2_0},
        {{"D4-diag-series", F::D4, 0, 3, false, false, d4 + "t^m (x) q^{c1 N} (x) q^{c2 N} = sum q^{c1 i + c2 j} t^m (x) p_ii (x) p_jj"},
         d4_diag_series},
        {{"D4-X2q-series", F::D4, 0, 3, true, false, d4 + "binomial series of X_{2,q} over X_{2,0}", 2}, d4_x2q_series},
        {{"D4-SpII-0", F::D4, 0, 3, false, false, d4 + "t (x) S* (x) p_ii = X_{2,0}^i X_{1,0} (X*_{2,0})^i + sum"}, d4_spii_0},
        {{"D4-Sq-sum", F::D4, 0, 3, false, false, d4 + "t (x) S* (x) q^{cN} = sum q^{ci} t (x) S* (x) p_ii"}, d4_sq_sum},
        {{"D4-X1q-series", F::D4, 0, 3, true, false, d4 + "binomial series of X_{1,q}", 2}, d4_x1q_series},
        {{"D4-pSII-0", F::D4, 0, 3, false, false,
          d4 + "t (x) p_ii (x) S* = X_{2,0}^i Y_{1,0} (X*_{2,0})^i + sum (adjoint on the right)"},
         [](const LimitPair& pr, int, const QParams& p) { return d4_psii_0(pr, p, false); }},
        {{"D4-pSII-0-printed", F::D4, 0, 3, false, true,
          d4 + "t (x) p_ii (x) S* = X_{2,0}^i Y_{1,0} (X_{2,0})^i + sum, as displayed"},
         [](const LimitPair& pr, int, const QParams& p) { return d4_psii_0(pr, p, true); }},
        {{"D4-Y1q-series", F::D4, 0, 3, true, false, d4 + "binomial series of Y_{1,q}", 2}, d4_y1q_series},
        {{"D4k2-X1q-series", F::D4, 0, 2, true, false, d4 + "binomial series of X_{1,q} for D4_2", 2}, d4k2_x1q_series},
        {{"D4k2-polar", F::D4, 0, 2, false, false, d4 + "X_{1,0} = X_{1,q} |X_{1,q}|^{-1} for D4_2"}, d4k2_polar},
        {{"B-generator-form", F::B, 3, 3, false, false, bq + "x_l and x_k closed forms, x_j = 0 for j > k"},
         b_generator_form},
        {{"B-units", F::B, 3, 3, false, false,
          bq + "x_l^j x_k^r 1_{1}(x_k* x_k) (x_l*)^i = c_i c_j t^{r+j-i} (x) p..p_{ji}..p"},
         [](const LimitPair& pr, int, const QParams& p) { return b_units(pr, p, false); }},
        {{"B-units-printed", F::B, 3, 3, false, true, bq + "x_l^j x_k^r 1_{1}(x_k* x_k) (x_l*)^i = t^r (x) p..p_{ij}..p as displayed"},
         [](const LimitPair& pr, int, const QParams& p) { return b_units(pr, p, true); }},
        {{"B-xl-series", F::B, 3, 3, true, false, bq + "binomial series of sqrt(1-q^{2N}) S* in x_l"}, b_xl_series},
        {{"B-polar", F::B, 3, 3, false, false, bq + "x_{1,0} = x_1 |x_1|^{-1}"}, b_polar},
        {{"B-top-polar-n1", F::B, 1, 2, false, false, bt + "x_{1,0} = x_1 |x_1|^{-1} (evidence)"}, b_polar},
        {{"B-top-polar-n2", F::B, 2, 3, false, false, bt + "x_{1,0} = x_1 |x_1|^{-1} (evidence)"}, b_polar},
        {{"B-top-membership-n1", F::B, 1, 2, false, false, bt + "y 1_{1}(y*y) = t (x) p^{(x)n} for the last generator (evidence)"},
         b_top_membership},
        {{"B-top-membership-n2", F::B, 2, 3, false, false, bt + "y 1_{1}(y*y) = t (x) p^{(x)n} for the last generator (evidence)"},
         b_top_membership},
    };
    return v;
  }();
  return e;
}

const Entry& entry(const std::string& name) {
  for (const auto& e : entries())
    if (e.info.name == name) return e;
  throw std::invalid_argument("unknown identity: " + name);
}

// Least-squares slope of log residual against L over the usable points nearest to L0.
double fit_slope(const std::map<int, double>& res, int L0) {
  std::vector<std::pair<int, double>> pts;
  for (const auto& [L, r] : res)
    if (r > 1e-13) pts.emplace_back(L, std::log(r));
  std::sort(pts.begin(), pts.end(), [&](const auto& a, const auto& b) {
    const int da = std::abs(a.first - L0), db = std::abs(b.first - L0);
    return da != db ? da < db : a.first < b.first;
  });
  if (pts.size() > 5) pts.resize(5);
  if (pts.size() < 3) return std::numeric_limits<double>::quiet_NaN();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (auto [x, y] : pts) {
    sx += x;
    sy += y;
    sxx += double(x) * x;
    sxy += x * y;
  }
  const double n = static_cast<double>(pts.size());
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace

std::string family_name(LimitFamily f) { return f == LimitFamily::B ? "B" : "D4"; }

LimitFamily family_from_name(const std::string& s) {
  if (s == "B" || s == "b") return LimitFamily::B;
  if (s == "D4" || s == "d4") return LimitFamily::D4;
  throw std::invalid_argument("unknown family: " + s);
}

const LaurentOp& LimitPair::at_q(const std::string& name) const {
  for (std::size_t i = 0; i < names.size(); ++i)
    if (names[i] == name) return gens_q[i];
  throw std::invalid_argument("no generator " + name);
}

const LaurentOp& LimitPair::at_0(const std::string& name) const {
  for (std::size_t i = 0; i < names.size(); ++i)
    if (names[i] == name) return gens_0[i];
  throw std::invalid_argument("no generator " + name);
}

LimitPair build_limit_pair(LimitFamily f, int n, int k, const QParams& p) {
  LimitPair pr;
  pr.family = f;
  pr.n = n;
  pr.k = k;
  pr.q = p.q;
  Ops o(p);
  if (f == LimitFamily::D4) {
    if (k < 1 || k > 3) throw std::invalid_argument("D4 pair needs k in {1,2,3}");
    for (int l = 0; l < k; ++l)
      push(pr, "X" + std::to_string(l), op(1, cat(repeat(o.A, l), repeat(o.qn(1), k - 1 - l))),
           op(1, cat(repeat(o.Sd, l), repeat(o.p, k - 1 - l))));
    for (int l = 0; l < k; ++l)
      push(pr, "Y" + std::to_string(l), op(1, cat(repeat(o.qn(1), l), repeat(o.A, k - 1 - l))),
           op(1, cat(repeat(o.p, l), repeat(o.Sd, k - 1 - l))));
    return pr;
  }
  if (n < 1 || k < 1 || k > n + 1) throw std::invalid_argument("B pair needs 1 <= k <= n+1");
  if (k <= n) {
    for (int l = 1; l < k; ++l)
      push(pr, xname(l), op(1, cat(cat(repeat(o.qn(1), l - 1), {o.AB}), repeat(o.I, k - l - 1))),
           op(1, cat(cat(repeat(o.p, l - 1), {o.Sd}), repeat(o.I, k - l - 1))));
    push(pr, xname(k), op(1, repeat(o.qn(1), k - 1)), op(1, repeat(o.p, k - 1)));
    return pr;
  }
  const QuotientGens g = quotient_generators(LieType::B, n, k, p.q);
  for (int j = 1; j <= g.expected_nonzero(); ++j)
    push(pr, xname(j), materialize(g.x[j - 1], p.q, p.d), limit_materialize(g.x[j - 1], p.d));
  return pr;
}

const std::vector<IdentityInfo>& identity_catalog() {
  static const std::vector<IdentityInfo> c = [] {
    std::vector<IdentityInfo> v;
    for (const auto& e : entries()) v.push_back(e.info);
    return v;
  }();
  return c;
}

const IdentityInfo& identity_info(const std::string& name) { return entry(name).info; }

double verify_identity(const std::string& name, const LimitPair& pair, int L, const QParams& p) {
  const Entry& e = entry(name);
  if (pair.family != e.info.family || pair.k != e.info.k || (e.info.n != 0 && pair.n != e.info.n))
    throw std::invalid_argument("identity " + name + " does not apply to this pair");
  if (L < 0) throw std::invalid_argument("series cutoff must be nonnegative");
  return e.fn(pair, L, p);
}

bool IdentityResult::slope_ok() const {
  if (!series) return true;
  if (!std::isfinite(decay_slope)) return false;
  return std::abs(decay_slope / expected_slope - 1.0) <= 0.2;
}

bool IdentityResult::derived_slope_ok() const {
  if (!series) return true;
  if (!std::isfinite(decay_slope)) return false;
  return std::abs(decay_slope / derived_slope - 1.0) <= 0.2;
}

bool IdentityResult::passed() const { return residual <= tol && slope_ok() && monotone; }

IdentityResult run_identity(const std::string& name, const QParams& p, int L) {
  const IdentityInfo& info = identity_info(name);
  const LimitPair pair = build_limit_pair(info.family, info.n, info.k, p);
  IdentityResult r;
  r.name = name;
  r.anchor = info.anchor;
  r.q = p.q;
  r.d = p.d;
  r.L = L;
  r.series = info.series;
  r.printed = info.printed;
  r.tol = p.tol;
  r.expected_slope = 2.0 * std::log(p.q);
  r.derived_slope = info.series_power * r.expected_slope;
  r.residual = verify_identity(name, pair, L, p);
  if (info.series) {
    std::map<int, double> res;
    for (int l = 2; l <= 20; ++l) res[l] = l == L ? r.residual : verify_identity(name, pair, l, p);
    for (int l = 2; l + 2 <= 20; ++l)
      if (res[l + 2] > res[l] * (1.0 + 1e-9) + 1e-15) r.monotone = false;
    r.decay_slope = fit_slope(res, L);
  }
  return r;
}

std::vector<IdentityResult> run_catalog(const QParams& p, int L, bool include_printed) {
  std::vector<IdentityResult> out;
  for (const auto& info : identity_catalog())
    if (include_printed || !info.printed) out.push_back(run_identity(info.name, p, L));
  return out;
}

bool ContinuityReport::passed() const { return std::isfinite(lipschitz) && max_jump_ratio <= 5.0; }

ContinuityReport continuity_sweep(LimitFamily f, int n, int k, int j, const std::vector<double>& grid, int d,
                                  int m) {
  if (grid.size() < 2) throw std::invalid_argument("continuity sweep needs at least two grid points");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (grid[i] <= 0.0 || grid[i] >= 1.0) throw std::invalid_argument("grid points must lie in (0,1)");
    if (i > 0 && grid[i] <= grid[i - 1]) throw std::invalid_argument("grid must be strictly increasing");
  }
  ContinuityReport rep;
  rep.family = f;
  rep.n = n;
  rep.k = k;
  rep.grid = grid;
  std::vector<LimitPair> pairs;
  for (double q : grid) {
    QParams p;
    p.q = q;
    p.d = d;
    p.m = m;
    pairs.push_back(build_limit_pair(f, n, k, p));
  }
  const auto& names = pairs.front().names;
  if (j < 0 || j > static_cast<int>(names.size())) throw std::invalid_argument("generator index out of range");
  for (std::size_t g = 0; g < names.size(); ++g) {
    if (j != 0 && static_cast<int>(g) != j - 1) continue;
    rep.names.push_back(names[g]);
    std::vector<double> row;
    for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
      const double diff = residual(pairs[i + 1].gens_q[g], pairs[i].gens_q[g], m);
      row.push_back(diff);
      rep.lipschitz = std::max(rep.lipschitz, diff / (grid[i + 1] - grid[i]));
    }
    std::vector<double> sorted = row;
    std::sort(sorted.begin(), sorted.end());
    const double med = sorted[sorted.size() / 2];
    const double mx = sorted.back();
    const double ratio = mx == 0.0 ? 0.0 : (med == 0.0 ? INFINITY : mx / med);
    rep.max_jump_ratio = std::max(rep.max_jump_ratio, ratio);
    rep.diffs.push_back(std::move(row));
  }
  return rep;
}

}  // namespace soq

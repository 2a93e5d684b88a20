#include "soq/expr.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <tuple>

namespace soq {

bool Prim::operator<(const Prim& o) const {
  return std::tie(kind, c, a, b) < std::tie(o.kind, o.c, o.a, o.b);
}

namespace {

Prim adj_prim(const Prim& p) {
  switch (p.kind) {
    case Prim::S: return Prim::shift_adj();
    case Prim::Sd: return Prim::shift();
    case Prim::Unit: return Prim::unit(p.b, p.a);
    default: return p;
  }
}

// Returns 1 or 0 (symbol of one primitive).
int sigma_prim(const Prim& p) {
  switch (p.kind) {
    case Prim::S:
    case Prim::Sd:
    case Prim::Sqrt: return 1;
    default: return 0;
  }
}

bool term_less(const Term& x, const Term& y) {
  if (x.deg != y.deg) return x.deg < y.deg;
  return x.f < y.f;
}

bool term_same(const Term& x, const Term& y) { return x.deg == y.deg && x.f == y.f; }

}  // namespace

Word simplify(const Word& w) {
  Word out;
  for (const Prim& p : w) {
    if (!out.empty()) {
      Prim& last = out.back();
      if (last.kind == Prim::QN && p.kind == Prim::QN) {
        last.c += p.c;
        continue;
      }
    }
    out.push_back(p);
  }
  return out;
}

Word adj(const Word& w) {
  Word out;
  for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back(adj_prim(*it));
  return out;
}

Expr Expr::scalar(cplx c, int nf, int deg) {
  Expr e(nf);
  if (c != cplx(0)) e.terms_.push_back(Term{c, deg, std::vector<Word>(nf)});
  return e;
}

Expr Expr::monomial(cplx c, int deg, std::vector<Word> factors) {
  Expr e(static_cast<int>(factors.size()));
  for (auto& w : factors) w = simplify(w);
  if (c != cplx(0)) e.terms_.push_back(Term{c, deg, std::move(factors)});
  return e;
}

Expr Expr::from_terms(int nf, std::vector<Term> terms) {
  Expr e(nf);
  for (auto& t : terms) {
    if (static_cast<int>(t.f.size()) != nf) throw std::invalid_argument("term factor count mismatch");
    if (t.coeff == cplx(0)) continue;
    for (auto& w : t.f) w = simplify(w);
    e.terms_.push_back(std::move(t));
  }
  e.normalize();
  return e;
}

void Expr::normalize(double eps) {
  // Products of matrix units collapse here: p_ij p_kl = delta_jk p_il.
  std::vector<Term> cleaned;
  cleaned.reserve(terms_.size());
  for (auto& t : terms_) {
    bool zero = false;
    for (auto& w : t.f) {
      Word r;
      for (const Prim& p : w) {
        if (!r.empty() && r.back().kind == Prim::Unit && p.kind == Prim::Unit) {
          if (r.back().b != p.a) {
            zero = true;
            break;
          }
          r.back().b = p.b;
          continue;
        }
        r.push_back(p);
      }
      w = simplify(r);
      if (zero) break;
    }
    if (!zero) cleaned.push_back(std::move(t));
  }
  std::sort(cleaned.begin(), cleaned.end(), term_less);
  std::vector<Term> merged;
  for (auto& t : cleaned) {
    if (!merged.empty() && term_same(merged.back(), t))
      merged.back().coeff += t.coeff;
    else
      merged.push_back(std::move(t));
  }
  terms_.clear();
  for (auto& t : merged)
    if (std::abs(t.coeff) > eps) terms_.push_back(std::move(t));
}

Expr Expr::operator+(const Expr& o) const {
  if (o.nf_ != nf_) throw std::invalid_argument("factor count mismatch in Expr add");
  Expr r = *this;
  r.terms_.insert(r.terms_.end(), o.terms_.begin(), o.terms_.end());
  r.normalize();
  return r;
}

Expr Expr::operator-(const Expr& o) const { return *this + cplx(-1.0) * o; }

Expr Expr::operator*(const Expr& o) const {
  if (o.nf_ != nf_) throw std::invalid_argument("factor count mismatch in Expr mul");
  Expr r(nf_);
  r.terms_.reserve(terms_.size() * o.terms_.size());
  for (const auto& x : terms_)
    for (const auto& y : o.terms_) {
      Term t{x.coeff * y.coeff, x.deg + y.deg, std::vector<Word>(nf_)};
      for (int f = 0; f < nf_; ++f) {
        t.f[f] = x.f[f];
        t.f[f].insert(t.f[f].end(), y.f[f].begin(), y.f[f].end());
      }
      r.terms_.push_back(std::move(t));
    }
  r.normalize();
  return r;
}

Expr operator*(cplx s, const Expr& e) {
  Expr r = e;
  for (auto& t : r.terms_) t.coeff *= s;
  r.normalize();
  return r;
}

Expr kron(const Expr& a, const Expr& b) {
  std::vector<Term> ts;
  for (const auto& x : a.terms())
    for (const auto& y : b.terms()) {
      Term t{x.coeff * y.coeff, x.deg + y.deg, x.f};
      t.f.insert(t.f.end(), y.f.begin(), y.f.end());
      ts.push_back(std::move(t));
    }
  return Expr::from_terms(a.nf() + b.nf(), std::move(ts));
}

Expr adj(const Expr& e) {
  std::vector<Term> ts;
  for (const auto& t : e.terms()) {
    std::vector<Word> f;
    for (const auto& w : t.f) f.push_back(adj(w));
    ts.push_back(Term{std::conj(t.coeff), -t.deg, std::move(f)});
  }
  return Expr::from_terms(e.nf(), std::move(ts));
}

namespace {

Expr sigma_at(const Expr& e, bool last) {
  if (e.nf() == 0) throw std::invalid_argument("symbol map needs at least one Toeplitz factor");
  std::vector<Term> ts;
  for (const auto& t : e.terms()) {
    const Word& w = last ? t.f.back() : t.f.front();
    int s = 1;
    for (const auto& p : w) s *= sigma_prim(p);
    if (s == 0) continue;
    std::vector<Word> f = t.f;
    if (last)
      f.pop_back();
    else
      f.erase(f.begin());
    ts.push_back(Term{t.coeff, t.deg, std::move(f)});
  }
  return Expr::from_terms(e.nf() - 1, std::move(ts));
}

}  // namespace

Expr sigma_last(const Expr& e) { return sigma_at(e, true); }
Expr sigma_first(const Expr& e) { return sigma_at(e, false); }

std::string to_string(const Word& w) {
  if (w.empty()) return "1";
  std::ostringstream os;
  for (std::size_t i = 0; i < w.size(); ++i) {
    const Prim& p = w[i];
    if (i) os << '.';
    switch (p.kind) {
      case Prim::S: os << "S"; break;
      case Prim::Sd: os << "S*"; break;
      case Prim::QN: os << "q^{" << p.c << "N}"; break;
      case Prim::Sqrt: os << "sqrt(1-q^{" << p.c << "(2N+" << p.a << ")})"; break;
      case Prim::Unit: os << "p" << p.a << p.b; break;
    }
  }
  return os.str();
}

std::string to_string(const Expr& e) {
  if (e.is_zero()) return "0";
  std::ostringstream os;
  os.precision(6);
  bool first = true;
  for (const auto& t : e.terms()) {
    if (!first) os << " + ";
    first = false;
    os << "(" << t.coeff.real();
    if (t.coeff.imag() != 0.0) os << (t.coeff.imag() > 0 ? "+" : "") << t.coeff.imag() << "i";
    os << ")";
    if (t.deg) os << " t^" << t.deg;
    for (const auto& w : t.f) os << (t.deg || &w != &t.f.front() ? " (x) " : " ") << to_string(w);
  }
  return os.str();
}

MoveBound move_bound(const Expr& e) {
  MoveBound mb{std::vector<int>(e.nf(), 0), std::vector<int>(e.nf(), 0)};
  for (const auto& t : e.terms())
    for (int f = 0; f < e.nf(); ++f) {
      int up = 0, tot = 0;
      for (const auto& p : t.f[f]) {
        if (p.kind == Prim::Sd) ++up;
        if (p.kind == Prim::S || p.kind == Prim::Sd) ++tot;
      }
      mb.up[f] = std::max(mb.up[f], up);
      mb.total[f] = std::max(mb.total[f], tot);
    }
  return mb;
}

SpMat materialize_word(const Word& w, double q, int d) {
  SpMat m(d, d);
  m.setIdentity();
  for (const Prim& p : w) {
    TruncOp op;
    switch (p.kind) {
      case Prim::S: op = shift_op(d); break;
      case Prim::Sd: op = adj(shift_op(d)); break;
      case Prim::QN: op = qn_op(p.c, q, d); break;
      case Prim::Sqrt: op = sqrt_diag_op(p.c, p.a, q, d); break;
      case Prim::Unit:
        if (p.a >= d || p.b >= d) return SpMat(d, d);
        op = matrix_unit(p.a, p.b, d);
        break;
    }
    m = SpMat(m * op.mat);
  }
  return m;
}

namespace {

struct WordCache {
  double q;
  std::map<std::pair<Word, int>, SpMat> cache;
  const SpMat& get(const Word& w, int d) {
    auto key = std::make_pair(w, d);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    return cache.emplace(key, materialize_word(w, q, d)).first->second;
  }
};

}  // namespace

Block interior_columns(const std::vector<int>& dims, const std::vector<int>& limit) {
  const long D = total_dim(dims);
  const int nf = static_cast<int>(dims.size());
  std::vector<long> keep;
  for (long idx = 0; idx < D; ++idx) {
    long x = idx;
    bool ok = true;
    for (int f = nf - 1; f >= 0; --f) {
      if (x % dims[f] >= limit[f]) {
        ok = false;
        break;
      }
      x /= dims[f];
    }
    if (ok) keep.push_back(idx);
  }
  SpMat m(D, static_cast<long>(keep.size()));
  std::vector<Eigen::Triplet<cplx>> t;
  for (std::size_t j = 0; j < keep.size(); ++j) t.emplace_back(keep[j], static_cast<long>(j), 1.0);
  m.setFromTriplets(t.begin(), t.end());
  return Block{{0, m}};
}

Block vacuum_column(const std::vector<int>& dims) {
  SpMat m(total_dim(dims), 1);
  m.insert(0, 0) = 1.0;
  return Block{{0, m}};
}

Block apply(const Expr& e, double q, const std::vector<int>& dims, const Block& in,
            const std::vector<int>& row_limit) {
  const int nf = static_cast<int>(dims.size());
  if (e.nf() != nf) throw std::invalid_argument("factor count mismatch in apply");
  const long D = total_dim(dims);
  std::vector<long> stride(nf, 1);
  for (int f = nf - 2; f >= 0; --f) stride[f] = stride[f + 1] * dims[f + 1];
  std::vector<int> lim = row_limit.empty() ? dims : row_limit;

  WordCache cache{q, {}};
  std::map<int, std::vector<Eigen::Triplet<cplx>>> acc;
  long cols = -1;
  std::vector<std::pair<long, cplx>> cur, next;
  std::vector<const SpMat*> mats(nf);
  for (const auto& [din, X] : in) {
    if (cols < 0) cols = X.cols();
    for (const auto& t : e.terms()) {
      for (int f = 0; f < nf; ++f) mats[f] = &cache.get(t.f[f], dims[f]);
      auto& trip = acc[din + t.deg];
      for (int j = 0; j < X.outerSize(); ++j)
        for (SpMat::InnerIterator it(X, j); it; ++it) {
          cur.clear();
          cur.emplace_back(0L, it.value() * t.coeff);
          const long r = it.row();
          for (int f = 0; f < nf && !cur.empty(); ++f) {
            const int rf = static_cast<int>((r / stride[f]) % dims[f]);
            next.clear();
            for (SpMat::InnerIterator mf(*mats[f], rf); mf; ++mf) {
              if (mf.row() >= lim[f]) continue;
              for (const auto& [idx, v] : cur) next.emplace_back(idx + mf.row() * stride[f], v * mf.value());
            }
            cur.swap(next);
          }
          for (const auto& [idx, v] : cur)
            if (v != cplx(0)) trip.emplace_back(idx, j, v);
        }
    }
  }
  if (cols < 0) cols = in.empty() ? 0 : in.begin()->second.cols();
  Block out;
  for (auto& [k, trip] : acc) {
    if (trip.empty()) continue;
    SpMat m(D, cols);
    m.setFromTriplets(trip.begin(), trip.end());
    m.prune(cplx(0.0), 0.0);
    if (m.nonZeros()) out.emplace(k, std::move(m));
  }
  return out;
}

Block add(const Block& a, const Block& b, cplx sb) {
  Block r = a;
  for (const auto& [k, m] : b) {
    auto it = r.find(k);
    if (it == r.end())
      r.emplace(k, SpMat(sb * m));
    else
      it->second = SpMat(it->second + sb * m);
  }
  return r;
}

bool block_is_zero(const Block& b) {
  for (const auto& [k, m] : b)
    if (max_abs(m) > 0.0) return false;
  return true;
}

double block_norm_bound(const Block& b) {
  double s = 0.0;
  for (const auto& [k, m] : b) s += norm_bound(m);
  return s;
}

double block_norm(const Block& b, const NormOptions& opt) {
  std::vector<const std::pair<const int, SpMat>*> nz;
  for (const auto& kv : b)
    if (max_abs(kv.second) > 0.0) nz.push_back(&kv);
  if (nz.empty()) return 0.0;
  if (nz.size() == 1) return norm(nz[0]->second);
  return circle_sup(
      [&](double theta) {
        const cplx t = std::polar(1.0, theta);
        SpMat acc(nz[0]->second.rows(), nz[0]->second.cols());
        for (auto* kv : nz) acc += std::pow(t, kv->first) * kv->second;
        return norm(acc);
      },
      opt);
}

LaurentOp materialize(const Expr& e, double q, const std::vector<int>& dims) {
  std::vector<int> full = dims;
  Block id = interior_columns(dims, full);
  Block out = apply(e, q, dims, id);
  LaurentOp r(dims);
  for (auto& [k, m] : out) r.set(k, TruncOp(dims, m));
  return r;
}

LaurentOp materialize(const Expr& e, double q, int d) {
  return materialize(e, q, std::vector<int>(e.nf(), d));
}

}  // namespace soq

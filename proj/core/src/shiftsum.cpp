#include "soq/shiftsum.hpp"

#include <cmath>
#include <stdexcept>

namespace soq {

namespace {

std::vector<long> strides_of(const std::vector<int>& w) {
  std::vector<long> s(w.size(), 1);
  for (int f = static_cast<int>(w.size()) - 2; f >= 0; --f) s[f] = s[f + 1] * w[f + 1];
  return s;
}

// Weight of a word on e_m, walking primitives right to left.
double word_weight(const Word& w, double q, int m) {
  double v = 1.0;
  for (auto it = w.rbegin(); it != w.rend(); ++it) {
    switch (it->kind) {
      case Prim::S:
        if (m == 0) return 0.0;
        --m;
        break;
      case Prim::Sd:
        ++m;
        break;
      case Prim::QN:
        v *= std::pow(q, it->c * m);
        break;
      case Prim::Sqrt:
        v *= std::sqrt(std::max(0.0, 1.0 - std::pow(q, it->c * (2 * m + it->a))));
        break;
      case Prim::Unit:
        if (m != it->b) return 0.0;
        m = it->a;
        break;
    }
  }
  return v;
}

}  // namespace

int word_shift(const Word& w) {
  int s = 0;
  for (const auto& p : w) {
    if (p.kind == Prim::S) --s;
    if (p.kind == Prim::Sd) ++s;
    if (p.kind == Prim::Unit) s += p.a - p.b;
  }
  return s;
}

ShiftSum::ShiftSum(std::vector<int> window) : window_(std::move(window)) {
  points_ = 1;
  for (int w : window_) points_ *= w;
}

std::vector<cplx>& ShiftSum::group(const Key& k) {
  auto it = groups_.find(k);
  if (it == groups_.end()) it = groups_.emplace(k, std::vector<cplx>(points_, cplx(0.0))).first;
  return it->second;
}

void ShiftSum::axpy(const ShiftSum& x, cplx a) {
  if (x.window_ != window_) throw std::invalid_argument("ShiftSum::axpy window mismatch");
  for (const auto& [k, v] : x.groups_) {
    auto& g = group(k);
    for (long i = 0; i < points_; ++i) g[i] += a * v[i];
  }
}

void ShiftSum::drop_zero_groups() {
  for (auto it = groups_.begin(); it != groups_.end();) {
    bool zero = true;
    for (const auto& z : it->second)
      if (z != cplx(0.0)) {
        zero = false;
        break;
      }
    it = zero ? groups_.erase(it) : std::next(it);
  }
}

ShiftSum shift_sum(const Expr& e, double q, const std::vector<int>& window) {
  const int nf = static_cast<int>(window.size());
  if (e.nf() != nf) throw std::invalid_argument("shift_sum factor count mismatch");
  ShiftSum out(window);
  const auto stride = strides_of(window);
  std::map<std::pair<Word, int>, std::vector<double>> cache;
  for (const auto& t : e.terms()) {
    std::vector<int> sigma(nf);
    std::vector<const std::vector<double>*> w(nf);
    for (int f = 0; f < nf; ++f) {
      sigma[f] = word_shift(t.f[f]);
      auto key = std::make_pair(t.f[f], window[f]);
      auto it = cache.find(key);
      if (it == cache.end()) {
        std::vector<double> vals(window[f]);
        for (int m = 0; m < window[f]; ++m) vals[m] = word_weight(t.f[f], q, m);
        it = cache.emplace(std::move(key), std::move(vals)).first;
      }
      w[f] = &it->second;
    }
    auto& g = out.group({t.deg, sigma});
    if (nf == 0) {
      g[0] += t.coeff;
      continue;
    }
    for (long i = 0; i < out.points(); ++i) {
      double v = 1.0;
      for (int f = 0; f < nf && v != 0.0; ++f) v *= (*w[f])[(i / stride[f]) % window[f]];
      if (v != 0.0) g[i] += t.coeff * v;
    }
  }
  out.drop_zero_groups();
  return out;
}

ShiftSum multiply(const ShiftSum& a, const ShiftSum& b, const std::vector<int>& out_window) {
  const int nf = a.nf();
  if (b.nf() != nf || static_cast<int>(out_window.size()) != nf) throw std::invalid_argument("multiply factor count mismatch");
  for (int f = 0; f < nf; ++f)
    if (out_window[f] > b.window()[f]) throw std::invalid_argument("multiply: output box exceeds right operand");
  ShiftSum out(out_window);
  const auto so = strides_of(out_window), sa = strides_of(a.window()), sb = strides_of(b.window());
  const long P = out.points();
  std::vector<long> bidx(P), abase(P);
  std::vector<int> coord(nf);
  for (long i = 0; i < P; ++i) {
    long ib = 0, ia = 0;
    for (int f = 0; f < nf; ++f) {
      coord[f] = static_cast<int>((i / so[f]) % out_window[f]);
      ib += coord[f] * sb[f];
      ia += coord[f] * sa[f];
    }
    bidx[i] = ib;
    abase[i] = ia;
  }
  std::map<std::vector<int>, std::vector<long>> aidx;  // per right shift: index into A or -1
  for (const auto& [kb, vb] : b.groups()) {
    const auto& beta = kb.second;
    auto it = aidx.find(beta);
    if (it == aidx.end()) {
      std::vector<long> idx(P);
      long off = 0;
      for (int f = 0; f < nf; ++f) off += beta[f] * sa[f];
      for (long i = 0; i < P; ++i) {
        bool ok = true;
        for (int f = 0; f < nf && ok; ++f) {
          int c = static_cast<int>((i / so[f]) % out_window[f]) + beta[f];
          ok = c >= 0 && c < a.window()[f];
        }
        idx[i] = ok ? abase[i] + off : -1;
      }
      it = aidx.emplace(beta, std::move(idx)).first;
    }
    const auto& idx = it->second;
    for (const auto& [ka, va] : a.groups()) {
      std::vector<int> sig(nf);
      for (int f = 0; f < nf; ++f) sig[f] = ka.second[f] + beta[f];
      auto& g = out.group({ka.first + kb.first, sig});
      for (long i = 0; i < P; ++i) {
        const cplx& x = vb[bidx[i]];
        if (x == cplx(0.0) || idx[i] < 0) continue;
        g[i] += va[idx[i]] * x;
      }
    }
  }
  out.drop_zero_groups();
  return out;
}

namespace {

template <class F>
void for_interior(const ShiftSum& x, const std::vector<int>& interior, const std::vector<int>& sigma, F&& fn) {
  const int nf = x.nf();
  const auto sx = strides_of(x.window());
  std::vector<int> lo(nf), hi(nf);
  for (int f = 0; f < nf; ++f) {
    lo[f] = std::max(0, -sigma[f]);
    hi[f] = std::min({interior[f], interior[f] - sigma[f], x.window()[f]});
    if (lo[f] >= hi[f]) return;
  }
  std::vector<int> n = lo;
  while (true) {
    long idx = 0;
    for (int f = 0; f < nf; ++f) idx += n[f] * sx[f];
    fn(n, idx);
    int f = nf - 1;
    while (f >= 0 && ++n[f] == hi[f]) {
      n[f] = lo[f];
      --f;
    }
    if (f < 0) break;
  }
}

}  // namespace

double compressed_bound(const ShiftSum& x, const std::vector<int>& interior) {
  double total = 0.0;
  for (const auto& [k, v] : x.groups()) {
    double mx = 0.0;
    for_interior(x, interior, k.second, [&](const std::vector<int>&, long idx) { mx = std::max(mx, std::abs(v[idx])); });
    total += mx;
  }
  return total;
}

Block compressed_block(const ShiftSum& x, const std::vector<int>& interior) {
  const int nf = x.nf();
  const auto sd = strides_of(interior);
  const long D = total_dim(interior);
  std::map<int, std::vector<Eigen::Triplet<cplx>>> trips;
  for (const auto& [k, v] : x.groups()) {
    auto& tr = trips[k.first];
    for_interior(x, interior, k.second, [&](const std::vector<int>& n, long idx) {
      if (v[idx] == cplx(0.0)) return;
      long col = 0, row = 0;
      for (int f = 0; f < nf; ++f) {
        col += n[f] * sd[f];
        row += (n[f] + k.second[f]) * sd[f];
      }
      tr.emplace_back(row, col, v[idx]);
    });
  }
  Block out;
  for (auto& [deg, tr] : trips) {
    if (tr.empty()) continue;
    SpMat m(D, D);
    m.setFromTriplets(tr.begin(), tr.end());
    out.emplace(deg, std::move(m));
  }
  return out;
}

}  // namespace soq

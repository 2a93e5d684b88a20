#include "soq/quea.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <sstream>
#include <stdexcept>

namespace soq {

FreePoly FreePoly::unit() { return word({}); }
FreePoly FreePoly::letter(Letter l) { return word({l}); }
FreePoly FreePoly::word(const Monomial& w, cplx c) {
  FreePoly p;
  p.add(w, c);
  return p;
}

void FreePoly::add(const Monomial& w, cplx c) {
  if (c == cplx(0.0)) return;
  auto it = terms_.find(w);
  if (it == terms_.end()) {
    terms_.emplace(w, c);
    return;
  }
  it->second += c;
  if (it->second == cplx(0.0)) terms_.erase(it);
}

FreePoly FreePoly::operator+(const FreePoly& o) const {
  FreePoly r = *this;
  for (const auto& [w, c] : o.terms_) r.add(w, c);
  return r;
}

FreePoly FreePoly::operator-(const FreePoly& o) const {
  FreePoly r = *this;
  for (const auto& [w, c] : o.terms_) r.add(w, -c);
  return r;
}

FreePoly FreePoly::operator*(const FreePoly& o) const {
  FreePoly r;
  for (const auto& [w1, c1] : terms_)
    for (const auto& [w2, c2] : o.terms_) {
      Monomial w = w1;
      w.insert(w.end(), w2.begin(), w2.end());
      r.add(w, c1 * c2);
    }
  return r;
}

FreePoly operator*(cplx s, const FreePoly& p) {
  FreePoly r;
  for (const auto& [w, c] : p.terms_) r.add(w, s * c);
  return r;
}

void FreePoly::prune(double eps) {
  for (auto it = terms_.begin(); it != terms_.end();) it = std::abs(it->second) <= eps ? terms_.erase(it) : std::next(it);
}

double FreePoly::max_coeff_diff(const FreePoly& o) const {
  double m = 0.0;
  for (const auto& [w, c] : (*this - o).terms_) m = std::max(m, std::abs(c));
  return m;
}

std::string to_string(const FreePoly& p, int N) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [w, c] : p.terms()) {
    if (!first) os << " + ";
    first = false;
    os << "(" << c.real();
    if (c.imag() != 0.0) os << (c.imag() > 0 ? "+" : "") << c.imag() << "i";
    os << ")";
    for (const auto& l : w) os << " v" << (l.row == N ? "N" : "1") << "_" << l.col;
  }
  return os.str();
}

Eigen::MatrixXd t1_matrix(LieType t, int n, QGen g, double q) {
  if (g.i < 1 || g.i > n) throw std::invalid_argument("QUEA generator index out of range");
  const int N = N_from(t, n);
  const int i = g.i;
  Eigen::MatrixXd K = Eigen::MatrixXd::Identity(N, N), E = Eigen::MatrixXd::Zero(N, N);
  auto D = [&](int j, int power) { K(j - 1, j - 1) *= std::pow(q, power); };
  auto I = [&](int r, int c, double v) { E(r - 1, c - 1) += v; };
  if (t == LieType::B) {
    if (i < n) {
      D(i, -1), D(i + 1, 1), D(2 * n - i + 1, -1), D(2 * n - i + 2, 1);
      I(i + 1, i, 1.0), I(2 * n - i + 2, 2 * n - i + 1, -1.0);
    } else {
      const double c = std::sqrt(std::sqrt(q) + 1.0 / std::sqrt(q));
      D(n, -1), D(n + 2, 1);
      I(n + 1, n, c), I(n + 2, n + 1, -c * std::sqrt(q));
    }
  } else {
    if (i < n) {
      D(i, -1), D(i + 1, 1), D(2 * n - i, -1), D(2 * n - i + 1, 1);
      I(i + 1, i, 1.0), I(2 * n - i + 1, 2 * n - i, -1.0);
    } else {
      D(n - 1, -1), D(n, -1), D(n + 1, 1), D(n + 2, 1);
      I(n + 2, n, -1.0), I(n + 1, n - 1, 1.0);
    }
  }
  switch (g.kind) {
    case QGen::E:
      return E;
    case QGen::K:
      return K;
    case QGen::Kinv:
      return K.inverse();
    case QGen::F: {
      if (t == LieType::B && i == n) {
        // c (I_{n,n+1} - q^{-1/2} I_{n+1,n+2})
        Eigen::MatrixXd F = Eigen::MatrixXd::Zero(N, N);
        const double c = std::sqrt(std::sqrt(q) + 1.0 / std::sqrt(q));
        F(n - 1, n) = c;
        F(n, n + 1) = -c / std::sqrt(q);
        return F;
      }
      return E.transpose();
    }
  }
  return E;
}

namespace {

FreePoly letter_image(const Eigen::MatrixXd& M, Letter l) {
  FreePoly r;
  for (int k = 1; k <= M.rows(); ++k) {
    double v = M(k - 1, l.col - 1);
    if (v != 0.0) r.add({Letter{l.row, k}}, v);
  }
  return r;
}

FreePoly word_poly(const Monomial& w, std::size_t from, std::size_t to) {
  return FreePoly::word(Monomial(w.begin() + from, w.begin() + to));
}

}  // namespace

FreePoly act(QGen g, const FreePoly& p, LieType t, int n, double q) {
  const Eigen::MatrixXd M = t1_matrix(t, n, g, q);
  FreePoly out;
  if (g.kind == QGen::K || g.kind == QGen::Kinv) {
    for (const auto& [w, c] : p.terms()) {
      FreePoly r = FreePoly::unit();
      for (const auto& l : w) r = r * letter_image(M, l);
      out = out + c * r;
    }
    return out;
  }
  const bool is_e = g.kind == QGen::E;
  const Eigen::MatrixXd Kside = t1_matrix(t, n, {is_e ? QGen::K : QGen::Kinv, g.i}, q);
  for (const auto& [w, c] : p.terms()) {
    for (std::size_t j = 0; j < w.size(); ++j) {
      FreePoly mid = letter_image(M, w[j]);
      if (mid.is_zero()) continue;
      FreePoly r;
      if (is_e) {
        // prefix untouched, K on the suffix
        r = word_poly(w, 0, j) * mid;
        for (std::size_t k = j + 1; k < w.size(); ++k) r = r * letter_image(Kside, w[k]);
      } else {
        r = FreePoly::unit();
        for (std::size_t k = 0; k < j; ++k) r = r * letter_image(Kside, w[k]);
        r = r * mid * word_poly(w, j + 1, w.size());
      }
      out = out + c * r;
    }
  }
  return out;
}

HwLetters default_letters(int N) { return {{1, N - 1}, {N, N - 1}, {1, N}, {N, N}, 1}; }
HwLetters negative_letters_n4() { return {{1, 2}, {4, 2}, {1, 4}, {4, 4}, 2}; }

std::vector<double> u_lambda_coefficients(int lambda, double q) {
  if (lambda < 0) throw std::invalid_argument("u_lambda needs lambda >= 0");
  std::vector<double> A{1.0};
  if (lambda == 0) return A;
  HwCoefficients h = hw_coefficients(lambda, q);
  h.a2[0] = h.a1[0];
  for (int k = 0; k < lambda; ++k) A.push_back(-A[k] * h.a2[k] / h.a1[k + 1]);
  return A;
}

FreePoly build_u_lambda(int lambda, const HwLetters& L, double q) {
  const auto A = u_lambda_coefficients(lambda, q);
  FreePoly u;
  for (int k = 0; k <= lambda; ++k) {
    Monomial w;
    w.insert(w.end(), k, L.a);
    w.insert(w.end(), lambda - k, L.b);
    w.insert(w.end(), lambda - k, L.c);
    w.insert(w.end(), k, L.d);
    u.add(w, A[k]);
  }
  return u;
}

void validate(const HighestWeight& hw) {
  if (hw.N < 4) throw std::invalid_argument("highest weight families need N >= 4");
  if (hw.N == 4) {
    if (hw.l1 < std::abs(hw.l2)) throw std::invalid_argument("N = 4 needs lambda_1 >= |lambda_2|");
  } else if (hw.l1 < hw.l2 || hw.l2 < 0) {
    throw std::invalid_argument("need lambda_1 >= lambda_2 >= 0");
  }
}

std::vector<int> hw_exponents(const HighestWeight& hw) {
  validate(hw);
  const int n = rank_from_N(hw.N);
  std::vector<int> r(n, 0);
  r[0] = hw.l1 - hw.l2;
  if (hw.N == 4) {
    r[1] = hw.l1 + hw.l2;
  } else if (hw.N == 5) {
    r[1] = 2 * hw.l2;
  } else {
    r[1] = hw.l2;
    if (hw.N == 6) r[2] = hw.l2;
  }
  return r;
}

int expected_hw_count(const HighestWeight& hw) {
  validate(hw);
  return hw.N == 4 ? hw.l1 - std::abs(hw.l2) + 1 : hw.l1 - hw.l2 + 1;
}

std::vector<FreePoly> build_hw_vectors(const HighestWeight& hw, double q) {
  validate(hw);
  HwLetters L = default_letters(hw.N);
  int r = hw.l1 - hw.l2;
  int ladder = hw.l2;
  if (hw.N == 4 && hw.l2 < 0) {
    L = negative_letters_n4();
    r = hw.l1 + hw.l2;
    ladder = -hw.l2;
  } else if (hw.N == 5) {
    ladder = 2 * hw.l2;
  }
  const FreePoly u = build_u_lambda(ladder, L, q);
  std::vector<FreePoly> xs;
  for (int i = 0; i <= r; ++i) {
    Monomial w;
    w.insert(w.end(), i, L.c);
    w.insert(w.end(), r - i, L.d);
    xs.push_back(FreePoly::word(w) * u);
  }
  return xs;
}

PolyEvaluator::PolyEvaluator(QuotientGens gens, const QParams& p) : gens_(std::move(gens)), params_(p) {
  N_ = N_from(gens_.type, gens_.n);
  interior_.assign(gens_.nf, p.d - p.m);
  for (int row : {1, N_})
    for (int col = 1; col <= N_; ++col) {
      Letter l{row, col};
      std::vector<int> up(gens_.nf, 0), down(gens_.nf, 0);
      for (const auto& t : letter_expr(l).terms())
        for (int f = 0; f < gens_.nf; ++f) {
          int s = word_shift(t.f[f]);
          up[f] = std::max(up[f], s);
          down[f] = std::max(down[f], -s);
        }
      moves_[l] = {up, down};
    }
}

const Expr& PolyEvaluator::letter_expr(Letter l) const {
  if (l.col < 1 || l.col > N_ || (l.row != 1 && l.row != N_)) throw std::invalid_argument("letter outside the two rows");
  return l.row == N_ ? gens_.x[N_ - l.col] : gens_.row1[l.col - 1];
}

const ShiftSum& PolyEvaluator::letter_table(Letter l, const std::vector<int>& window) {
  auto key = std::make_pair(l, window);
  auto it = tables_.find(key);
  if (it == tables_.end()) it = tables_.emplace(key, shift_sum(letter_expr(l), params_.q, window)).first;
  return it->second;
}

std::vector<int> PolyEvaluator::required_margin(const FreePoly& p) {
  std::vector<int> m(gens_.nf, params_.m);
  for (const auto& [w, c] : p.terms()) {
    std::vector<int> up(gens_.nf, 0), down(gens_.nf, 0);
    for (const auto& l : w) {
      const auto& mv = moves_.at(l);
      for (int f = 0; f < gens_.nf; ++f) {
        up[f] += mv.first[f];
        down[f] += mv.second[f];
      }
    }
    for (int f = 0; f < gens_.nf; ++f) m[f] = std::max(m[f], std::min(up[f], down[f]));
  }
  return m;
}

namespace {

struct Trie {
  cplx coeff{0.0};
  std::map<Letter, std::unique_ptr<Trie>> next;
};

}  // namespace

ShiftSum PolyEvaluator::eval(const FreePoly& p) {
  const auto margin = required_margin(p);
  std::vector<int> window(gens_.nf);
  for (int f = 0; f < gens_.nf; ++f) window[f] = interior_[f] + margin[f];
  // Words share right factors, so they are walked right to left through a trie.
  Trie root;
  for (const auto& [w, c] : p.terms()) {
    Trie* node = &root;
    for (auto it = w.rbegin(); it != w.rend(); ++it) {
      auto& child = node->next[*it];
      if (!child) child = std::make_unique<Trie>();
      node = child.get();
    }
    node->coeff += c;
  }
  ShiftSum out(interior_);
  auto walk = [&](auto&& self, const Trie& node, const ShiftSum& cur) -> void {
    if (node.coeff != cplx(0.0)) out.axpy(cur, node.coeff);
    for (const auto& [l, child] : node.next) self(self, *child, multiply(letter_table(l, window), cur, interior_));
  };
  walk(walk, root, shift_sum(Expr::identity(gens_.nf), params_.q, interior_));
  out.drop_zero_groups();
  return out;
}

double PolyEvaluator::norm(const FreePoly& p) {
  if (p.is_zero()) return 0.0;
  ShiftSum s = eval(p);
  double bound = compressed_bound(s, interior_);
  if (bound <= params_.tol) return bound;
  return block_norm(compressed_block(s, interior_));
}

std::map<ShiftSum::Key, cplx> PolyEvaluator::vacuum_image(const FreePoly& p) {
  std::map<ShiftSum::Key, cplx> img;
  ShiftSum s = eval(p);
  for (const auto& [k, v] : s.groups()) {
    bool inside = true;
    for (int f = 0; f < gens_.nf; ++f) inside = inside && k.second[f] >= 0 && k.second[f] < interior_[f];
    if (inside && v[0] != cplx(0.0)) img[k] += v[0];
  }
  return img;
}

PolyEvaluator make_faithful_evaluator(int N, const QParams& p) {
  const LieType t = type_from_N(N);
  const int n = rank_from_N(N);
  return PolyEvaluator(quotient_generators(t, n, omega_k_max(t, n), p.q), p);
}

HwReport verify_hw(const FreePoly& x, const HighestWeight& hw, PolyEvaluator& ev) {
  const auto r = hw_exponents(hw);
  const LieType t = type_from_N(hw.N);
  const int n = rank_from_N(hw.N);
  const double q = ev.params().q;
  HwReport rep;
  const auto margin = ev.required_margin(x);
  rep.margin = *std::max_element(margin.begin(), margin.end());
  for (int i = 1; i <= n; ++i) {
    FreePoly e = act({QGen::E, i}, x, t, n, q);
    double re = ev.norm(e);
    if (re >= rep.e_residual) {
      rep.e_residual = re;
      rep.worst_e = i;
    }
    FreePoly k = act({QGen::K, i}, x, t, n, q) - cplx(std::pow(q, r[i - 1])) * x;
    double rk = ev.norm(k);
    if (rk >= rep.k_residual) {
      rep.k_residual = rk;
      rep.worst_k = i;
    }
  }
  ShiftSum s = ev.eval(x);
  for (const auto& [key, v] : s.groups())
    for (const auto& z : v) rep.norm = std::max(rep.norm, std::abs(z));
  return rep;
}

RankReport linear_independence(const std::vector<FreePoly>& xs, PolyEvaluator& ev) {
  RankReport rr;
  rr.count = static_cast<int>(xs.size());
  if (xs.empty()) return rr;
  std::vector<std::map<ShiftSum::Key, cplx>> imgs;
  std::map<ShiftSum::Key, int> rows;
  for (const auto& x : xs) {
    imgs.push_back(ev.vacuum_image(x));
    for (const auto& [k, v] : imgs.back()) rows.emplace(k, 0);
  }
  int r = 0;
  for (auto& [k, idx] : rows) idx = r++;
  Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(std::max(r, 1), rr.count);
  for (int j = 0; j < rr.count; ++j)
    for (const auto& [k, v] : imgs[j]) M(rows[k], j) = v;
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(M);
  const auto& sv = svd.singularValues();
  for (Eigen::Index i = 0; i < sv.size(); ++i) rr.singular_values.push_back(sv(i));
  const double smax = sv.size() ? sv(0) : 0.0;
  for (double s : rr.singular_values)
    if (s > kRoundingFloor * smax && s > 0.0) ++rr.rank;
  return rr;
}

double e1_ladder_residual(int n, PolyEvaluator& ev, double q) {
  const int N = ev.N();
  const LieType t = type_from_N(N);
  const HwLetters L = default_letters(N);
  const HwCoefficients h = hw_coefficients(n, q);
  auto mono = [&](int ea, int eb, int ec, int ed) {
    Monomial w;
    w.insert(w.end(), ea, L.a);
    w.insert(w.end(), eb, L.b);
    w.insert(w.end(), ec, L.c);
    w.insert(w.end(), ed, L.d);
    return w;
  };
  double worst = 0.0;
  for (int i = 0; i <= n; ++i) {
    FreePoly lhs = act({QGen::E, L.ladder_node}, FreePoly::word(mono(i, n - i, n - i, i)), t, rank_from_N(N), q);
    FreePoly rhs;
    if (i == 0) {
      rhs.add(mono(0, n - 1, n, 1), h.a1[0]);
    } else {
      rhs.add(mono(i - 1, n - i, n - i + 1, i), h.a1[i]);
      if (i < n) rhs.add(mono(i, n - i - 1, n - i, i + 1), h.a2[i]);
    }
    worst = std::max(worst, ev.norm(lhs - rhs));
  }
  return worst;
}

}  // namespace soq

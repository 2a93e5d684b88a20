#include "soq/weyl.hpp"

#include <cctype>
#include <cstdlib>
#include <sstream>
#include <stdexcept>

namespace soq {

char type_char(LieType t) { return t == LieType::B ? 'B' : 'D'; }

LieType type_from_N(int N) {
  if (N < 3) throw std::invalid_argument("N must be >= 3");
  return N % 2 ? LieType::B : LieType::D;
}

int rank_from_N(int N) { return N / 2; }

int N_from(LieType t, int n) { return t == LieType::B ? 2 * n + 1 : 2 * n; }

std::string WeylWord::str() const {
  if (letters.empty()) return "I";
  std::string s;
  for (int l : letters) s += "s" + std::to_string(l);
  return s;
}

WeylWord parse_word(LieType t, int n, const std::string& text) {
  WeylWord w{t, n, {}};
  std::size_t i = 0;
  while (i < text.size()) {
    char ch = text[i];
    if (ch == ',' || ch == ' ' || ch == 's' || ch == 'S') {
      ++i;
      continue;
    }
    if (!std::isdigit(static_cast<unsigned char>(ch)))
      throw std::invalid_argument("bad character in word: " + text);
    std::size_t j = i;
    while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
    w.letters.push_back(std::stoi(text.substr(i, j - i)));
    i = j;
  }
  validate(w);
  return w;
}

void validate(const WeylWord& w) {
  if (w.n < 1) throw std::invalid_argument("rank must be positive");
  if (w.type == LieType::D && w.n < 2) throw std::invalid_argument("type D needs rank >= 2");
  for (int l : w.letters)
    if (l < 1 || l > w.n)
      throw std::invalid_argument("letter s" + std::to_string(l) + " out of range for rank " +
                                  std::to_string(w.n));
}

SignedPerm identity_perm(int n) {
  SignedPerm p(n);
  for (int j = 0; j < n; ++j) p[j] = j + 1;
  return p;
}

SignedPerm reflection(LieType t, int n, int i) {
  SignedPerm p = identity_perm(n);
  if (i < n) {
    std::swap(p[i - 1], p[i]);
  } else if (t == LieType::B) {
    p[n - 1] = -n;
  } else {
    p[n - 2] = -n;
    p[n - 1] = -(n - 1);
  }
  return p;
}

SignedPerm compose(const SignedPerm& a, const SignedPerm& b) {
  SignedPerm c(b.size());
  for (std::size_t j = 0; j < b.size(); ++j) {
    int v = b[j];
    int img = a[std::abs(v) - 1];
    c[j] = v > 0 ? img : -img;
  }
  return c;
}

SignedPerm signed_perm(const WeylWord& w) {
  validate(w);
  SignedPerm p = identity_perm(w.n);
  for (int l : w.letters) p = compose(p, reflection(w.type, w.n, l));
  return p;
}

int coxeter_length(LieType t, const SignedPerm& w) {
  // Reverse coordinates so the sign-changing generator acts on the first coordinate,
  // then use inv + nsp (+ neg for type B).
  const int n = static_cast<int>(w.size());
  std::vector<int> v(n);
  for (int j = 0; j < n; ++j) {
    int x = w[n - 1 - j];
    int r = n + 1 - std::abs(x);
    v[j] = x > 0 ? r : -r;
  }
  int inv = 0, nsp = 0, neg = 0;
  for (int i = 0; i < n; ++i) {
    if (v[i] < 0) ++neg;
    for (int j = i + 1; j < n; ++j) {
      if (v[i] > v[j]) ++inv;
      if (v[i] + v[j] < 0) ++nsp;
    }
  }
  return t == LieType::B ? inv + nsp + neg : inv + nsp;
}

bool is_reduced(const WeylWord& w) {
  return coxeter_length(w.type, signed_perm(w)) == static_cast<int>(w.letters.size());
}

WeylWord longest_element(LieType t, int n) {
  WeylWord w{t, n, {}};
  validate(w);
  SignedPerm p = identity_perm(n);
  int len = 0;
  for (bool grew = true; grew;) {
    grew = false;
    for (int i = 1; i <= n; ++i) {
      SignedPerm next = compose(p, reflection(t, n, i));
      int l = coxeter_length(t, next);
      if (l > len) {
        p = next;
        len = l;
        w.letters.push_back(i);
        grew = true;
        break;
      }
    }
  }
  return w;
}

int omega_k_max(LieType t, int n) { return t == LieType::B ? 2 * n : 2 * n - 1; }

WeylWord omega_k(LieType t, int n, int k) {
  WeylWord w{t, n, {}};
  validate(w);
  if (k < 1 || k > omega_k_max(t, n))
    throw std::invalid_argument("k=" + std::to_string(k) + " out of range for omega_k");
  if (k == 1) return w;
  if (k <= n + 1) {
    for (int i = 1; i <= k - 1; ++i) w.letters.push_back(i);
    return w;
  }
  for (int i = 1; i <= n; ++i) w.letters.push_back(i);
  if (t == LieType::B) {
    for (int i = n - 1; i >= 2 * n - k + 1; --i) w.letters.push_back(i);
  } else {
    for (int i = n - 2; i >= 2 * n - k; --i) w.letters.push_back(i);
  }
  return w;
}

OmegaPair omega_N_words(int N) {
  if (N < 4) throw std::invalid_argument("omega_N_words needs N >= 4");
  LieType t = type_from_N(N);
  int n = rank_from_N(N);
  WeylWord w{t, n, {}};
  for (int i = 1; i <= n; ++i) w.letters.push_back(i);
  int top = t == LieType::B ? n - 1 : n - 2;
  for (int i = top; i >= 1; --i) w.letters.push_back(i);
  WeylWord wp = w;
  // The primed word stops at s_2; for N = 4 there is nothing after s_n to drop.
  if (top >= 1) wp.letters.pop_back();
  return {w, wp};
}

bool is_subword(const WeylWord& sub, const WeylWord& w) {
  std::size_t j = 0;
  for (int l : w.letters)
    if (j < sub.letters.size() && sub.letters[j] == l) ++j;
  return j == sub.letters.size();
}

int printed_type_D_exponent(int n) { return n * n - n - 1; }

}  // namespace soq

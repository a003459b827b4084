#include "kpol/upoly.hpp"

#include <algorithm>

#include "kpol/errors.hpp"

namespace kpol::up {

void normalize(QPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

int degree(const QPoly& p) { return static_cast<int>(p.size()) - 1; }

bool is_zero(const QPoly& p) { return p.empty(); }

const Rat& lead(const QPoly& p) { return p.back(); }

QPoly constant(const Rat& c) {
  if (c == 0) return {};
  return {c};
}

QPoly from_coeffs(std::vector<Rat> coeffs) {
  normalize(coeffs);
  return coeffs;
}

QPoly add(const QPoly& a, const QPoly& b) {
  QPoly r(std::max(a.size(), b.size()), Rat(0));
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  normalize(r);
  return r;
}

QPoly sub(const QPoly& a, const QPoly& b) {
  QPoly r(std::max(a.size(), b.size()), Rat(0));
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  normalize(r);
  return r;
}

QPoly mul(const QPoly& a, const QPoly& b) {
  if (a.empty() || b.empty()) return {};
  QPoly r(a.size() + b.size() - 1, Rat(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (b[j] == 0) continue;
      r[i + j] += a[i] * b[j];
    }
  }
  normalize(r);
  return r;
}

QPoly neg(QPoly a) {
  for (auto& c : a) c = -c;
  return a;
}

QPoly scale(QPoly a, const Rat& c) {
  if (c == 0) return {};
  for (auto& x : a) x *= c;
  return a;
}

QPoly derivative(const QPoly& p) {
  if (p.size() <= 1) return {};
  QPoly r(p.size() - 1);
  for (std::size_t i = 1; i < p.size(); ++i) r[i - 1] = p[i] * static_cast<long>(i);
  normalize(r);
  return r;
}

Rat eval(const QPoly& p, const Rat& x) {
  Rat acc(0);
  for (std::size_t i = p.size(); i-- > 0;) {
    acc *= x;
    acc += p[i];
  }
  return acc;
}

int sign_at(const QPoly& p, const Rat& x) { return sign_of(eval(p, x)); }

std::pair<QPoly, QPoly> divrem(const QPoly& a, const QPoly& b) {
  if (b.empty()) throw ZeroPolynomial("division by the zero polynomial");
  QPoly r = a, q;
  int db = degree(b);
  if (degree(a) >= db) q.assign(a.size() - b.size() + 1, Rat(0));
  while (degree(r) >= db) {
    Rat c = lead(r) / lead(b);
    int shift = degree(r) - db;
    q[shift] = c;
    for (int i = 0; i <= db; ++i) r[i + shift] -= c * b[i];
    normalize(r);
  }
  return {q, r};
}

QPoly gcd(const QPoly& a, const QPoly& b) {
  QPoly x = a, y = b;
  while (!y.empty()) {
    QPoly r = divrem(x, y).second;
    x = std::move(y);
    y = std::move(r);
  }
  if (x.empty()) return x;
  Rat inv = 1 / lead(x);
  for (auto& c : x) c *= inv;
  return x;
}

QPoly squarefree_part(const QPoly& p) {
  if (p.empty()) return p;
  QPoly g = gcd(p, derivative(p));
  if (degree(g) == 0) {
    QPoly r = p;
    Rat inv = 1 / lead(r);
    for (auto& c : r) c *= inv;
    return r;
  }
  QPoly r = divrem(p, g).first;
  Rat inv = 1 / lead(r);
  for (auto& c : r) c *= inv;
  return r;
}

QPoly primitive_part(const QPoly& p) {
  if (p.empty()) return p;
  mpz_class den_lcm(1);
  for (const auto& c : p)
    mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den().get_mpz_t());
  mpz_class content(0);
  std::vector<mpz_class> ints(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    ints[i] = p[i].get_num() * (den_lcm / p[i].get_den());
    mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), ints[i].get_mpz_t());
  }
  if (content == 0) content = 1;
  QPoly r(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) r[i] = Rat(ints[i] / content);
  return r;
}

std::vector<QPoly> sturm_chain(const QPoly& p) {
  std::vector<QPoly> chain;
  QPoly p0 = primitive_part(squarefree_part(p));
  if (p0.empty()) return chain;
  chain.push_back(p0);
  QPoly p1 = primitive_part(derivative(p0));
  while (!p1.empty()) {
    chain.push_back(p1);
    QPoly r = divrem(chain[chain.size() - 2], chain.back()).second;
    p1 = primitive_part(neg(std::move(r)));
  }
  return chain;
}

namespace {
int count_variations(const std::vector<int>& signs) {
  int var = 0, prev = 0;
  for (int s : signs) {
    if (s == 0) continue;
    if (prev != 0 && s != prev) ++var;
    prev = s;
  }
  return var;
}
}  // namespace

int sign_variations_at(const std::vector<QPoly>& chain, const Rat& x) {
  std::vector<int> signs;
  signs.reserve(chain.size());
  for (const auto& q : chain) signs.push_back(sign_at(q, x));
  return count_variations(signs);
}

int sign_variations_at_neg_inf(const std::vector<QPoly>& chain) {
  std::vector<int> signs;
  signs.reserve(chain.size());
  for (const auto& q : chain) {
    int s = sign_of(lead(q));
    if (degree(q) % 2 != 0) s = -s;
    signs.push_back(s);
  }
  return count_variations(signs);
}

int sign_variations_at_pos_inf(const std::vector<QPoly>& chain) {
  std::vector<int> signs;
  signs.reserve(chain.size());
  for (const auto& q : chain) signs.push_back(sign_of(lead(q)));
  return count_variations(signs);
}

int count_roots_halfopen(const std::vector<QPoly>& chain, const Rat& lo, const Rat& hi) {
  if (chain.empty()) throw ZeroPolynomial("Sturm chain of the zero polynomial");
  if (lo >= hi) return 0;
  return sign_variations_at(chain, lo) - sign_variations_at(chain, hi);
}

int count_real_roots(const std::vector<QPoly>& chain) {
  if (chain.empty()) throw ZeroPolynomial("Sturm chain of the zero polynomial");
  return sign_variations_at_neg_inf(chain) - sign_variations_at_pos_inf(chain);
}

Rat cauchy_bound(const QPoly& p) {
  if (p.empty()) throw ZeroPolynomial("root bound of the zero polynomial");
  Rat m(0);
  for (std::size_t i = 0; i + 1 < p.size(); ++i) m = std::max(m, rat_abs(p[i]));
  return 1 + m / rat_abs(lead(p));
}

std::string to_string(const QPoly& p) {
  if (p.empty()) return "0";
  std::string out;
  for (std::size_t i = p.size(); i-- > 0;) {
    if (p[i] == 0) continue;
    if (!out.empty()) out += " + ";
    out += rat_to_string(p[i]) + "*x^" + std::to_string(i);
  }
  return out;
}

}  // namespace kpol::up

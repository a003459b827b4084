#include "kpol/multipoly.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>

#include "kpol/errors.hpp"
#include "kpol/laplace.hpp"

namespace kpol {

namespace {

unsigned exp_sum(const MultiPoly::Exponents& e) {
  return std::accumulate(e.begin(), e.end(), 0u);
}

Rat pow_rat(const Rat& base, unsigned e) {
  Rat acc(1), b = base;
  while (e) {
    if (e & 1u) acc *= b;
    b *= b;
    e >>= 1u;
  }
  return acc;
}

}  // namespace

MultiPoly::MultiPoly(int arity) : arity_(arity) {}

MultiPoly MultiPoly::zero(int arity) { return MultiPoly(arity); }

MultiPoly MultiPoly::constant(int arity, const Rat& c) {
  MultiPoly p(arity);
  if (c != 0) p.terms_.emplace(Exponents(arity, 0), c);
  return p;
}

MultiPoly MultiPoly::variable(int arity, int var) {
  MultiPoly p(arity);
  Exponents e(arity, 0);
  e.at(var) = 1;
  p.terms_.emplace(std::move(e), Rat(1));
  return p;
}

int MultiPoly::total_degree() const {
  int d = -1;
  for (const auto& [e, c] : terms_) d = std::max(d, static_cast<int>(exp_sum(e)));
  return d;
}

int MultiPoly::degree_in(int var) const {
  int d = is_zero() ? -1 : 0;
  for (const auto& [e, c] : terms_) d = std::max(d, static_cast<int>(e[var]));
  return d;
}

bool MultiPoly::is_constant() const { return total_degree() <= 0; }

Rat MultiPoly::constant_value() const {
  if (terms_.empty()) return Rat(0);
  return terms_.begin()->second;
}

void MultiPoly::add_term(const Exponents& exps, const Rat& coeff) {
  if (static_cast<int>(exps.size()) != arity_)
    throw ArityMismatch("term exponent vector length != arity");
  if (coeff == 0) return;
  auto [it, inserted] = terms_.emplace(exps, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second == 0) terms_.erase(it);
  }
}

MultiPoly MultiPoly::operator-() const {
  MultiPoly r(arity_);
  for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
  return r;
}

MultiPoly MultiPoly::operator+(const MultiPoly& rhs) const {
  if (arity_ != rhs.arity_) throw ArityMismatch("adding polynomials of different arity");
  MultiPoly r = *this;
  for (const auto& [e, c] : rhs.terms_) r.add_term(e, c);
  return r;
}

MultiPoly MultiPoly::operator-(const MultiPoly& rhs) const {
  if (arity_ != rhs.arity_) throw ArityMismatch("subtracting polynomials of different arity");
  MultiPoly r = *this;
  for (const auto& [e, c] : rhs.terms_) r.add_term(e, -c);
  return r;
}

MultiPoly MultiPoly::operator*(const MultiPoly& rhs) const {
  if (arity_ != rhs.arity_) throw ArityMismatch("multiplying polynomials of different arity");
  MultiPoly r(arity_);
  Exponents e(arity_);
  for (const auto& [ea, ca] : terms_) {
    for (const auto& [eb, cb] : rhs.terms_) {
      for (int i = 0; i < arity_; ++i) e[i] = ea[i] + eb[i];
      r.add_term(e, ca * cb);
    }
  }
  return r;
}

MultiPoly MultiPoly::scaled(const Rat& c) const {
  MultiPoly r(arity_);
  if (c == 0) return r;
  for (const auto& [e, co] : terms_) r.terms_.emplace(e, co * c);
  return r;
}

MultiPoly MultiPoly::pow(unsigned e) const {
  MultiPoly acc = constant(arity_, 1), b = *this;
  while (e) {
    if (e & 1u) acc = acc * b;
    if (e >>= 1u) b = b * b;
  }
  return acc;
}

Rat MultiPoly::eval(std::span<const Rat> point) const {
  if (static_cast<int>(point.size()) != arity_)
    throw ArityMismatch("eval point length != arity");
  // cache coordinate powers up to the degree actually used
  std::vector<std::vector<Rat>> powers(arity_);
  for (int i = 0; i < arity_; ++i) powers[i].push_back(Rat(1));
  Rat acc(0), term(0);
  for (const auto& [e, c] : terms_) {
    term = c;
    for (int i = 0; i < arity_; ++i) {
      if (e[i] == 0) continue;
      auto& pw = powers[i];
      while (pw.size() <= e[i]) pw.push_back(pw.back() * point[i]);
      term *= pw[e[i]];
    }
    acc += term;
  }
  return acc;
}

MultiPoly MultiPoly::substitute(const std::map<int, Rat>& assignment) const {
  for (const auto& [v, val] : assignment)
    if (v < 0 || v >= arity_) throw ArityMismatch("substituted variable out of range");
  MultiPoly r(arity_);
  Exponents e(arity_);
  for (const auto& [exps, c] : terms_) {
    Rat coeff = c;
    e = exps;
    for (const auto& [v, val] : assignment) {
      if (e[v] == 0) continue;
      coeff *= pow_rat(val, e[v]);
      e[v] = 0;
    }
    r.add_term(e, coeff);
  }
  return r;
}

MultiPoly MultiPoly::compose(const std::vector<MultiPoly>& values) const {
  if (static_cast<int>(values.size()) != arity_)
    throw ArityMismatch("compose needs one polynomial per variable");
  int out_arity = values.empty() ? 0 : values.front().arity();
  MultiPoly r(out_arity);
  for (const auto& [e, c] : terms_) {
    MultiPoly term = MultiPoly::constant(out_arity, c);
    for (int i = 0; i < arity_; ++i)
      if (e[i] > 0) term = term * values[i].pow(e[i]);
    r = r + term;
  }
  return r;
}

MultiPoly MultiPoly::derivative(int var) const {
  MultiPoly r(arity_);
  for (const auto& [e, c] : terms_) {
    if (e[var] == 0) continue;
    Exponents d = e;
    d[var] -= 1;
    r.add_term(d, c * static_cast<long>(e[var]));
  }
  return r;
}

std::vector<MultiPoly> MultiPoly::coeffs_in(int var) const {
  int d = degree_in(var);
  if (d < 0) return {};
  std::vector<MultiPoly> out(d + 1, MultiPoly(arity_));
  for (const auto& [e, c] : terms_) {
    Exponents r = e;
    unsigned k = r[var];
    r[var] = 0;
    out[k].add_term(r, c);
  }
  return out;
}

MultiPoly MultiPoly::relabeled(const std::vector<int>& perm, int new_arity) const {
  if (static_cast<int>(perm.size()) != arity_)
    throw ArityMismatch("relabel permutation length != arity");
  MultiPoly r(new_arity);
  Exponents e(new_arity);
  for (const auto& [exps, c] : terms_) {
    std::fill(e.begin(), e.end(), 0u);
    for (int i = 0; i < arity_; ++i) {
      if (exps[i] == 0) continue;
      if (perm[i] < 0 || perm[i] >= new_arity)
        throw ArityMismatch("relabel target out of range");
      e[perm[i]] += exps[i];
    }
    r.add_term(e, c);
  }
  return r;
}

QPoly MultiPoly::to_qpoly(int var) const {
  QPoly p(static_cast<std::size_t>(std::max(0, degree_in(var) + 1)), Rat(0));
  for (const auto& [e, c] : terms_) {
    for (int i = 0; i < arity_; ++i)
      if (i != var && e[i] != 0)
        throw ArityMismatch("to_qpoly: polynomial is not univariate in the given variable");
    p[e[var]] = c;
  }
  up::normalize(p);
  return p;
}

MultiPoly MultiPoly::from_qpoly(const QPoly& p, int arity, int var) {
  MultiPoly r(arity);
  Exponents e(arity, 0);
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] == 0) continue;
    e[var] = static_cast<unsigned>(i);
    r.add_term(e, p[i]);
  }
  return r;
}

namespace {

struct PolyRingOps {
  int arity;
  MultiPoly zero() const { return MultiPoly::zero(arity); }
  MultiPoly one() const { return MultiPoly::constant(arity, 1); }
  bool is_zero(const MultiPoly& p) const { return p.is_zero(); }
  MultiPoly add(const MultiPoly& a, const MultiPoly& b) const { return a + b; }
  MultiPoly sub(const MultiPoly& a, const MultiPoly& b) const { return a - b; }
  MultiPoly mul(const MultiPoly& a, const MultiPoly& b) const { return a * b; }
};

}  // namespace

MultiPoly resultant(const MultiPoly& P, const MultiPoly& Q, int var) {
  if (P.is_zero() && Q.is_zero()) throw BothZero("resultant of two zero polynomials");
  if (P.is_zero() || Q.is_zero()) return MultiPoly::zero(P.is_zero() ? Q.arity() : P.arity());
  if (P.arity() != Q.arity()) throw ArityMismatch("resultant arity mismatch");
  const int arity = P.arity();
  const int m = P.degree_in(var), n = Q.degree_in(var);
  if (m == 0 && n == 0) return MultiPoly::constant(arity, 1);

  auto pc = P.coeffs_in(var);  // pc[i] multiplies var^i
  auto qc = Q.coeffs_in(var);
  const int size = m + n;
  std::vector<std::vector<MultiPoly>> syl(size, std::vector<MultiPoly>(size, MultiPoly::zero(arity)));
  // n rows of P's coefficients (descending), then m rows of Q's
  for (int r = 0; r < n; ++r)
    for (int i = 0; i <= m; ++i) syl[r][r + i] = pc[m - i];
  for (int r = 0; r < m; ++r)
    for (int i = 0; i <= n; ++i) syl[n + r][r + i] = qc[n - i];
  return laplace_det(syl, PolyRingOps{arity});
}

// ---------------------------------------------------------------------------
// Text form: terms ordered by (total degree, exponent vector) descending,
// each written `coef * x1^e1 x3^e3` with only positive exponents listed.
// ---------------------------------------------------------------------------

std::string MultiPoly::to_string() const {
  if (is_zero()) return "0";
  std::vector<const TermMap::value_type*> order;
  order.reserve(terms_.size());
  for (const auto& t : terms_) order.push_back(&t);
  std::sort(order.begin(), order.end(), [](auto* a, auto* b) {
    unsigned da = exp_sum(a->first), db = exp_sum(b->first);
    if (da != db) return da > db;
    return a->first > b->first;
  });
  std::string out;
  bool first = true;
  for (auto* t : order) {
    const Rat& c = t->second;
    if (first) {
      if (c < 0) out += "-";
      first = false;
    } else {
      out += (c < 0) ? " - " : " + ";
    }
    out += rat_to_string(rat_abs(c));
    bool any_var = false;
    for (std::size_t i = 0; i < t->first.size(); ++i) {
      if (t->first[i] == 0) continue;
      out += any_var ? " " : " * ";
      out += "x" + std::to_string(i + 1) + "^" + std::to_string(t->first[i]);
      any_var = true;
    }
  }
  return out;
}

namespace {

std::vector<std::string> split_ws(std::string_view s) {
  std::vector<std::string> parts;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && s[i] == ' ') ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ') ++j;
    if (j > i) parts.emplace_back(s.substr(i, j - i));
    i = j;
  }
  return parts;
}

}  // namespace

MultiPoly parse_poly(std::string_view text, int arity) {
  if (text == "0") return MultiPoly::zero(arity);
  MultiPoly out(arity);
  std::size_t pos = 0;
  int sign = 1;
  if (!text.empty() && text[0] == '-') {
    sign = -1;
    pos = 1;
  }
  while (pos < text.size()) {
    std::size_t next_plus = text.find(" + ", pos);
    std::size_t next_minus = text.find(" - ", pos);
    std::size_t end = std::min(next_plus, next_minus);
    std::string_view term = text.substr(pos, end == std::string_view::npos ? end : end - pos);
    auto parts = split_ws(term);
    if (parts.empty()) throw ParseError("empty term in polynomial");
    Rat coeff;
    std::size_t var_start = 0;
    if (parts.size() >= 2 && parts[1] == "*") {
      coeff = parse_rat(parts[0]);
      var_start = 2;
      if (var_start >= parts.size()) throw ParseError("dangling '*' in polynomial term");
    } else if (parts.size() == 1) {
      coeff = parse_rat(parts[0]);
      var_start = 1;
    } else {
      throw ParseError("malformed polynomial term '" + std::string(term) + "'");
    }
    if (coeff <= 0) throw ParseError("term coefficients must be written unsigned");
    MultiPoly::Exponents exps(arity, 0);
    int last_var = -1;
    for (std::size_t i = var_start; i < parts.size(); ++i) {
      const std::string& v = parts[i];
      auto caret = v.find('^');
      if (v.size() < 4 || v[0] != 'x' || caret == std::string::npos)
        throw ParseError("malformed variable token '" + v + "'");
      int var = 0;
      try {
        var = std::stoi(v.substr(1, caret - 1));
      } catch (...) {
        throw ParseError("malformed variable token '" + v + "'");
      }
      long e = 0;
      try {
        e = std::stol(v.substr(caret + 1));
      } catch (...) {
        throw ParseError("malformed exponent in '" + v + "'");
      }
      if (var < 1 || var > arity) throw ParseError("variable index out of range in '" + v + "'");
      if (e < 1) throw ParseError("exponents in the text form must be >= 1");
      if (var - 1 <= last_var) throw ParseError("variables must be listed once, ascending");
      last_var = var - 1;
      exps[var - 1] = static_cast<unsigned>(e);
    }
    out.add_term(exps, sign > 0 ? coeff : Rat(-coeff));
    if (end == std::string_view::npos) break;
    sign = (end == next_minus) ? -1 : 1;
    pos = end + 3;
  }
  return out;
}

}  // namespace kpol

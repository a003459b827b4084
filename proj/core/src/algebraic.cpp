#include "kpol/algebraic.hpp"

#include <algorithm>

#include "kpol/errors.hpp"

namespace kpol {

namespace {

void bump(SignTestCounter* c, std::uint64_t n = 1) {
  if (c) c->sign_tests += n;
}

}  // namespace

AlgebraicNumber AlgebraicNumber::rational(const Rat& r) { return rational_in(r, r - 1); }

AlgebraicNumber AlgebraicNumber::rational_in(const Rat& r, const Rat& lo) {
  AlgebraicNumber a;
  a.exact_ = true;
  a.value_ = r;
  a.defining_ = up::from_coeffs({-r, Rat(1)});
  a.lo_ = lo;
  a.hi_ = r;
  return a;
}

AlgebraicNumber AlgebraicNumber::root_in(const QPoly& defining, const Rat& lo, const Rat& hi) {
  if (up::is_zero(defining)) throw ZeroPolynomial("algebraic number needs a nonzero defining polynomial");
  QPoly def = up::primitive_part(up::squarefree_part(defining));
  auto chain = up::sturm_chain(def);
  if (up::count_roots_halfopen(chain, lo, hi) != 1)
    throw InvalidRange("interval does not isolate exactly one root");
  return root_in_trusted(std::move(def), lo, hi);
}

AlgebraicNumber AlgebraicNumber::root_in_trusted(QPoly def, Rat lo, Rat hi) {
  if (up::sign_at(def, hi) == 0) return rational_in(hi, lo);
  // push the left endpoint off any *other* root of the defining polynomial
  while (up::sign_at(def, lo) == 0) {
    Rat mid = (lo + hi) / 2;
    int sm = up::sign_at(def, mid);
    if (sm == 0) return rational_in(mid, lo);
    if (sm != up::sign_at(def, hi))
      lo = std::move(mid);  // the sign change, hence the root, is in (mid, hi)
    else
      hi = std::move(mid);
  }
  AlgebraicNumber a;
  a.exact_ = false;
  a.defining_ = std::move(def);
  a.lo_ = std::move(lo);
  a.hi_ = std::move(hi);
  return a;
}

const Rat& AlgebraicNumber::value() const {
  if (!exact_) throw Error("value() on a non-rational algebraic number");
  return value_;
}

void AlgebraicNumber::refine(SignTestCounter* counter) {
  if (exact_) return;
  Rat mid = (lo_ + hi_) / 2;
  int sm = up::sign_at(defining_, mid);
  bump(counter);
  if (sm == 0) {
    *this = rational_in(mid, lo_);
    return;
  }
  int sl = up::sign_at(defining_, lo_);
  if (sm == sl)
    lo_ = std::move(mid);
  else
    hi_ = std::move(mid);
}

void AlgebraicNumber::refine_below_width(const Rat& w, SignTestCounter* counter) {
  while (!exact_ && hi_ - lo_ >= w) refine(counter);
}

double AlgebraicNumber::approx() const {
  if (exact_) return value_.get_d();
  Rat mid = (lo_ + hi_) / 2;
  return mid.get_d();
}

// ---------------------------------------------------------------------------
// Isolation
// ---------------------------------------------------------------------------

std::vector<AlgebraicNumber> isolate_real_roots(const QPoly& p) {
  if (up::is_zero(p)) throw ZeroPolynomial("isolate_real_roots(0)");
  QPoly def = up::primitive_part(up::squarefree_part(p));
  std::vector<AlgebraicNumber> out;
  if (up::degree(def) == 0) return out;
  auto chain = up::sturm_chain(def);
  Rat bound = up::cauchy_bound(def);

  // bisection on half-open intervals (lo, hi]; counts stay exact throughout
  auto var_at = [&](const Rat& x) { return up::sign_variations_at(chain, x); };
  struct Seg {
    Rat lo, hi;
    int vlo, vhi;
  };
  std::vector<Seg> stack;
  int v_lo = var_at(-bound), v_hi = var_at(bound);
  if (v_lo - v_hi > 0) stack.push_back({-bound, bound, v_lo, v_hi});

  // depth-first, left child processed first, so roots come out ascending
  while (!stack.empty()) {
    Seg s = stack.back();
    stack.pop_back();
    int count = s.vlo - s.vhi;
    if (count == 0) continue;
    if (count == 1) {
      out.push_back(AlgebraicNumber::root_in_trusted(def, s.lo, s.hi));
      continue;
    }
    Rat mid = (s.lo + s.hi) / 2;
    int vm = var_at(mid);
    // push right first so the left half is handled next
    stack.push_back({mid, s.hi, vm, s.vhi});
    stack.push_back({s.lo, mid, s.vlo, vm});
  }
  return out;
}

std::vector<AlgebraicNumber> isolate_real_roots(const MultiPoly& p) {
  if (p.is_zero()) throw ZeroPolynomial("isolate_real_roots(0)");
  return isolate_real_roots(p.to_qpoly(univariate_var(p)));
}

int sturm_count(const QPoly& p) {
  if (up::is_zero(p)) throw ZeroPolynomial("sturm_count(0)");
  auto chain = up::sturm_chain(p);
  return up::count_real_roots(chain);
}

int sturm_count(const QPoly& p, const Rat& lo, const Rat& hi) {
  if (up::is_zero(p)) throw ZeroPolynomial("sturm_count(0)");
  auto chain = up::sturm_chain(p);
  return up::count_roots_halfopen(chain, lo, hi);
}

int sturm_count_above(const QPoly& p, const Rat& lo) {
  if (up::is_zero(p)) throw ZeroPolynomial("sturm_count(0)");
  auto chain = up::sturm_chain(p);
  return up::sign_variations_at(chain, lo) - up::sign_variations_at_pos_inf(chain);
}

int sturm_count(const MultiPoly& p) { return sturm_count(p.to_qpoly(univariate_var(p))); }

int sturm_count(const MultiPoly& p, const Rat& lo, const Rat& hi) {
  return sturm_count(p.to_qpoly(univariate_var(p)), lo, hi);
}

Rat root_bound(const QPoly& p) { return up::cauchy_bound(p); }

Rat root_bound(const MultiPoly& p) {
  if (p.is_zero()) throw ZeroPolynomial("root_bound(0)");
  return up::cauchy_bound(p.to_qpoly(univariate_var(p)));
}

int univariate_var(const MultiPoly& p) {
  int var = -1;
  for (int i = 0; i < p.arity(); ++i) {
    if (p.degree_in(i) > 0) {
      if (var >= 0) throw ArityMismatch("polynomial is not univariate");
      var = i;
    }
  }
  return var < 0 ? 0 : var;
}

// ---------------------------------------------------------------------------
// Comparison and signs
// ---------------------------------------------------------------------------

int compare(const AlgebraicNumber& a, const Rat& b, SignTestCounter* counter) {
  if (a.is_rational()) {
    bump(counter);
    return sign_of(Rat(a.value() - b));
  }
  if (b <= a.lo()) return +1;  // root > lo >= b
  if (b > a.hi()) return -1;
  int sb = up::sign_at(a.defining(), b);
  bump(counter);
  if (sb == 0) return 0;  // b is the unique root in the interval
  if (b == a.hi()) return -1;
  int sl = up::sign_at(a.defining(), a.lo());
  // same sign as at lo means the root is still to the right of b
  return sb == sl ? +1 : -1;
}

namespace {

bool intervals_disjoint(const AlgebraicNumber& a, const AlgebraicNumber& b, int& result) {
  if (a.hi() <= b.lo()) {
    result = -1;
    return true;
  }
  if (b.hi() <= a.lo()) {
    result = +1;
    return true;
  }
  return false;
}

}  // namespace

int compare(const AlgebraicNumber& a, const AlgebraicNumber& b, SignTestCounter* counter) {
  if (a.is_rational()) return -compare(b, a.value(), counter);
  if (b.is_rational()) return compare(a, b.value(), counter);
  int result = 0;
  if (intervals_disjoint(a, b, result)) return result;

  // a few cheap refinement rounds usually separate distinct roots
  AlgebraicNumber x = a, y = b;
  for (int round = 0; round < 4; ++round) {
    x.refine(counter);
    y.refine(counter);
    if (x.is_rational()) return -compare(y, x.value(), counter);
    if (y.is_rational()) return compare(x, y.value(), counter);
    if (intervals_disjoint(x, y, result)) return result;
  }

  // equality is decided once, through the gcd of the defining polynomials
  QPoly g = up::gcd(x.defining(), y.defining());
  if (up::degree(g) >= 1) {
    Rat lo = std::max(x.lo(), y.lo());
    Rat hi = std::min(x.hi(), y.hi());
    bump(counter, 2);
    if (lo < hi && sturm_count(g, lo, hi) >= 1) return 0;
  }
  while (true) {
    x.refine(counter);
    y.refine(counter);
    if (x.is_rational()) return -compare(y, x.value(), counter);
    if (y.is_rational()) return compare(x, y.value(), counter);
    if (intervals_disjoint(x, y, result)) return result;
  }
}

int sign_at_algebraic(const QPoly& g, const AlgebraicNumber& xi, SignTestCounter* counter) {
  if (up::is_zero(g)) return 0;
  if (xi.is_rational()) {
    bump(counter);
    return up::sign_at(g, xi.value());
  }
  QPoly h = up::gcd(xi.defining(), g);
  bump(counter);
  if (up::degree(h) >= 1 && sturm_count(h, xi.lo(), xi.hi()) >= 1) return 0;
  // g(xi) != 0: shrink until the interval enclosure is sign-definite
  AlgebraicNumber x = xi;
  while (true) {
    RatInterval enc = interval_eval_univar(g, RatInterval(x.lo(), x.hi()));
    bump(counter);
    if (enc.lo > 0) return +1;
    if (enc.hi < 0) return -1;
    x.refine(counter);
    if (x.is_rational()) {
      bump(counter);
      return up::sign_at(g, x.value());
    }
  }
}

}  // namespace kpol

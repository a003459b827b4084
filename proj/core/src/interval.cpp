#include "kpol/interval.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "kpol/errors.hpp"

namespace kpol {

RatInterval::RatInterval(Rat l, Rat h) : lo(std::move(l)), hi(std::move(h)) {
  if (lo > hi) throw InvalidRange("interval with lo > hi");
}

RatInterval RatInterval::operator+(const RatInterval& o) const {
  return RatInterval(lo + o.lo, hi + o.hi);
}

RatInterval RatInterval::operator-(const RatInterval& o) const {
  return RatInterval(lo - o.hi, hi - o.lo);
}

RatInterval RatInterval::operator*(const RatInterval& o) const {
  Rat a = lo * o.lo, b = lo * o.hi, c = hi * o.lo, d = hi * o.hi;
  return RatInterval(std::min(std::min(a, b), std::min(c, d)),
                     std::max(std::max(a, b), std::max(c, d)));
}

namespace {
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

RatInterval RatInterval::pow(unsigned e) const {
  if (e == 0) return RatInterval(Rat(1), Rat(1));
  if (e == 1) return *this;
  if (e % 2 == 1 || lo >= 0) return RatInterval(pow_rat(lo, e), pow_rat(hi, e));
  if (hi <= 0) return RatInterval(pow_rat(hi, e), pow_rat(lo, e));
  // even power over a sign-straddling interval
  return RatInterval(Rat(0), std::max(pow_rat(lo, e), pow_rat(hi, e)));
}

RatInterval interval_eval(const MultiPoly& F, const std::vector<RatInterval>& box) {
  if (static_cast<int>(box.size()) != F.arity())
    throw ArityMismatch("interval_eval box length != arity");
  std::vector<std::vector<RatInterval>> powers(box.size());
  for (std::size_t i = 0; i < box.size(); ++i)
    powers[i].push_back(RatInterval(Rat(1), Rat(1)));
  RatInterval acc = RatInterval::point(Rat(0));
  for (const auto& [e, c] : F.terms()) {
    RatInterval term = RatInterval::point(c);
    for (std::size_t i = 0; i < box.size(); ++i) {
      if (e[i] == 0) continue;
      auto& pw = powers[i];
      while (pw.size() <= e[i]) pw.push_back(box[i].pow(static_cast<unsigned>(pw.size())));
      term = term * pw[e[i]];
    }
    acc = acc + term;
  }
  return acc;
}

RatInterval interval_eval_univar(const QPoly& p, const RatInterval& x) {
  RatInterval acc = RatInterval::point(Rat(0));
  for (std::size_t i = p.size(); i-- > 0;) {
    acc = acc * x;
    acc = acc + RatInterval::point(p[i]);
  }
  return acc;
}

// ---------------------------------------------------------------------------
// DInterval
// ---------------------------------------------------------------------------

namespace {

double down(double x) {
  if (std::isnan(x)) return -std::numeric_limits<double>::infinity();
  return std::nextafter(x, -std::numeric_limits<double>::infinity());
}

double upw(double x) {
  if (std::isnan(x)) return std::numeric_limits<double>::infinity();
  return std::nextafter(x, std::numeric_limits<double>::infinity());
}

}  // namespace

DInterval DInterval::from_rat(const Rat& x) {
  double d = x.get_d();  // rounds toward zero
  return DInterval(down(d), upw(d));
}

DInterval DInterval::from_rat_interval(const RatInterval& iv) {
  return DInterval(down(iv.lo.get_d()), upw(iv.hi.get_d()));
}

bool DInterval::definitely_excludes_zero() const {
  if (std::isnan(lo) || std::isnan(hi)) return false;
  return lo > 0.0 || hi < 0.0;
}

DInterval DInterval::operator+(const DInterval& o) const {
  return DInterval(down(lo + o.lo), upw(hi + o.hi));
}

DInterval DInterval::operator-(const DInterval& o) const {
  return DInterval(down(lo - o.hi), upw(hi - o.lo));
}

DInterval DInterval::operator*(const DInterval& o) const {
  double a = lo * o.lo, b = lo * o.hi, c = hi * o.lo, d = hi * o.hi;
  double mn = std::fmin(std::fmin(a, b), std::fmin(c, d));
  double mx = std::fmax(std::fmax(a, b), std::fmax(c, d));
  if (std::isnan(a) || std::isnan(b) || std::isnan(c) || std::isnan(d)) {
    mn = -std::numeric_limits<double>::infinity();
    mx = std::numeric_limits<double>::infinity();
  }
  return DInterval(down(mn), upw(mx));
}

DInterval DInterval::pow(unsigned e) const {
  if (e == 0) return DInterval(1.0, 1.0);
  DInterval acc = *this;
  for (unsigned i = 1; i < e; ++i) acc = acc * *this;
  if (e % 2 == 0 && lo < 0.0 && hi > 0.0) acc.lo = std::fmax(acc.lo, 0.0);
  return acc;
}

DInterval dinterval_eval(const MultiPoly& F, const std::vector<DInterval>& box) {
  std::vector<std::vector<DInterval>> powers(box.size());
  for (std::size_t i = 0; i < box.size(); ++i) powers[i].push_back(DInterval(1.0, 1.0));
  DInterval acc(0.0, 0.0);
  for (const auto& [e, c] : F.terms()) {
    DInterval term = DInterval::from_rat(c);
    for (std::size_t i = 0; i < box.size(); ++i) {
      if (e[i] == 0) continue;
      auto& pw = powers[i];
      while (pw.size() <= e[i]) pw.push_back(pw.back() * box[i]);
      term = term * pw[e[i]];
    }
    acc = acc + term;
  }
  return acc;
}

}  // namespace kpol

#pragma once

#include <vector>

#include "kpol/multipoly.hpp"
#include "kpol/rat.hpp"
#include "kpol/upoly.hpp"

namespace kpol {

/// Closed rational interval [lo, hi].
struct RatInterval {
  Rat lo, hi;

  RatInterval() : lo(0), hi(0) {}
  RatInterval(Rat l, Rat h);
  static RatInterval point(const Rat& x) { return RatInterval(x, x); }

  bool contains(const Rat& x) const { return lo <= x && x <= hi; }
  bool contains_zero() const { return lo <= 0 && 0 <= hi; }
  Rat width() const { return hi - lo; }
  Rat mid() const { return (lo + hi) / 2; }

  RatInterval operator+(const RatInterval& o) const;
  RatInterval operator-(const RatInterval& o) const;
  RatInterval operator*(const RatInterval& o) const;
  /// Tight power: even exponents clamp at zero on sign-straddling intervals.
  RatInterval pow(unsigned e) const;
};

/// Guaranteed enclosure of {F(x) : x in box} with exact rational endpoints,
/// computed term-wise. box.size() must equal F's arity.
RatInterval interval_eval(const MultiPoly& F, const std::vector<RatInterval>& box);

/// Enclosure of {p(x) : x in [lo, hi]} for a univariate polynomial.
RatInterval interval_eval_univar(const QPoly& p, const RatInterval& x);

/// Directed-rounding double interval: a fast, conservative prefilter. Every
/// operation widens outward by one ulp per side, so an enclosure that
/// excludes zero is a certificate; an inconclusive one falls back to the
/// exact rational path. Overflow degrades to [-inf, inf], never to a wrong
/// answer.
struct DInterval {
  double lo, hi;

  DInterval() : lo(0), hi(0) {}
  DInterval(double l, double h) : lo(l), hi(h) {}
  static DInterval from_rat(const Rat& x);
  static DInterval from_rat_interval(const RatInterval& iv);

  bool definitely_excludes_zero() const;

  DInterval operator+(const DInterval& o) const;
  DInterval operator-(const DInterval& o) const;
  DInterval operator*(const DInterval& o) const;
  DInterval pow(unsigned e) const;
};

DInterval dinterval_eval(const MultiPoly& F, const std::vector<DInterval>& box);

}  // namespace kpol

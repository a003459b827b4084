#pragma once

#include <optional>
#include <vector>

#include "kpol/counters.hpp"
#include "kpol/interval.hpp"
#include "kpol/multipoly.hpp"
#include "kpol/rat.hpp"
#include "kpol/upoly.hpp"

namespace kpol {

/// A real algebraic number, represented by a square-free primitive defining
/// polynomial together with a rational isolating interval (lo, hi] that
/// contains exactly one of its real roots. Rational numbers are stored
/// exactly (defining polynomial x - r, interval (r-1, r]).
///
/// Non-rational representatives keep defining(lo) != 0 and defining(hi) != 0,
/// so the root is simple and interior and refinement can bisect on signs.
class AlgebraicNumber {
 public:
  AlgebraicNumber() {}

  static AlgebraicNumber rational(const Rat& r);
  /// Exact value with a caller-supplied isolating interval (lo, r].
  static AlgebraicNumber rational_in(const Rat& r, const Rat& lo);

  /// defining need not be square-free yet; (lo, hi] must contain exactly one
  /// real root of its square-free part.
  static AlgebraicNumber root_in(const QPoly& defining, const Rat& lo, const Rat& hi);

  /// Internal fast path: defining must already be square-free and primitive
  /// and (lo, hi] must isolate exactly one of its roots.
  static AlgebraicNumber root_in_trusted(QPoly defining, Rat lo, Rat hi);

  bool is_rational() const { return exact_; }
  const Rat& value() const;  // requires is_rational()
  const QPoly& defining() const { return defining_; }
  const Rat& lo() const { return lo_; }
  const Rat& hi() const { return hi_; }

  /// Halves the isolating interval (one exact sign test, counted).
  void refine(SignTestCounter* counter = nullptr);
  void refine_below_width(const Rat& w, SignTestCounter* counter = nullptr);

  double approx() const;

 private:
  QPoly defining_;
  Rat lo_, hi_;
  bool exact_ = false;
  Rat value_;
};

/// All distinct real roots in ascending order; ZeroPolynomial if p == 0.
/// Returned isolating intervals are pairwise disjoint.
std::vector<AlgebraicNumber> isolate_real_roots(const QPoly& p);
std::vector<AlgebraicNumber> isolate_real_roots(const MultiPoly& p);

/// Number of distinct real roots of p (over R, or in the half-open interval
/// (lo, hi]). Endpoints that happen to be roots are handled exactly by the
/// half-open convention.
int sturm_count(const QPoly& p);
int sturm_count(const QPoly& p, const Rat& lo, const Rat& hi);
int sturm_count_above(const QPoly& p, const Rat& lo);  // roots in (lo, +inf)
int sturm_count(const MultiPoly& p);
int sturm_count(const MultiPoly& p, const Rat& lo, const Rat& hi);

/// Cauchy bound B = 1 + max|c_i|/|lead|: all real roots lie in (-B, B).
Rat root_bound(const QPoly& p);
Rat root_bound(const MultiPoly& p);

/// Three-way comparisons as real numbers: -1, 0, +1.
int compare(const AlgebraicNumber& a, const AlgebraicNumber& b,
            SignTestCounter* counter = nullptr);
int compare(const AlgebraicNumber& a, const Rat& b, SignTestCounter* counter = nullptr);

/// Exact sign of g at the algebraic point xi.
int sign_at_algebraic(const QPoly& g, const AlgebraicNumber& xi,
                      SignTestCounter* counter = nullptr);

/// The variable actually used by a univariate MultiPoly (>= 2 used variables
/// is an ArityMismatch; constants report variable 0).
int univariate_var(const MultiPoly& p);

}  // namespace kpol

#pragma once

#include <optional>
#include <vector>

#include "kpol/algebraic.hpp"
#include "kpol/counters.hpp"
#include "kpol/multipoly.hpp"

namespace kpol {

/// One x-monotone piece of a plane curve: over its open x-interval the curve
/// has a locally constant number of real y-roots and the arc follows the
/// branch-th of them, counted from below. Endpoints are consecutive critical
/// x-values (roots of Res_y(F, dF/dy) and of lc_y(F)) or infinite.
struct CurveArc {
  MultiPoly source;  // the vertical-free part of the curve, arity 2 (x, y)
  int curve = -1;    // index within the owning analysis/cell, -1 standalone
  int branch = 0;
  int interval = 0;  // which gap between consecutive criticals
  std::optional<AlgebraicNumber> x_lo, x_hi;  // nullopt = unbounded
};

/// Full single-curve analysis. Vertical lines (the content of F in y) are
/// split off; arcs cover the remaining curve between cut x-values.
struct CurveAnalysis {
  MultiPoly source;                        // primitive (vertical-free) part
  QPoly content;                           // gcd of the y-coefficients
  std::vector<AlgebraicNumber> verticals;  // roots of the content
  QPoly crit_poly;                         // squarefree lc_y * Res_y(F, F_y)
  std::vector<AlgebraicNumber> criticals;  // ascending cut x-values
  std::vector<int> branch_counts;          // per open interval (criticals+1)
  std::vector<Rat> interval_samples;       // one rational point per interval
  std::vector<CurveArc> arcs;

  int arcs_in_interval(int interval) const;
};

/// ZeroPolynomial on the zero polynomial; a curve that is entirely vertical
/// lines yields no arcs. deg_y <= 2 is fully supported; higher y-degree is
/// fine here (pair analysis is where the ladder is restricted).
CurveAnalysis analyze_curve(const MultiPoly& curve);

/// The arcs of analyze_curve; requires no vertical component.
std::vector<CurveArc> decompose_x_monotone(const MultiPoly& curve);

/// A genuine meeting point of two curves.
struct PairMeeting {
  AlgebraicNumber x;
  int k = 0;            // rank among the pair's meetings (x ascending, lower y first)
  int raw_index = 0;    // which real root of Res_y(F1, F2) this meeting sits on
  bool tangency = false;  // even contact: the branches do not exchange order
  bool at_tip = false;    // x coincides with a critical value of either curve
  int branch_a = 0, branch_b = 0;  // branch indices at x (meaningful when !at_tip)
};

struct PairAnalysis {
  bool coincident = false;  // the curves share a component
  QPoly resultant_x;        // Res_y(F1, F2)
  std::vector<AlgebraicNumber> raw_roots;  // all real roots, ascending
  std::vector<PairMeeting> meetings;       // sorted by (x, y)
};

/// Exact pair analysis for curves of y-degree <= 2 (UnsupportedDegree above).
/// Counted work: every sign evaluation lands on the counter.
PairAnalysis analyze_pair(const CurveAnalysis& a, const CurveAnalysis& b,
                          SignTestCounter* counter = nullptr);

/// Intersection events of two arcs from distinct curves: the pair's meetings
/// filtered to both branches and x-ranges. CoincidentCurves if the sources
/// share a component.
struct ArcIntersection {
  AlgebraicNumber x;
  int k = 0;
  bool tangency = false;
};
std::vector<ArcIntersection> pair_intersections(const CurveArc& arc_a, const CurveArc& arc_b,
                                                SignTestCounter* counter = nullptr);

/// A rational point strictly between two distinct algebraic numbers a < b.
Rat rational_strictly_between(const AlgebraicNumber& a, const AlgebraicNumber& b,
                              SignTestCounter* counter = nullptr);

/// y-roots of curve(x0, .) in ascending order (empty when the fiber has no
/// real points). Exact; used by ordering predicates and query tests.
std::vector<AlgebraicNumber> fiber_roots(const MultiPoly& curve, const Rat& x0);

/// The pieces of a curve the batched predicates are computed from: primitive
/// y-coefficient polynomials and the canonical critical polynomial (the same
/// pipeline analyze_curve uses, so root lists agree bit for bit).
struct CurveKernel {
  std::vector<QPoly> coeffs;  // y-coefficients of the primitive source
  QPoly crit;                 // squarefree primitive lc_y * Res_y(F, F_y)
};
CurveKernel curve_kernel(const MultiPoly& curve);

/// Res_y of two curves given by their y-coefficient vectors.
QPoly pair_resultant(const std::vector<QPoly>& f, const std::vector<QPoly>& g);

}  // namespace kpol

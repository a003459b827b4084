#include "kpol/curves.hpp"

#include <algorithm>

#include "kpol/errors.hpp"
#include "kpol/laplace.hpp"

namespace kpol {

namespace {

// ring adapter shared by the public resultant below
struct QPolyRingOps {
  QPoly zero() const { return {}; }
  QPoly one() const { return {Rat(1)}; }
  bool is_zero(const QPoly& p) const { return p.empty(); }
  QPoly add(const QPoly& a, const QPoly& b) const { return up::add(a, b); }
  QPoly sub(const QPoly& a, const QPoly& b) const { return up::sub(a, b); }
  QPoly mul(const QPoly& a, const QPoly& b) const { return up::mul(a, b); }
};

// y-coefficients of an (x, y) curve as dense x-polynomials
std::vector<QPoly> y_coeffs(const MultiPoly& curve) {
  auto ms = curve.coeffs_in(1);
  std::vector<QPoly> out;
  out.reserve(ms.size());
  for (auto& m : ms) out.push_back(m.to_qpoly(0));
  return out;
}

}  // namespace

// Sylvester resultant in y for coefficient vectors (index = power of y)
QPoly pair_resultant(const std::vector<QPoly>& f, const std::vector<QPoly>& g) {
  int m = static_cast<int>(f.size()) - 1;
  int n = static_cast<int>(g.size()) - 1;
  while (m >= 0 && up::is_zero(f[m])) --m;
  while (n >= 0 && up::is_zero(g[n])) --n;
  if (m < 0 || n < 0) return {};
  if (m == 0 && n == 0) return {Rat(1)};
  const int size = m + n;
  std::vector<std::vector<QPoly>> syl(size, std::vector<QPoly>(size));
  for (int r = 0; r < n; ++r)
    for (int i = 0; i <= m; ++i) syl[r][r + i] = f[m - i];
  for (int r = 0; r < m; ++r)
    for (int i = 0; i <= n; ++i) syl[n + r][r + i] = g[n - i];
  return laplace_det(syl, QPolyRingOps{});
}

namespace {

// square-free decomposition: result[m-1] collects the multiplicity-m part
std::vector<QPoly> squarefree_split(const QPoly& p) {
  std::vector<QPoly> out;
  if (up::degree(p) < 1) return out;
  QPoly t = up::gcd(p, up::derivative(p));
  QPoly v = up::divrem(p, t).first;  // distinct factors
  QPoly g = t;
  while (up::degree(v) > 0) {
    QPoly v_next = up::gcd(v, g);
    out.push_back(up::divrem(v, v_next).first);
    if (up::degree(v_next) > 0) g = up::divrem(g, v_next).first;
    v = v_next;
  }
  return out;
}

int multiplicity_at(const std::vector<QPoly>& split, const AlgebraicNumber& xi,
                    SignTestCounter* counter) {
  for (std::size_t m = 0; m < split.size(); ++m) {
    if (up::degree(split[m]) < 1) continue;
    if (sign_at_algebraic(split[m], xi, counter) == 0) return static_cast<int>(m) + 1;
  }
  return 0;
}

}  // namespace

Rat rational_strictly_between(const AlgebraicNumber& a_in, const AlgebraicNumber& b_in,
                              SignTestCounter* counter) {
  AlgebraicNumber a = a_in, b = b_in;
  // exact values act as zero-width intervals
  auto upper = [&] { return a.is_rational() ? a.value() : a.hi(); };
  auto lower = [&] { return b.is_rational() ? b.value() : b.lo(); };
  int guard = 0;
  while (!(upper() < lower())) {
    a.refine(counter);
    b.refine(counter);
    if (++guard > 4096) throw Error("rational_strictly_between: arguments are not separated");
  }
  return (upper() + lower()) / 2;
}

CurveKernel curve_kernel(const MultiPoly& curve) {
  if (curve.is_zero()) throw ZeroPolynomial("curve_kernel(0)");
  if (curve.arity() != 2) throw ArityMismatch("plane curves have arity 2");
  CurveKernel out;
  auto coeffs = y_coeffs(curve);
  QPoly content = {};
  for (const auto& c : coeffs) content = up::gcd(content, c);
  out.coeffs.resize(coeffs.size());
  for (std::size_t i = 0; i < coeffs.size(); ++i) out.coeffs[i] = up::divrem(coeffs[i], content).first;
  while (!out.coeffs.empty() && up::is_zero(out.coeffs.back())) out.coeffs.pop_back();
  if (out.coeffs.size() < 2) return out;  // no y-dependence after splitting verticals

  std::vector<QPoly> dy(out.coeffs.size() - 1);
  for (std::size_t i = 1; i < out.coeffs.size(); ++i)
    dy[i - 1] = up::scale(out.coeffs[i], Rat(static_cast<long>(i)));
  QPoly res = pair_resultant(out.coeffs, dy);
  if (up::is_zero(res))
    throw UnsupportedDegree("curve with a repeated y-factor is not supported");
  QPoly lc = out.coeffs.back();
  QPoly crit = up::mul(res, up::degree(lc) >= 1 ? lc : QPoly{Rat(1)});
  out.crit = up::primitive_part(up::squarefree_part(crit));
  return out;
}

int CurveAnalysis::arcs_in_interval(int interval) const {
  return interval < static_cast<int>(branch_counts.size()) ? branch_counts[interval] : 0;
}

CurveAnalysis analyze_curve(const MultiPoly& curve) {
  if (curve.is_zero()) throw ZeroPolynomial("analyze_curve(0)");
  if (curve.arity() != 2) throw ArityMismatch("plane curves have arity 2");

  CurveAnalysis out;
  auto coeffs = y_coeffs(curve);
  QPoly content = {};
  for (const auto& c : coeffs) content = up::gcd(content, c);
  out.content = content;
  if (up::degree(content) >= 1)
    for (auto& v : isolate_real_roots(content)) out.verticals.push_back(v);

  // divide the content out; what remains has no vertical component
  std::vector<QPoly> prim(coeffs.size());
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    auto [q, r] = up::divrem(coeffs[i], content);
    prim[i] = q;
    if (!up::is_zero(r)) throw Error("content division left a remainder");
  }
  MultiPoly source(2);
  for (std::size_t j = 0; j < prim.size(); ++j) {
    MultiPoly y_pow(2);
    y_pow.add_term({0, static_cast<unsigned>(j)}, Rat(1));
    source = source + MultiPoly::from_qpoly(prim[j], 2, 0) * y_pow;
  }
  out.source = source;

  const int dy = source.degree_in(1);
  if (dy < 1) return out;  // the curve was entirely vertical lines

  // cut x-values: roots of lc_y and of Res_y(F, dF/dy), via the shared kernel
  out.crit_poly = curve_kernel(curve).crit;
  if (up::degree(out.crit_poly) >= 1) out.criticals = isolate_real_roots(out.crit_poly);

  // one rational sample per open interval between consecutive cuts
  const int intervals = static_cast<int>(out.criticals.size()) + 1;
  out.interval_samples.resize(intervals);
  if (out.criticals.empty()) {
    out.interval_samples[0] = Rat(0);
  } else {
    out.interval_samples[0] = out.criticals.front().lo() - 1;
    for (int i = 1; i + 1 <= static_cast<int>(out.criticals.size()); ++i)
      out.interval_samples[i] = rational_strictly_between(out.criticals[i - 1], out.criticals[i], nullptr);
    out.interval_samples[intervals - 1] = out.criticals.back().hi() + 1;
  }

  out.branch_counts.resize(intervals);
  for (int i = 0; i < intervals; ++i) {
    auto fiber = source.substitute({{0, out.interval_samples[i]}}).to_qpoly(1);
    out.branch_counts[i] = up::degree(fiber) < 1 ? 0 : sturm_count(fiber);
    for (int b = 0; b < out.branch_counts[i]; ++b) {
      CurveArc arc;
      arc.source = source;
      arc.branch = b;
      arc.interval = i;
      if (i > 0) arc.x_lo = out.criticals[i - 1];
      if (i + 1 < intervals) arc.x_hi = out.criticals[i];
      out.arcs.push_back(std::move(arc));
    }
  }
  return out;
}

std::vector<CurveArc> decompose_x_monotone(const MultiPoly& curve) {
  auto analysis = analyze_curve(curve);
  if (!analysis.verticals.empty())
    throw InvalidRange("decompose_x_monotone: split vertical components off first");
  return analysis.arcs;
}

std::vector<AlgebraicNumber> fiber_roots(const MultiPoly& curve, const Rat& x0) {
  QPoly fiber = curve.substitute({{0, x0}}).to_qpoly(1);
  if (up::degree(fiber) < 1) return {};
  return isolate_real_roots(fiber);
}

// ---------------------------------------------------------------------------
// Pair analysis (y-degree <= 2, fully exact)
// ---------------------------------------------------------------------------

namespace {

struct Coeffs {
  QPoly a, b, c;  // a y^2 + b y + c
};

Coeffs coeffs_of(const MultiPoly& source) {
  auto v = y_coeffs(source);
  Coeffs out;
  out.c = v.size() > 0 ? v[0] : QPoly{};
  out.b = v.size() > 1 ? v[1] : QPoly{};
  out.a = v.size() > 2 ? v[2] : QPoly{};
  return out;
}

struct RawMeeting {
  int branch_a = 0, branch_b = 0;
  bool tangency = false;
  bool at_tip = false;
};

}  // namespace

PairAnalysis analyze_pair(const CurveAnalysis& A, const CurveAnalysis& B,
                          SignTestCounter* counter) {
  const int dyA = A.source.degree_in(1), dyB = B.source.degree_in(1);
  if (dyA < 1 || dyB < 1)
    throw UnsupportedDegree("pair analysis needs curves with y-dependence");
  if (dyA > 2 || dyB > 2)
    throw UnsupportedDegree("pair analysis is implemented for y-degree <= 2");

  PairAnalysis out;
  Coeffs f = coeffs_of(A.source), g = coeffs_of(B.source);
  out.resultant_x = pair_resultant(y_coeffs(A.source), y_coeffs(B.source));
  if (up::is_zero(out.resultant_x)) {
    out.coincident = true;
    return out;
  }
  if (up::degree(out.resultant_x) < 1) return out;
  out.raw_roots = isolate_real_roots(out.resultant_x);
  if (out.raw_roots.empty()) return out;

  auto res_split = squarefree_split(out.resultant_x);

  // pair combinations reused across roots
  QPoly beta = up::sub(up::mul(f.b, g.a), up::mul(g.b, f.a));
  QPoly gamma = up::sub(up::mul(f.c, g.a), up::mul(g.c, f.a));
  QPoly deltaA = up::sub(up::mul(f.b, f.b), up::scale(up::mul(f.a, f.c), Rat(4)));

  // branch index of y* = num/den on a y-degree-2 fiber: below the vertex is
  // branch 0, above it branch 1 (0 exactly at the vertex = the tip)
  // y*/den above or below the fiber's vertex decides the branch index:
  // y* - vertex = (2 a num + b den) / (2 a den)
  auto branch_on = [&](const Coeffs& cf, int s_lead, const QPoly& num, const QPoly& den,
                       const AlgebraicNumber& xi) {
    if (s_lead == 0) return 0;  // effective degree 1: single branch
    QPoly lhs = up::add(up::scale(up::mul(cf.a, num), Rat(2)), up::mul(cf.b, den));
    int s = sign_at_algebraic(lhs, xi, counter) * s_lead * sign_at_algebraic(den, xi, counter);
    return s > 0 ? 1 : 0;
  };

  struct Pending {
    std::size_t raw;
    RawMeeting m;
  };
  std::vector<Pending> pending;
  std::vector<std::size_t> need_side_samples;  // indices into pending

  for (std::size_t ri = 0; ri < out.raw_roots.size(); ++ri) {
    const AlgebraicNumber& xi = out.raw_roots[ri];
    int sa = up::is_zero(f.a) ? 0 : sign_at_algebraic(f.a, xi, counter);
    int sb = up::is_zero(f.b) ? 0 : sign_at_algebraic(f.b, xi, counter);
    int ta = up::is_zero(g.a) ? 0 : sign_at_algebraic(g.a, xi, counter);
    int tb = up::is_zero(g.b) ? 0 : sign_at_algebraic(g.b, xi, counter);
    int effA = sa != 0 ? 2 : (sb != 0 ? 1 : 0);
    int effB = ta != 0 ? 2 : (tb != 0 ? 1 : 0);
    if (effA == 0 || effB == 0) continue;  // that curve has no point at xi

    bool tip = false;
    if (up::degree(A.crit_poly) >= 1 && sign_at_algebraic(A.crit_poly, xi, counter) == 0)
      tip = true;
    if (!tip && up::degree(B.crit_poly) >= 1 && sign_at_algebraic(B.crit_poly, xi, counter) == 0)
      tip = true;

    auto parity_tangent = [&] { return multiplicity_at(res_split, xi, counter) % 2 == 0; };

    if (effA == 2 && effB == 2) {
      int sbeta = sign_at_algebraic(beta, xi, counter);
      if (sbeta != 0) {
        // candidate common root y* = -gamma/beta; genuine iff F_A vanishes
        QPoly M = up::add(up::sub(up::mul(f.a, up::mul(gamma, gamma)),
                                  up::mul(f.b, up::mul(beta, gamma))),
                          up::mul(f.c, up::mul(beta, beta)));
        if (sign_at_algebraic(M, xi, counter) != 0) continue;
        RawMeeting m;
        m.at_tip = tip;
        m.tangency = parity_tangent();
        QPoly num = up::neg(gamma);
        m.branch_a = branch_on(f, sa, num, beta, xi);
        m.branch_b = branch_on(g, ta, num, beta, xi);
        pending.push_back({ri, m});
      } else if (sign_at_algebraic(gamma, xi, counter) == 0) {
        // proportional fibers: every root is shared
        int sd = sign_at_algebraic(deltaA, xi, counter);
        if (sd < 0) continue;
        if (sd == 0) {
          RawMeeting m;  // double point at the shared vertex
          m.at_tip = true;
          m.tangency = true;
          pending.push_back({ri, m});
        } else {
          int mult = multiplicity_at(res_split, xi, counter);
          for (int br = 0; br < 2; ++br) {
            RawMeeting m;
            m.branch_a = m.branch_b = br;
            m.at_tip = tip;
            if (mult == 2) {
              m.tangency = false;  // two simple crossings stacked vertically
            } else {
              m.tangency = false;
              need_side_samples.push_back(pending.size());
            }
            pending.push_back({ri, m});
          }
        }
      }
      continue;
    }

    // at least one side is effectively linear: its root is the only candidate
    const bool a_linear = effA == 1;
    const Coeffs& lin = a_linear ? f : g;
    const Coeffs& oth = a_linear ? g : f;
    int oth_lead = a_linear ? ta : sa;
    QPoly num = up::neg(lin.c), den = lin.b;
    QPoly M;
    if ((a_linear ? effB : effA) == 2) {
      M = up::add(up::sub(up::mul(oth.a, up::mul(lin.c, lin.c)),
                          up::mul(oth.b, up::mul(lin.c, lin.b))),
                  up::mul(oth.c, up::mul(lin.b, lin.b)));
    } else {
      M = up::sub(up::mul(f.c, g.b), up::mul(g.c, f.b));  // both linear
    }
    if (sign_at_algebraic(M, xi, counter) != 0) continue;
    RawMeeting m;
    m.at_tip = tip;
    m.tangency = parity_tangent();
    int br_oth = branch_on(oth, oth_lead, num, den, xi);
    m.branch_a = a_linear ? 0 : br_oth;
    m.branch_b = a_linear ? br_oth : 0;
    pending.push_back({ri, m});
  }

  // side-sample fallback for the rare ambiguous stacked-crossing case
  if (!need_side_samples.empty()) {
    std::vector<AlgebraicNumber> walls;
    for (const auto& r : out.raw_roots) walls.push_back(r);
    for (const auto& r : A.criticals) walls.push_back(r);
    for (const auto& r : B.criticals) walls.push_back(r);
    std::sort(walls.begin(), walls.end(),
              [&](const AlgebraicNumber& x, const AlgebraicNumber& y) {
                return compare(x, y, counter) < 0;
              });
    for (std::size_t pi : need_side_samples) {
      const AlgebraicNumber& xi = out.raw_roots[pending[pi].raw];
      // nearest distinct walls around xi
      std::optional<AlgebraicNumber> left, right;
      for (const auto& w : walls) {
        int c = compare(w, xi, counter);
        if (c < 0) left = w;
        if (c > 0) {
          right = w;
          break;
        }
      }
      Rat sl = left ? rational_strictly_between(*left, xi, counter)
                    : xi.lo() - 1 - up::cauchy_bound(out.resultant_x);
      Rat sr = right ? rational_strictly_between(xi, *right, counter)
                     : xi.hi() + 1 + up::cauchy_bound(out.resultant_x);
      auto fa_l = fiber_roots(A.source, sl);
      auto fb_l = fiber_roots(B.source, sl);
      auto fa_r = fiber_roots(A.source, sr);
      auto fb_r = fiber_roots(B.source, sr);
      auto& m = pending[pi].m;
      if (m.branch_a < static_cast<int>(fa_l.size()) &&
          m.branch_a < static_cast<int>(fa_r.size()) &&
          m.branch_b < static_cast<int>(fb_l.size()) &&
          m.branch_b < static_cast<int>(fb_r.size())) {
        int before = compare(fa_l[m.branch_a], fb_l[m.branch_b], counter);
        int after = compare(fa_r[m.branch_a], fb_r[m.branch_b], counter);
        m.tangency = before == after && before != 0;
      }
    }
  }

  // rank the meetings: x ascending, vertically stacked ones bottom-up
  out.meetings.reserve(pending.size());
  for (const auto& p : pending) {
    PairMeeting m;
    m.x = out.raw_roots[p.raw];
    m.raw_index = static_cast<int>(p.raw);
    m.tangency = p.m.tangency;
    m.at_tip = p.m.at_tip;
    m.branch_a = p.m.branch_a;
    m.branch_b = p.m.branch_b;
    out.meetings.push_back(std::move(m));
  }
  for (std::size_t i = 0; i < out.meetings.size(); ++i)
    out.meetings[i].k = static_cast<int>(i);
  return out;
}

std::vector<ArcIntersection> pair_intersections(const CurveArc& arc_a, const CurveArc& arc_b,
                                                SignTestCounter* counter) {
  auto analysis_a = analyze_curve(arc_a.source);
  auto analysis_b = analyze_curve(arc_b.source);
  auto pair = analyze_pair(analysis_a, analysis_b, counter);
  if (pair.coincident) throw CoincidentCurves("arcs come from curves sharing a component");

  auto inside = [&](const std::optional<AlgebraicNumber>& lo,
                    const std::optional<AlgebraicNumber>& hi, const AlgebraicNumber& x) {
    if (lo && compare(x, *lo, counter) <= 0) return false;
    if (hi && compare(x, *hi, counter) >= 0) return false;
    return true;
  };

  std::vector<ArcIntersection> out;
  for (const auto& m : pair.meetings) {
    if (m.at_tip) continue;
    if (m.branch_a != arc_a.branch || m.branch_b != arc_b.branch) continue;
    if (!inside(arc_a.x_lo, arc_a.x_hi, m.x)) continue;
    if (!inside(arc_b.x_lo, arc_b.x_hi, m.x)) continue;
    out.push_back({m.x, m.k, m.tangency});
  }
  return out;
}

}  // namespace kpol

#include "kpol/adt.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "kpol/errors.hpp"
#include "kpol/laplace.hpp"

namespace kpol {

Rat balance_block_size(const Rat& a, const Rat& b, const Rat& c, const Rat& d) {
  Rat denom = b + d;
  if (denom <= 0) throw InvalidRange("balance needs b + d > 0");
  return (a - c) / denom;
}

Rat balance_block_size(int k) {
  if (k == 4) return balance_block_size(Rat(3), Rat(1), make_rat(3, 2), Rat(3));
  if (k == 5)
    return balance_block_size(Rat(4), Rat(2), make_rat(42, 17), make_rat(84, 17));
  throw UnsupportedK("balance_block_size supports k = 4 and k = 5");
}

long derived_block_size(int k, long n) {
  if (n <= 1) return 1;
  Rat e = balance_block_size(k);
  double exponent = e.get_d();
  long g = std::lround(std::pow(static_cast<double>(n), exponent));
  return std::max(1L, std::min(g, n));
}

// ---------------------------------------------------------------------------
// Boundary certificates
// ---------------------------------------------------------------------------

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

template <class Interval>
struct IntervalRingOps {
  Interval zero() const { return Interval(); }
  Interval one() const { return Interval(Rat(1), Rat(1)); }
  bool is_zero(const Interval&) const { return false; }  // keep every term
  Interval add(const Interval& a, const Interval& b) const { return a + b; }
  Interval sub(const Interval& a, const Interval& b) const { return a - b; }
  Interval mul(const Interval& a, const Interval& b) const { return a * b; }
};

template <>
DInterval IntervalRingOps<DInterval>::one() const {
  return DInterval(1.0, 1.0);
}

/// Sylvester matrix of two coefficient vectors over any ring element type.
template <class T>
std::vector<std::vector<T>> sylvester(const std::vector<T>& f, const std::vector<T>& g,
                                      const T& zero) {
  const int m = static_cast<int>(f.size()) - 1;
  const int n = static_cast<int>(g.size()) - 1;
  const int size = m + n;
  std::vector<std::vector<T>> syl(size, std::vector<T>(size, zero));
  for (int r = 0; r < n; ++r)
    for (int i = 0; i <= m; ++i) syl[r][r + i] = f[m - i];
  for (int r = 0; r < m; ++r)
    for (int i = 0; i <= n; ++i) syl[n + r][r + i] = g[n - i];
  return syl;
}

}  // namespace

MultiPoly HBoundary::product() const {
  const int arity = point_dims + param_dims;
  PolyRingOps ops{arity};
  MultiPoly out = MultiPoly::constant(arity, 1);
  auto res_of = [&](const std::vector<MultiPoly>& f, const std::vector<MultiPoly>& g) {
    if (f.size() < 2 || g.size() < 2) return MultiPoly::constant(arity, 1);
    return laplace_det(sylvester(f, g, MultiPoly::zero(arity)), ops);
  };
  auto deriv = [&](const std::vector<MultiPoly>& f) {
    std::vector<MultiPoly> out_c;
    for (std::size_t i = 1; i < f.size(); ++i)
      out_c.push_back(f[i].scaled(Rat(static_cast<long>(i))));
    return out_c;
  };
  out = out * res_of(r12_coeffs, r13_coeffs);
  if (r12_coeffs.size() >= 3) out = out * res_of(r12_coeffs, deriv(r12_coeffs));
  if (r13_coeffs.size() >= 3) out = out * res_of(r13_coeffs, deriv(r13_coeffs));
  if (!r12_coeffs.empty()) out = out * r12_coeffs.back();
  if (!r13_coeffs.empty()) out = out * r13_coeffs.back();
  return out;
}

namespace {

template <class Interval>
bool factors_exclude_zero(const HBoundary& hb, const std::vector<Interval>& box) {
  IntervalRingOps<Interval> ops;
  auto excludes = [&](const Interval& iv) {
    if constexpr (std::is_same_v<Interval, DInterval>)
      return iv.definitely_excludes_zero();
    else
      return !iv.contains_zero();
  };
  auto eval_coeffs = [&](const std::vector<MultiPoly>& cs) {
    std::vector<Interval> out;
    out.reserve(cs.size());
    for (const auto& c : cs) {
      if constexpr (std::is_same_v<Interval, DInterval>) {
        std::vector<DInterval> b = box;
        out.push_back(dinterval_eval(c, b));
      } else {
        out.push_back(interval_eval(c, box));
      }
    }
    return out;
  };
  auto i12 = eval_coeffs(hb.r12_coeffs);
  auto i13 = eval_coeffs(hb.r13_coeffs);
  // leading coefficients: a vanishing lc can change root counts at infinity
  if (!i12.empty() && !excludes(i12.back())) return false;
  if (!i13.empty() && !excludes(i13.back())) return false;
  auto det_excludes = [&](const std::vector<Interval>& f, const std::vector<Interval>& g) {
    if (f.size() < 2 || g.size() < 2) return true;  // no finite collisions possible
    return excludes(laplace_det(sylvester(f, g, ops.zero()), ops));
  };
  auto deriv = [&](const std::vector<Interval>& f) {
    std::vector<Interval> out;
    for (std::size_t i = 1; i < f.size(); ++i) {
      Interval c = f[i];
      for (std::size_t j = 1; j < i; ++j) c = c + f[i];
      out.push_back(c);
    }
    return out;
  };
  if (!det_excludes(i12, i13)) return false;
  if (i12.size() >= 3 && !det_excludes(i12, deriv(i12))) return false;
  if (i13.size() >= 3 && !det_excludes(i13, deriv(i13))) return false;
  return true;
}

}  // namespace

bool HBoundary::may_vanish_fast(const std::vector<DInterval>& box) const {
  return !factors_exclude_zero(*this, box);
}

bool HBoundary::may_vanish(const std::vector<RatInterval>& box, SignTestCounter* counter) const {
  if (counter) counter->sign_tests += 1;
  return !factors_exclude_zero(*this, box);
}

HBoundary build_H_boundary(const MultiPoly& F, TripleKind kind) {
  const int k = F.arity();
  if (k < 4) throw UnsupportedK("triple boundaries need k >= 4");
  int curve_deg = 0;
  for (const auto& [e, c] : F.terms()) curve_deg = std::max<int>(curve_deg, e[0] + e[1]);
  if (curve_deg > 3)
    throw UnsupportedDegree("boundary construction supports curve degree <= 3");

  const int s = k - 2;           // parameters per curve
  const int W = 2 + 3 * s;       // workspace: x, y, three parameter blocks
  auto place = [&](int copy) {   // relabel F's variables into the workspace
    std::vector<int> perm(k);
    perm[0] = 0;
    perm[1] = 1;
    for (int j = 0; j < s; ++j) perm[2 + j] = 2 + copy * s + j;
    return F.relabeled(perm, W);
  };
  MultiPoly F1 = place(0), F2 = place(1), F3 = place(2);

  // engine order: the c-coordinates of the three curves, then the rest
  std::vector<int> out_perm(W, 0);
  for (int copy = 0; copy < 3; ++copy) out_perm[2 + copy * s] = copy;
  int next = 3;
  for (int copy = 0; copy < 3; ++copy)
    for (int j = 1; j < s; ++j) out_perm[2 + copy * s + j] = next++;
  const int out_arity = 3 * s;

  HBoundary hb;
  hb.point_dims = 3;
  hb.param_dims = out_arity - 3;

  auto coeffs_out = [&](const MultiPoly& poly) {
    std::vector<MultiPoly> cs = poly.coeffs_in(0);
    for (auto& c : cs) c = c.relabeled(out_perm, out_arity);
    while (!cs.empty() && cs.back().is_zero()) cs.pop_back();
    return cs;
  };

  MultiPoly r12 = resultant(F1, F2, 1);
  hb.r12_coeffs = coeffs_out(r12);
  if (kind == TripleKind::Order) {
    hb.r13_coeffs = coeffs_out(resultant(F1, F3, 1));
  } else {
    MultiPoly f3y = F3.derivative(1);
    MultiPoly crit_raw = resultant(F3, f3y, 1);
    auto lc3 = F3.coeffs_in(1);
    hb.r13_coeffs = coeffs_out(crit_raw * lc3.back());
  }

  // advisory probe for structurally degenerate families
  if (hb.r12_coeffs.size() >= 2 && hb.r13_coeffs.size() >= 2) {
    Rng rng(20240229);
    bool all_zero = true;
    for (int probe = 0; probe < 8 && all_zero; ++probe) {
      std::vector<Rat> pt(out_arity);
      for (auto& v : pt) v = Rat(rng.int_in(-7, 7));
      QPoly fp(hb.r12_coeffs.size()), gp(hb.r13_coeffs.size());
      for (std::size_t i = 0; i < hb.r12_coeffs.size(); ++i) fp[i] = hb.r12_coeffs[i].eval(pt);
      for (std::size_t i = 0; i < hb.r13_coeffs.size(); ++i) gp[i] = hb.r13_coeffs[i].eval(pt);
      up::normalize(fp);
      up::normalize(gp);
      if (up::is_zero(fp) || up::is_zero(gp)) continue;
      // Res_x vanishes at this parameter point iff the two share a root
      if (up::degree(up::gcd(fp, gp)) < 1) all_zero = false;
    }
    hb.degenerate = all_zero;
  }
  return hb;
}

// ---------------------------------------------------------------------------
// The decision-tree solvers
// ---------------------------------------------------------------------------

namespace {

std::vector<Rat> dedupe_sorted(std::vector<Rat> values) {
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  return values;
}

/// Index arithmetic for the within-block ordered tuples of one value axis
/// (triples for the point side) or of a pair of axes (6-tuples for k = 5).
struct TripleIndexer {
  std::vector<std::size_t> block_of;    // value index -> block
  std::vector<std::size_t> offset_of;   // value index -> offset within block
  std::vector<std::size_t> block_base;  // block -> first tuple id
  std::vector<std::size_t> block_size;  // block -> member count

  static TripleIndexer over(const std::vector<Rat>& values, long g) {
    TripleIndexer ix;
    std::size_t n = values.size();
    for (std::size_t i = 0; i < n; ++i) {
      ix.block_of.push_back(i / g);
      ix.offset_of.push_back(i % g);
    }
    std::size_t base = 0;
    for (std::size_t b = 0; b * g < n; ++b) {
      std::size_t size = std::min<std::size_t>(g, n - b * g);
      ix.block_base.push_back(base);
      ix.block_size.push_back(size);
      base += size * size * size;
    }
    return ix;
  }

  std::size_t tuple_count() const {
    return block_base.empty() ? 0 : block_base.back() + block_size.back() * block_size.back() * block_size.back();
  }

  std::size_t tuple_id(std::size_t v1, std::size_t v2, std::size_t v3) const {
    std::size_t b = block_of[v1];
    std::size_t bs = block_size[b];
    return block_base[b] + (offset_of[v1] * bs + offset_of[v2]) * bs + offset_of[v3];
  }
};

/// Lazily computed per-curve kernels shared by batch membership.
struct CurveCache {
  const MultiPoly* F = nullptr;
  int k = 0;
  const std::vector<std::vector<Rat>>* axes = nullptr;  // parameter value axes
  std::map<std::vector<std::size_t>, CurveKernel> cache;

  const CurveKernel& kernel(const std::vector<std::size_t>& param_idx) {
    auto it = cache.find(param_idx);
    if (it != cache.end()) return it->second;
    std::map<int, Rat> assign;
    for (std::size_t j = 0; j < param_idx.size(); ++j)
      assign.emplace(2 + static_cast<int>(j), (*axes)[j][param_idx[j]]);
    std::vector<int> perm(k, 0);
    perm[0] = 0;
    perm[1] = 1;
    MultiPoly curve = F->substitute(assign).relabeled(perm, 2);
    return cache.emplace(param_idx, curve_kernel(curve)).first->second;
  }
};

struct AdtRun {
  const KPolInstance& inst;
  const AdtConfig& cfg;
  int k = 0;
  int param_axes = 0;                  // k - 2
  std::vector<Rat> A, B;               // query axes (deduped)
  std::vector<std::vector<Rat>> axes;  // parameter value axes (deduped)
  long g = 1;
  BlockGrid grid;
  SolveResult result;
  std::optional<Witness> witness;

  // Fredman state
  bool fredman = false;
  HBoundary hb_order, hb_crit;
  TripleIndexer c_ix;
  std::vector<std::vector<Rat>> c_triples;
  std::vector<std::vector<Rat>> d_tuples;
  // param tuple ids: for k=4 a TripleIndexer over axis 1; for k=5 the pair
  // (D block, E block) with local 6-tuples
  TripleIndexer d_ix;                          // k = 4
  std::vector<std::vector<std::size_t>> de_block_base;  // k = 5: [bd][be] -> base
  InterleaveStore store;
  PredicateTable t_order, t_crit;
  CurveCache curve_cache;

  void note_witness(std::vector<Rat> tuple) {
    if (witness) return;
    Witness w{std::move(tuple)};
    if (!inst.is_witness(w)) throw Error("internal: candidate witness does not vanish");
    witness = std::move(w);
  }
};

std::int32_t resolve_bundle(AdtRun& run, TripleKind kind, std::size_t c_tuple,
                            std::size_t d_tuple, SignTestCounter& counter);

void build_tables(AdtRun& run, SignTestCounter& counter) {
  run.hb_order = build_H_boundary(run.inst.F, TripleKind::Order);
  run.hb_crit = build_H_boundary(run.inst.F, TripleKind::CritOrder);

  // c-triples: ordered triples within each block of the first parameter axis
  run.c_ix = TripleIndexer::over(run.axes[0], run.g);
  const auto& C = run.axes[0];
  run.c_triples.reserve(run.c_ix.tuple_count());
  for (std::size_t b = 0; b < run.c_ix.block_base.size(); ++b) {
    std::size_t bs = run.c_ix.block_size[b];
    std::size_t start = b * run.g;
    for (std::size_t o1 = 0; o1 < bs; ++o1)
      for (std::size_t o2 = 0; o2 < bs; ++o2)
        for (std::size_t o3 = 0; o3 < bs; ++o3)
          run.c_triples.push_back({C[start + o1], C[start + o2], C[start + o3]});
  }

  // parameter tuples
  if (run.k == 4) {
    const auto& D = run.axes[1];
    run.d_ix = TripleIndexer::over(D, run.g);
    run.d_tuples.reserve(run.d_ix.tuple_count());
    for (std::size_t b = 0; b < run.d_ix.block_base.size(); ++b) {
      std::size_t bs = run.d_ix.block_size[b];
      std::size_t start = b * run.g;
      for (std::size_t o1 = 0; o1 < bs; ++o1)
        for (std::size_t o2 = 0; o2 < bs; ++o2)
          for (std::size_t o3 = 0; o3 < bs; ++o3)
            run.d_tuples.push_back({D[start + o1], D[start + o2], D[start + o3]});
    }
  } else {
    const auto& D = run.axes[1];
    const auto& E = run.axes[2];
    std::size_t nbd = (D.size() + run.g - 1) / run.g;
    std::size_t nbe = (E.size() + run.g - 1) / run.g;
    run.de_block_base.assign(nbd, std::vector<std::size_t>(nbe, 0));
    std::size_t base = 0;
    for (std::size_t bd = 0; bd < nbd; ++bd) {
      std::size_t ds = std::min<std::size_t>(run.g, D.size() - bd * run.g);
      for (std::size_t be = 0; be < nbe; ++be) {
        std::size_t es = std::min<std::size_t>(run.g, E.size() - be * run.g);
        run.de_block_base[bd][be] = base;
        std::size_t pairs = ds * es;
        base += pairs * pairs * pairs;
        for (std::size_t p1 = 0; p1 < pairs; ++p1)
          for (std::size_t p2 = 0; p2 < pairs; ++p2)
            for (std::size_t p3 = 0; p3 < pairs; ++p3) {
              auto de = [&](std::size_t p) {
                return std::pair<Rat, Rat>{D[bd * run.g + p / es], E[be * run.g + p % es]};
              };
              auto [d1, e1] = de(p1);
              auto [d2, e2] = de(p2);
              auto [d3, e3] = de(p3);
              run.d_tuples.push_back({d1, e1, d2, e2, d3, e3});
            }
      }
    }
  }

  auto build_one = [&](TripleKind kind, const HBoundary& hb) {
    EngineCallbacks cb;
    cb.may_vanish = [&](bool dual, int idx, const std::vector<RatInterval>& box,
                        SignTestCounter& c) {
      // assemble the full (points, params) box
      std::vector<RatInterval> full;
      full.reserve(hb.point_dims + hb.param_dims);
      if (!dual) {
        for (const auto& iv : box) full.push_back(iv);
        for (const auto& v : run.d_tuples[idx]) full.push_back(RatInterval::point(v));
      } else {
        for (const auto& v : run.c_triples[idx]) full.push_back(RatInterval::point(v));
        for (const auto& iv : box) full.push_back(iv);
      }
      std::vector<DInterval> dfull(full.size());
      for (std::size_t i = 0; i < full.size(); ++i) dfull[i] = DInterval::from_rat_interval(full[i]);
      if (!hb.may_vanish_fast(dfull)) return false;
      return hb.may_vanish(full, &c);
    };
    cb.resolve = [&, kind](int a, int b) -> std::int32_t {
      return resolve_bundle(run, kind, static_cast<std::size_t>(a),
                            static_cast<std::size_t>(b), counter);
    };
    return build_pair_table(run.c_triples, run.d_tuples, cb, run.cfg.engine, counter);
  };
  run.t_order = build_one(TripleKind::Order, run.hb_order);
  run.t_crit = build_one(TripleKind::CritOrder, run.hb_crit);
}

std::int32_t resolve_bundle(AdtRun& run, TripleKind kind, std::size_t c_tuple,
                            std::size_t d_tuple, SignTestCounter& counter) {
  // reconstruct the three curves' parameter index vectors
  const auto& ct = run.c_triples[c_tuple];
  const auto& dt = run.d_tuples[d_tuple];
  const auto& C = run.axes[0];
  auto c_index = [&](const Rat& v) {
    return static_cast<std::size_t>(
        std::lower_bound(C.begin(), C.end(), v) - C.begin());
  };
  std::vector<std::vector<std::size_t>> params(3);
  for (int i = 0; i < 3; ++i) params[i].push_back(c_index(ct[i]));
  if (run.k == 4) {
    const auto& D = run.axes[1];
    for (int i = 0; i < 3; ++i)
      params[i].push_back(static_cast<std::size_t>(
          std::lower_bound(D.begin(), D.end(), dt[i]) - D.begin()));
  } else {
    const auto& D = run.axes[1];
    const auto& E = run.axes[2];
    for (int i = 0; i < 3; ++i) {
      params[i].push_back(static_cast<std::size_t>(
          std::lower_bound(D.begin(), D.end(), dt[2 * i]) - D.begin()));
      params[i].push_back(static_cast<std::size_t>(
          std::lower_bound(E.begin(), E.end(), dt[2 * i + 1]) - E.begin()));
    }
  }
  const CurveKernel& k1 = run.curve_cache.kernel(params[0]);
  const CurveKernel& k2 = run.curve_cache.kernel(params[1]);
  if (k1.coeffs.size() < 2 || k2.coeffs.size() < 2) return -1;  // vertical-only curve
  QPoly r12 = pair_resultant(k1.coeffs, k2.coeffs);
  if (up::is_zero(r12)) return -1;  // coincident pair: never queried
  auto roots12 = up::degree(r12) >= 1 ? isolate_real_roots(r12) : std::vector<AlgebraicNumber>{};

  std::vector<AlgebraicNumber> other;
  if (kind == TripleKind::Order) {
    const CurveKernel& k3 = run.curve_cache.kernel(params[2]);
    if (k1.coeffs.size() < 2 || k3.coeffs.size() < 2) return -1;
    QPoly r13 = pair_resultant(k1.coeffs, k3.coeffs);
    if (up::is_zero(r13)) return -1;
    if (up::degree(r13) >= 1) other = isolate_real_roots(r13);
  } else {
    const CurveKernel& k3 = run.curve_cache.kernel(params[2]);
    if (up::degree(k3.crit) >= 1) other = isolate_real_roots(k3.crit);
  }
  return run.store.intern(interleave_roots(roots12, other, &counter));
}

/// Shared body of the two solvers; dims = number of parameter axes (2 or 3).
SolveResult solve_adt(const KPolInstance& instance, const AdtConfig& config, int dims) {
  const int k = dims + 2;
  if (instance.k != k) throw ArityMismatch("instance arity does not match the solver");
  instance.validate();

  AdtRun run{instance, config};
  run.k = k;
  run.param_axes = dims;
  SolveResult& res = run.result;
  run.A = dedupe_sorted(instance.sets[0]);
  run.B = dedupe_sorted(instance.sets[1]);
  for (int j = 0; j < dims; ++j) run.axes.push_back(dedupe_sorted(instance.sets[2 + j]));

  bool any_empty = run.A.empty() || run.B.empty();
  for (const auto& axis : run.axes) any_empty = any_empty || axis.empty();
  if (any_empty) return res;

  long n_nominal = 0;
  for (const auto& s : instance.sets) n_nominal = std::max<long>(n_nominal, s.size());
  run.g = config.g > 0 ? config.g : derived_block_size(k, n_nominal);
  long max_axis = 1;
  for (const auto& axis : run.axes) max_axis = std::max<long>(max_axis, axis.size());
  run.g = std::max(1L, std::min(run.g, max_axis));
  res.aux["g"] = static_cast<std::uint64_t>(run.g);

  run.grid = BlockGrid::build(run.axes, run.g);
  run.fredman = config.mode == AdtConfig::Mode::Fredman;

  if (run.fredman) {
    SignTestCounter batch;
    run.curve_cache.F = &instance.F;
    run.curve_cache.k = k;
    run.curve_cache.axes = &run.axes;
    build_tables(run, batch);
    res.aux["sign_tests_batch"] = batch.sign_tests;
    res.aux["batch_pruned"] = run.t_order.pruned_entries() + run.t_crit.pruned_entries();
    res.aux["batch_leaf"] = run.t_order.leaf_entries() + run.t_crit.leaf_entries();
    res.counters.merge(batch);
  }

  // ---- query bucketing: crossed cells per dual curve/surface --------------
  SignTestCounter boxes;
  const std::size_t cells = run.grid.cell_count();
  std::vector<std::vector<RatInterval>> cell_boxes(cells);
  std::vector<std::vector<DInterval>> cell_dboxes(cells);
  for (std::size_t c = 0; c < cells; ++c) {
    cell_boxes[c] = run.grid.cell_box(c);
    cell_dboxes[c].reserve(dims);
    for (const auto& iv : cell_boxes[c]) cell_dboxes[c].push_back(DInterval::from_rat_interval(iv));
  }
  std::vector<std::vector<std::pair<int, int>>> bucket(cells);
  std::uint64_t crossed_total = 0, crossed_max = 0;
  {
    std::vector<int> dual_perm(k, 0);
    for (int j = 0; j < dims; ++j) dual_perm[2 + j] = j;
    for (std::size_t ai = 0; ai < run.A.size(); ++ai) {
      for (std::size_t bi = 0; bi < run.B.size(); ++bi) {
        MultiPoly sigma = instance.F.substitute({{0, run.A[ai]}, {1, run.B[bi]}})
                              .relabeled(dual_perm, dims);
        res.aux["dual_curves"] += 1;
        if (sigma.is_zero()) {
          std::vector<Rat> tuple{run.A[ai], run.B[bi]};
          for (const auto& axis : run.axes) tuple.push_back(axis.front());
          run.note_witness(std::move(tuple));
          continue;
        }
        std::uint64_t crossed_here = 0;
        for (std::size_t c = 0; c < cells; ++c) {
          boxes.ram_ops += 1;
          if (dinterval_eval(sigma, cell_dboxes[c]).definitely_excludes_zero()) continue;
          if (!box_may_contain_zero(sigma, cell_boxes[c], 1, &boxes)) continue;
          bucket[c].emplace_back(static_cast<int>(ai), static_cast<int>(bi));
          ++crossed_here;
        }
        crossed_total += crossed_here;
        crossed_max = std::max(crossed_max, crossed_here);
      }
    }
  }
  res.aux["sign_tests_boxes"] = boxes.sign_tests;
  res.aux["crossed_boxes_total"] = crossed_total;
  res.aux["crossed_boxes_max"] = crossed_max;
  res.counters.merge(boxes);

  // ---- per-cell arrangement construction and queries ----------------------
  SignTestCounter build_counter, query_counter;
  for (std::size_t cell = 0; cell < cells; ++cell) {
    if (bucket[cell].empty()) continue;
    res.aux["cells_built"] += 1;

    // this cell's curves, in (axis0-major, ..., axisN-minor) order
    std::vector<std::size_t> block_coord(dims);
    {
      std::size_t c = cell;
      for (int a = dims; a-- > 0;) {
        block_coord[a] = c % run.grid.axis_blocks(a);
        c /= run.grid.axis_blocks(a);
      }
    }
    std::vector<std::vector<std::size_t>> member_idx(dims);
    for (int a = 0; a < dims; ++a) {
      std::size_t start = block_coord[a] * run.g;
      std::size_t stop = std::min(run.axes[a].size(), start + run.g);
      for (std::size_t i = start; i < stop; ++i) member_idx[a].push_back(i);
    }
    std::vector<MultiPoly> curves;
    std::vector<std::vector<std::size_t>> curve_params;  // per curve, axis value indices
    std::vector<std::size_t> odo(dims, 0);
    while (true) {
      std::vector<std::size_t> pidx(dims);
      std::map<int, Rat> assign;
      for (int a = 0; a < dims; ++a) {
        pidx[a] = member_idx[a][odo[a]];
        assign.emplace(2 + a, run.axes[a][pidx[a]]);
      }
      std::vector<int> perm(k, 0);
      perm[0] = 0;
      perm[1] = 1;
      curves.push_back(instance.F.substitute(assign).relabeled(perm, 2));
      curve_params.push_back(std::move(pidx));
      int pos = dims - 1;
      while (pos >= 0 && ++odo[pos] == member_idx[pos].size()) odo[pos--] = 0;
      if (pos < 0) break;
    }

    PredicateOracle::FredmanLookup lookup;
    if (run.fredman) {
      lookup = [&run, &curve_params](int base, int c1, int c2,
                                     TripleKind kind) -> const Interleave* {
        const auto& p1 = curve_params[base];
        const auto& p2 = curve_params[c1];
        const auto& p3 = curve_params[c2];
        std::size_t tid = run.c_ix.tuple_id(p1[0], p2[0], p3[0]);
        std::size_t did;
        if (run.k == 4) {
          did = run.d_ix.tuple_id(p1[1], p2[1], p3[1]);
        } else {
          std::size_t bd = p1[1] / run.g, be = p1[2] / run.g;
          std::size_t es = std::min<std::size_t>(run.g, run.axes[2].size() - be * run.g);
          auto local = [&](const std::vector<std::size_t>& p) {
            return (p[1] - bd * run.g) * es + (p[2] - be * run.g);
          };
          std::size_t pairs_sz = std::min<std::size_t>(run.g, run.axes[1].size() - bd * run.g) * es;
          did = run.de_block_base[bd][be] +
                (local(p1) * pairs_sz + local(p2)) * pairs_sz + local(p3);
        }
        const PredicateTable& table = kind == TripleKind::Order ? run.t_order : run.t_crit;
        std::int32_t payload = table.query(static_cast<int>(tid), static_cast<int>(did));
        if (payload < 0) return nullptr;
        return &run.store.get(payload);
      };
    }
    PredicateOracle oracle(curves,
                           run.fredman ? PredicateOracle::Mode::Fredman
                                       : PredicateOracle::Mode::Direct,
                           lookup);
    OrderType ot = build_order_type(oracle);
    LevelStructure ls = build_pointloc(ot);
    build_counter.merge(oracle.counters);
    res.aux["construction_predicates"] += oracle.predicates;
    oracle.counters = SignTestCounter{};
    std::uint64_t pred_before_queries = oracle.predicates;

    for (const auto& [ai, bi] : bucket[cell]) {
      auto loc = locate(ls, run.A[ai], run.B[bi], oracle);
      if (loc.kind != LocateResult::Kind::On) continue;
      int curve = loc.on_arc >= 0 ? oracle.curve_of_arc(loc.on_arc)
                                  : oracle.vertical_curve(loc.on_vertical);
      std::vector<Rat> tuple{run.A[ai], run.B[bi]};
      for (int a = 0; a < dims; ++a) tuple.push_back(run.axes[a][curve_params[curve][a]]);
      run.note_witness(std::move(tuple));
    }
    query_counter.merge(oracle.counters);
    res.aux["query_predicates"] += oracle.predicates - pred_before_queries;
  }

  res.aux["sign_tests_build"] = build_counter.sign_tests;
  res.aux["sign_tests_query"] = query_counter.sign_tests;
  res.counters.merge(build_counter);
  res.counters.merge(query_counter);
  res.yes = run.witness.has_value();
  if (run.witness) res.witness = std::move(run.witness);
  return res;
}

}  // namespace

SolveResult solve_4pol(const KPolInstance& instance, const AdtConfig& config) {
  return solve_adt(instance, config, 2);
}

SolveResult solve_5pol(const KPolInstance& instance, const AdtConfig& config) {
  return solve_adt(instance, config, 3);
}

std::string count_report(const SolveResult& result) {
  std::ostringstream out;
  out << "decision," << (result.yes ? "YES" : "NO") << "\n";
  out << "sign_tests," << result.counters.sign_tests << "\n";
  out << "lookups," << result.counters.lookups << "\n";
  out << "ram_ops," << result.counters.ram_ops << "\n";
  for (const auto& [key, value] : result.aux) out << key << "," << value << "\n";
  return out.str();
}

}  // namespace kpol

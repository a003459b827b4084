#include "kpol/arrangement.hpp"

#include <algorithm>

#include "kpol/errors.hpp"

namespace kpol {

// ---------------------------------------------------------------------------
// Interleavings
// ---------------------------------------------------------------------------

Interleave interleave_roots(const std::vector<AlgebraicNumber>& a,
                            const std::vector<AlgebraicNumber>& b, SignTestCounter* counter) {
  Interleave iv;
  iv.count_a = static_cast<std::uint8_t>(a.size());
  iv.count_b = static_cast<std::uint8_t>(b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    int c = compare(a[i], b[j], counter);
    if (c < 0) {
      iv.pattern.push_back(0);
      ++i;
    } else if (c > 0) {
      iv.pattern.push_back(1);
      ++j;
    } else {
      iv.pattern.push_back(2);
      ++i;
      ++j;
    }
  }
  for (; i < a.size(); ++i) iv.pattern.push_back(0);
  for (; j < b.size(); ++j) iv.pattern.push_back(1);
  return iv;
}

Ordering interleave_order(const Interleave& iv, int a_index, int b_index) {
  int ia = 0, ib = 0, pos_a = -1, pos_b = -1;
  for (std::size_t idx = 0; idx < iv.pattern.size(); ++idx) {
    std::uint8_t e = iv.pattern[idx];
    if (e == 0 || e == 2) {
      if (ia == a_index) pos_a = static_cast<int>(idx);
      ++ia;
    }
    if (e == 1 || e == 2) {
      if (ib == b_index) pos_b = static_cast<int>(idx);
      ++ib;
    }
  }
  if (pos_a < 0 || pos_b < 0) throw IndexOutOfRange("interleave index out of range");
  if (pos_a == pos_b) return Ordering::Equal;
  return pos_a < pos_b ? Ordering::Below : Ordering::Above;
}

std::int32_t InterleaveStore::intern(const Interleave& iv) {
  std::vector<std::uint8_t> key;
  key.reserve(iv.pattern.size() + 2);
  key.push_back(iv.count_a);
  key.push_back(iv.count_b);
  key.insert(key.end(), iv.pattern.begin(), iv.pattern.end());
  auto [it, inserted] = index_.emplace(std::move(key), static_cast<std::int32_t>(items_.size()));
  if (inserted) items_.push_back(iv);
  return it->second;
}

// ---------------------------------------------------------------------------
// OrderType
// ---------------------------------------------------------------------------

OrderType OrderType::relabeled(const std::vector<int>& perm) const {
  OrderType out;
  out.num_arcs = num_arcs;
  out.at_minus_infinity.reserve(at_minus_infinity.size());
  for (int a : at_minus_infinity) out.at_minus_infinity.push_back(perm.at(a));
  out.per_arc.resize(num_arcs);
  for (int a = 0; a < num_arcs; ++a) {
    auto& dst = out.per_arc[perm.at(a)];
    dst = per_arc[a];
    for (auto& e : dst) e.other_arc = perm.at(e.other_arc);
  }
  out.endpoint_groups = endpoint_groups;
  for (auto& group : out.endpoint_groups) {
    for (auto& e : group) e.arc = perm.at(e.arc);
    std::sort(group.begin(), group.end(), [](const EndpointEvent& x, const EndpointEvent& y) {
      if (x.is_start != y.is_start) return !x.is_start;  // ends first
      return x.arc < y.arc;
    });
  }
  return out;
}

// ---------------------------------------------------------------------------
// PredicateOracle
// ---------------------------------------------------------------------------

PredicateOracle::PredicateOracle(std::vector<MultiPoly> curves, Mode mode, FredmanLookup lookup)
    : mode_(mode), lookup_(std::move(lookup)), curves_(std::move(curves)) {
  if (mode_ == Mode::Fredman && !lookup_)
    throw InvalidRange("Fredman mode needs a triple-predicate lookup");
  const int n = static_cast<int>(curves_.size());
  alias_.resize(n);
  analyses_.resize(n);
  arc_ids_.resize(n);

  // identify curves with equal zero sets (proportional polynomials)
  std::vector<MultiPoly> normalized(n, MultiPoly(2));
  for (int i = 0; i < n; ++i) {
    if (curves_[i].is_zero()) throw ZeroPolynomial("cell curve is the zero polynomial");
    const Rat& lead = curves_[i].terms().rbegin()->second;
    normalized[i] = curves_[i].scaled(1 / lead);
    alias_[i] = i;
    for (int j = 0; j < i; ++j) {
      if (alias_[j] == j && normalized[j] == normalized[i]) {
        alias_[i] = j;
        break;
      }
    }
    if (alias_[i] != i) continue;
    analyses_[i] = analyze_curve(curves_[i]);
    auto& an = analyses_[i];
    for (std::size_t local = 0; local < an.arcs.size(); ++local) {
      an.arcs[local].curve = i;
      arc_ids_[i].push_back(num_arcs());
      arc_curve_.push_back(i);
      arc_local_.push_back(static_cast<int>(local));
    }
    for (const auto& v : an.verticals) verticals_.push_back({i, v});
  }
  std::sort(verticals_.begin(), verticals_.end(),
            [&](const VerticalLine& x, const VerticalLine& y) {
              return compare(x.x, y.x, &counters) < 0;
            });
}

const CurveArc& PredicateOracle::arc(int id) const {
  return analyses_.at(arc_curve_.at(id)).arcs.at(arc_local_.at(id));
}

const PairAnalysis& PredicateOracle::pair(int ci, int cj) { return pair_data(ci, cj).analysis; }

PredicateOracle::CellPair& PredicateOracle::pair_data(int ci, int cj) {
  if (ci > cj) std::swap(ci, cj);
  auto key = std::make_pair(ci, cj);
  auto it = pairs_.find(key);
  if (it != pairs_.end()) return it->second;

  CellPair cp;
  cp.analysis = analyze_pair(analyses_.at(ci), analyses_.at(cj), &counters);
  if (cp.analysis.coincident)
    throw CoincidentCurves("distinct cell curves share a component");

  // resolve the arcs each meeting lies on
  auto arc_at = [&](int curve, int branch, const AlgebraicNumber& x) {
    const auto& an = analyses_.at(curve);
    // interval containing x (x is never a critical value for non-tip meetings)
    int lo = 0, hi = static_cast<int>(an.criticals.size());
    while (lo < hi) {
      int mid = (lo + hi) / 2;
      if (compare(an.criticals[mid], x, &counters) < 0)
        lo = mid + 1;
      else
        hi = mid;
    }
    int interval = lo;
    if (branch >= an.arcs_in_interval(interval)) return -1;
    int base = 0;
    for (int i = 0; i < interval; ++i) base += an.arcs_in_interval(i);
    return arc_ids_.at(curve).at(base + branch);
  };
  for (const auto& m : cp.analysis.meetings) {
    if (m.at_tip) {
      cp.arc_a.push_back(-1);
      cp.arc_b.push_back(-1);
      continue;
    }
    cp.arc_a.push_back(arc_at(ci, m.branch_a, m.x));
    cp.arc_b.push_back(arc_at(cj, m.branch_b, m.x));
  }
  return pairs_.emplace(key, std::move(cp)).first->second;
}

Rat PredicateOracle::pair_left_sample(int ci, int cj) {
  CellPair& cp = pair_data(ci, cj);
  if (cp.left_sample_ready) return cp.left_sample;
  if (ci > cj) std::swap(ci, cj);
  Rat lowest(0);
  bool any = false;
  auto consider = [&](const AlgebraicNumber& x) {
    if (!any || x.lo() < lowest) lowest = x.lo();
    any = true;
  };
  for (const auto& r : cp.analysis.raw_roots) consider(r);
  for (const auto& r : analyses_.at(ci).criticals) consider(r);
  for (const auto& r : analyses_.at(cj).criticals) consider(r);
  cp.left_sample = any ? lowest - 1 : Rat(0);
  cp.left_sample_ready = true;
  return cp.left_sample;
}

Ordering PredicateOracle::order_at_sample(int arc_i, int arc_j, const Rat& x) {
  const CurveArc& ai = arc(arc_i);
  const CurveArc& aj = arc(arc_j);
  auto fi = fiber_roots(ai.source, x);
  auto fj = fiber_roots(aj.source, x);
  counters.sign_tests += 2;
  if (ai.branch >= static_cast<int>(fi.size()) || aj.branch >= static_cast<int>(fj.size()))
    throw Error("branch missing at sample point");
  int c = compare(fi[ai.branch], fj[aj.branch], &counters);
  if (c == 0) throw Error("distinct arcs coincide at a sample point");
  return c < 0 ? Ordering::Below : Ordering::Above;
}

Ordering PredicateOracle::minus_inf_order(int arc_i, int arc_j) {
  predicates += 1;
  int ci = curve_of_arc(arc_i), cj = curve_of_arc(arc_j);
  if (ci == cj) {
    int bi = arc(arc_i).branch, bj = arc(arc_j).branch;
    return bi < bj ? Ordering::Below : (bi > bj ? Ordering::Above : Ordering::Equal);
  }
  return order_at_sample(arc_i, arc_j, pair_left_sample(ci, cj));
}

Ordering PredicateOracle::tip_order(int starting_arc, int alive_arc) {
  predicates += 1;
  const CurveArc& s = arc(starting_arc);
  if (!s.x_lo) throw Error("tip_order on an unbounded arc");
  int cs = curve_of_arc(starting_arc), ct = curve_of_arc(alive_arc);
  if (cs == ct) {
    int bs = s.branch, bt = arc(alive_arc).branch;
    return bs < bt ? Ordering::Below : (bs > bt ? Ordering::Above : Ordering::Equal);
  }
  // rational sample just right of the tip, before any event of this pair
  CellPair& cp = pair_data(cs, ct);
  const AlgebraicNumber& xi = *s.x_lo;
  std::optional<AlgebraicNumber> next;
  auto consider = [&](const AlgebraicNumber& w) {
    if (compare(w, xi, &counters) > 0 && (!next || compare(w, *next, &counters) < 0)) next = w;
  };
  for (const auto& r : cp.analysis.raw_roots) consider(r);
  for (const auto& r : analyses_.at(cs).criticals) consider(r);
  for (const auto& r : analyses_.at(ct).criticals) consider(r);
  Rat sample = next ? rational_strictly_between(xi, *next, &counters) : Rat(xi.hi() + 1);
  return order_at_sample(starting_arc, alive_arc, sample);
}

Ordering PredicateOracle::endpoint_order(int arc_i, bool end_i, int arc_j, bool end_j) {
  predicates += 1;
  const auto& xi = end_i ? arc(arc_i).x_hi : arc(arc_i).x_lo;
  const auto& xj = end_j ? arc(arc_j).x_hi : arc(arc_j).x_lo;
  if (!xi || !xj) throw Error("endpoint_order on an unbounded side");
  int c = compare(*xi, *xj, &counters);
  return c < 0 ? Ordering::Below : (c > 0 ? Ordering::Above : Ordering::Equal);
}

const AlgebraicNumber& PredicateOracle::meeting_x(int arc_lo, int arc_hi, int pair_k) {
  return pair_data(curve_of_arc(arc_lo), curve_of_arc(arc_hi)).analysis.meetings.at(pair_k).x;
}

Ordering PredicateOracle::event_order(int base_arc, const ArcEvent& e1, const ArcEvent& e2) {
  predicates += 1;
  int cb = curve_of_arc(base_arc);
  int c1 = curve_of_arc(e1.other_arc), c2 = curve_of_arc(e2.other_arc);
  const auto& pa1 = pair(cb, c1);
  if (c1 == c2) {
    int r1 = pa1.meetings.at(e1.pair_k).raw_index;
    int r2 = pa1.meetings.at(e2.pair_k).raw_index;
    return r1 < r2 ? Ordering::Below : (r1 > r2 ? Ordering::Above : Ordering::Equal);
  }
  const auto& pa2 = pair(cb, c2);
  int r1 = pa1.meetings.at(e1.pair_k).raw_index;
  int r2 = pa2.meetings.at(e2.pair_k).raw_index;
  if (mode_ == Mode::Fredman) {
    counters.lookups += 1;
    const Interleave* iv = lookup_(cb, c1, c2, TripleKind::Order);
    if (!iv || iv->count_a != pa1.raw_roots.size() || iv->count_b != pa2.raw_roots.size())
      throw Error("triple table disagrees with the pair analysis");
    return interleave_order(*iv, r1, r2);
  }
  int c = compare(pa1.raw_roots.at(r1), pa2.raw_roots.at(r2), &counters);
  return c < 0 ? Ordering::Below : (c > 0 ? Ordering::Above : Ordering::Equal);
}

Ordering PredicateOracle::event_vs_endpoint(int base_arc, const ArcEvent& e, int arc3,
                                            bool end3) {
  predicates += 1;
  int cb = curve_of_arc(base_arc);
  int c1 = curve_of_arc(e.other_arc);
  int c3 = curve_of_arc(arc3);
  const auto& pa = pair(cb, c1);
  int r1 = pa.meetings.at(e.pair_k).raw_index;
  const CurveArc& a3 = arc(arc3);
  int crit_idx = end3 ? a3.interval : a3.interval - 1;
  const auto& crits = analyses_.at(c3).criticals;
  if (crit_idx < 0 || crit_idx >= static_cast<int>(crits.size()))
    throw Error("endpoint without a critical value");
  if (mode_ == Mode::Fredman && c3 != cb && c3 != c1) {
    counters.lookups += 1;
    const Interleave* iv = lookup_(cb, c1, c3, TripleKind::CritOrder);
    if (!iv || iv->count_a != pa.raw_roots.size() || iv->count_b != crits.size())
      throw Error("crit table disagrees with the pair analysis");
    return interleave_order(*iv, r1, crit_idx);
  }
  int c = compare(pa.raw_roots.at(r1), crits.at(crit_idx), &counters);
  return c < 0 ? Ordering::Below : (c > 0 ? Ordering::Above : Ordering::Equal);
}

int PredicateOracle::point_vs_arc(const Rat& qx, const Rat& qy, int arc_id) {
  predicates += 1;
  counters.sign_tests += 1;
  const CurveArc& a = arc(arc_id);
  auto fiber = fiber_roots(a.source, qx);
  if (fiber.empty()) return -1;  // no curve point at qx: boundary convention
  int branch = std::min<int>(a.branch, static_cast<int>(fiber.size()) - 1);
  return -compare(fiber[branch], qy, &counters);
}

Ordering PredicateOracle::x_vs_event(const Rat& qx, int arc_lo, int arc_hi, int pair_k) {
  predicates += 1;
  int c = -compare(meeting_x(arc_lo, arc_hi, pair_k), qx, &counters);
  return c < 0 ? Ordering::Below : (c > 0 ? Ordering::Above : Ordering::Equal);
}

Ordering PredicateOracle::x_vs_arc_endpoint(const Rat& qx, int arc_id, bool end) {
  predicates += 1;
  const auto& x = end ? arc(arc_id).x_hi : arc(arc_id).x_lo;
  if (!x) throw Error("x_vs_arc_endpoint on an unbounded side");
  int c = -compare(*x, qx, &counters);
  return c < 0 ? Ordering::Below : (c > 0 ? Ordering::Above : Ordering::Equal);
}

Ordering PredicateOracle::x_vs_vertical(const Rat& qx, int vertical) {
  predicates += 1;
  int c = -compare(verticals_.at(vertical).x, qx, &counters);
  return c < 0 ? Ordering::Below : (c > 0 ? Ordering::Above : Ordering::Equal);
}

// ---------------------------------------------------------------------------
// build_order_type
// ---------------------------------------------------------------------------

namespace {

/// Shared sweep: replays endpoint groups and in-slab crossings over the
/// discrete data. `insert_position` supplies the vertical position of each
/// starting arc (computed from predicates on the first pass, read back from
/// the order type afterwards).
struct SweepCallbacks {
  std::function<void(int slab, const std::vector<int>& alive)> on_slab_begin;
  /// Vertex between the arcs at positions pos_a and pos_b (pos_b = pos_a + 1
  /// for transversal crossings; tangencies may connect distant positions).
  std::function<void(int pos_a, int pos_b, int occ_a_after, int occ_b_after, int lo_arc,
                     int hi_arc, int k)>
      on_vertex;
  std::function<int(int group, std::size_t entry, int arc, const std::vector<int>& alive)>
      insert_position;
};

void run_sweep(const OrderType& ot, const SweepCallbacks& cb) {
  std::vector<int> alive = ot.at_minus_infinity;
  std::vector<std::size_t> cursor(ot.num_arcs, 0);
  std::vector<std::vector<char>> used(ot.num_arcs);
  for (int a = 0; a < ot.num_arcs; ++a) used[a].assign(ot.per_arc[a].size(), 0);
  const int groups = static_cast<int>(ot.endpoint_groups.size());

  auto advance = [&](int arc_id) {
    const auto& events = ot.per_arc[arc_id];
    while (cursor[arc_id] < events.size() && used[arc_id][cursor[arc_id]]) cursor[arc_id] += 1;
  };

  // unconsumed events of the tie block at the head of arc_id's list,
  // restricted to the given slab
  auto head_block = [&](int arc_id, int slab, std::vector<std::size_t>& out) {
    out.clear();
    advance(arc_id);
    const auto& events = ot.per_arc[arc_id];
    std::size_t head = cursor[arc_id];
    if (head >= events.size() || events[head].slab != slab) return;
    std::size_t start = head;
    while (start > 0 && events[start].tied_with_prev) --start;
    for (std::size_t i = start; i < events.size(); ++i) {
      if (i > start && !events[i].tied_with_prev) break;
      if (!used[arc_id][i]) out.push_back(i);
    }
  };

  std::vector<std::size_t> block_a, block_b;
  for (int slab = 0; slab <= groups; ++slab) {
    if (cb.on_slab_begin) cb.on_slab_begin(slab, alive);

    // in-slab crossings via the adjacent-swap fixpoint; events that share an
    // x-coordinate are matched as a block, in any adjacency-enabled order
    bool progressed = true;
    while (progressed) {
      progressed = false;
      for (std::size_t pos = 0; pos + 1 < alive.size(); ++pos) {
        int a = alive[pos], b = alive[pos + 1];
        head_block(a, slab, block_a);
        if (block_a.empty()) continue;
        head_block(b, slab, block_b);
        if (block_b.empty()) continue;
        int ia = -1, ib = -1;
        bool tangency = false;
        for (std::size_t ea : block_a) {
          const ArcEvent& ev_a = ot.per_arc[a][ea];
          if (ev_a.other_arc != b) continue;
          for (std::size_t eb : block_b) {
            const ArcEvent& ev_b = ot.per_arc[b][eb];
            if (ev_b.other_arc == a && ev_b.pair_k == ev_a.pair_k) {
              ia = static_cast<int>(ea);
              ib = static_cast<int>(eb);
              tangency = ev_a.tangency;
              break;
            }
          }
          if (ia >= 0) break;
        }
        if (ia < 0) continue;
        used[a][ia] = 1;
        used[b][ib] = 1;
        if (!tangency) std::swap(alive[pos], alive[pos + 1]);
        if (cb.on_vertex)
          cb.on_vertex(static_cast<int>(pos), static_cast<int>(pos) + 1, alive[pos],
                       alive[pos + 1], std::min(a, b), std::max(a, b),
                       ot.per_arc[a][ia].pair_k);
        progressed = true;
      }
      if (progressed) continue;
      // tangencies never exchange occupants, so at a coincidence point they
      // may connect arcs that are not vertically adjacent
      for (std::size_t pa = 0; pa < alive.size() && !progressed; ++pa) {
        int a = alive[pa];
        head_block(a, slab, block_a);
        if (block_a.empty()) continue;
        for (std::size_t pb = pa + 1; pb < alive.size() && !progressed; ++pb) {
          int b = alive[pb];
          head_block(b, slab, block_b);
          if (block_b.empty()) continue;
          for (std::size_t ea : block_a) {
            const ArcEvent& ev_a = ot.per_arc[a][ea];
            if (ev_a.other_arc != b || !ev_a.tangency) continue;
            for (std::size_t eb : block_b) {
              const ArcEvent& ev_b = ot.per_arc[b][eb];
              if (ev_b.other_arc != a || ev_b.pair_k != ev_a.pair_k) continue;
              used[a][ea] = 1;
              used[b][eb] = 1;
              if (cb.on_vertex)
                cb.on_vertex(static_cast<int>(pa), static_cast<int>(pb), alive[pa], alive[pb],
                             std::min(a, b), std::max(a, b), ev_a.pair_k);
              progressed = true;
              break;
            }
            if (progressed) break;
          }
        }
      }
    }
    for (int a : alive) {
      head_block(a, slab, block_a);
      if (!block_a.empty())
        throw InconsistentOrderType("crossing left unprocessed in its slab");
    }

    if (slab == groups) break;
    const auto& group = ot.endpoint_groups[slab];
    for (const auto& e : group) {
      if (e.is_start) continue;
      auto it = std::find(alive.begin(), alive.end(), e.arc);
      if (it == alive.end()) throw InconsistentOrderType("ending arc is not alive");
      advance(e.arc);
      if (cursor[e.arc] != ot.per_arc[e.arc].size())
        throw InconsistentOrderType("arc ends with unprocessed crossings");
      alive.erase(it);
    }
    for (std::size_t ei = 0; ei < group.size(); ++ei) {
      const auto& e = group[ei];
      if (!e.is_start) continue;
      int pos = cb.insert_position ? cb.insert_position(slab, ei, e.arc, alive) : e.insert_pos;
      if (pos < 0 || pos > static_cast<int>(alive.size()))
        throw InconsistentOrderType("insertion position out of range");
      alive.insert(alive.begin() + pos, e.arc);
    }
  }
  for (int a = 0; a < ot.num_arcs; ++a) {
    advance(a);
    if (cursor[a] != ot.per_arc[a].size())
      throw InconsistentOrderType("crossings left unprocessed at the end of the sweep");
  }
}

}  // namespace

OrderType build_order_type(PredicateOracle& oracle) {
  OrderType ot;
  ot.num_arcs = oracle.num_arcs();
  ot.per_arc.resize(ot.num_arcs);

  // gather the genuine meetings of every representative curve pair
  struct MeetingRef {
    int ci, cj, k;
  };
  std::vector<MeetingRef> meeting_refs;
  std::vector<int> rep_curves;
  for (int c = 0; c < oracle.num_curves(); ++c)
    if (oracle.representative(c) == c && !oracle.arc_ids_[c].empty()) rep_curves.push_back(c);

  for (std::size_t i = 0; i < rep_curves.size(); ++i) {
    for (std::size_t j = i + 1; j < rep_curves.size(); ++j) {
      int ci = rep_curves[i], cj = rep_curves[j];
      const auto& cp = oracle.pair_data(ci, cj);
      for (std::size_t k = 0; k < cp.analysis.meetings.size(); ++k) {
        const auto& m = cp.analysis.meetings[k];
        if (m.at_tip || cp.arc_a[k] < 0 || cp.arc_b[k] < 0) continue;
        ot.per_arc[cp.arc_a[k]].push_back({cp.arc_b[k], static_cast<int>(k), m.tangency, 0});
        ot.per_arc[cp.arc_b[k]].push_back({cp.arc_a[k], static_cast<int>(k), m.tangency, 0});
        meeting_refs.push_back({ci, cj, static_cast<int>(k)});
      }
    }
  }

  // sort each arc's events left to right (tie rule: other arc id, then k),
  // then mark the runs that share an x-coordinate
  for (int a = 0; a < ot.num_arcs; ++a) {
    std::sort(ot.per_arc[a].begin(), ot.per_arc[a].end(),
              [&](const ArcEvent& e1, const ArcEvent& e2) {
                if (e1.other_arc == e2.other_arc && e1.pair_k == e2.pair_k) return false;
                Ordering o = oracle.event_order(a, e1, e2);
                if (o != Ordering::Equal) return o == Ordering::Below;
                if (e1.other_arc != e2.other_arc) return e1.other_arc < e2.other_arc;
                return e1.pair_k < e2.pair_k;
              });
    auto& events = ot.per_arc[a];
    for (std::size_t i = 1; i < events.size(); ++i)
      events[i].tied_with_prev =
          oracle.event_order(a, events[i - 1], events[i]) == Ordering::Equal;
  }

  // endpoint groups (x ascending; within a tie, ends precede starts)
  struct Endpoint {
    int arc;
    bool is_start;
  };
  std::vector<Endpoint> endpoints;
  for (int a = 0; a < ot.num_arcs; ++a) {
    if (oracle.arc(a).x_lo) endpoints.push_back({a, true});
    if (oracle.arc(a).x_hi) endpoints.push_back({a, false});
  }
  std::sort(endpoints.begin(), endpoints.end(), [&](const Endpoint& x, const Endpoint& y) {
    if (x.arc == y.arc && x.is_start == y.is_start) return false;
    Ordering o = oracle.endpoint_order(x.arc, !x.is_start, y.arc, !y.is_start);
    if (o != Ordering::Equal) return o == Ordering::Below;
    if (x.is_start != y.is_start) return !x.is_start;
    return x.arc < y.arc;
  });
  for (std::size_t i = 0; i < endpoints.size(); ++i) {
    bool new_group =
        ot.endpoint_groups.empty() ||
        oracle.endpoint_order(endpoints[i].arc, !endpoints[i].is_start,
                              ot.endpoint_groups.back().front().arc,
                              !ot.endpoint_groups.back().front().is_start) != Ordering::Equal;
    if (new_group) ot.endpoint_groups.emplace_back();
    ot.endpoint_groups.back().push_back({endpoints[i].arc, endpoints[i].is_start, 0});
  }

  // assign every meeting to its major slab (binary search over the groups)
  std::map<std::tuple<int, int, int>, int> slab_of;
  for (const auto& ref : meeting_refs) {
    const auto& cp = oracle.pair_data(ref.ci, ref.cj);
    int base = cp.arc_a[ref.k];
    ArcEvent probe{cp.arc_b[ref.k], ref.k, false, 0};
    int lo = 0, hi = static_cast<int>(ot.endpoint_groups.size());
    while (lo < hi) {
      int mid = (lo + hi) / 2;
      const auto& rep = ot.endpoint_groups[mid].front();
      // group_x <= event_x keeps searching right
      if (oracle.event_vs_endpoint(base, probe, rep.arc, !rep.is_start) != Ordering::Below)
        lo = mid + 1;
      else
        hi = mid;
    }
    slab_of[{ref.ci, ref.cj, ref.k}] = lo;
  }
  for (int a = 0; a < ot.num_arcs; ++a) {
    int prev = 0;
    for (auto& e : ot.per_arc[a]) {
      int ci = oracle.curve_of_arc(a), cj = oracle.curve_of_arc(e.other_arc);
      if (ci > cj) std::swap(ci, cj);
      e.slab = slab_of.at({ci, cj, e.pair_k});
      if (e.slab < prev)
        throw InconsistentOrderType("event slabs decrease along an arc");
      prev = e.slab;
    }
  }

  // vertical order at -infinity for the left-unbounded arcs
  for (int a = 0; a < ot.num_arcs; ++a)
    if (!oracle.arc(a).x_lo) ot.at_minus_infinity.push_back(a);
  std::sort(ot.at_minus_infinity.begin(), ot.at_minus_infinity.end(), [&](int x, int y) {
    return oracle.minus_inf_order(x, y) == Ordering::Below;
  });

  // first sweep: compute the insertion positions
  SweepCallbacks cb;
  cb.insert_position = [&](int group, std::size_t entry, int arc_id,
                           const std::vector<int>& alive) {
    int lo = 0, hi = static_cast<int>(alive.size());
    while (lo < hi) {
      int mid = (lo + hi) / 2;
      if (oracle.tip_order(arc_id, alive[mid]) == Ordering::Above)
        lo = mid + 1;
      else
        hi = mid;
    }
    ot.endpoint_groups[group][entry].insert_pos = lo;
    return lo;
  };
  run_sweep(ot, cb);
  return ot;
}

// ---------------------------------------------------------------------------
// build_pointloc / locate
// ---------------------------------------------------------------------------

LevelStructure build_pointloc(const OrderType& order_type) {
  LevelStructure ls;
  ls.num_arcs = order_type.num_arcs;
  ls.num_groups = static_cast<int>(order_type.endpoint_groups.size());
  ls.levels.resize(order_type.num_arcs);
  ls.alive_count.assign(ls.num_groups + 1, 0);
  for (const auto& g : order_type.endpoint_groups)
    ls.group_rep.emplace_back(g.front().arc, g.front().is_start);

  SweepCallbacks cb;
  cb.on_slab_begin = [&](int slab, const std::vector<int>& alive) {
    ls.alive_count[slab] = static_cast<int>(alive.size());
    for (std::size_t l = 0; l < alive.size(); ++l)
      ls.levels[l].push_back({slab, alive[l], {}});
  };
  cb.on_vertex = [&](int pos_a, int pos_b, int occ_a, int occ_b, int a, int b, int k) {
    LevelStructure::Vertex v{a, b, k};
    ls.levels[pos_a].back().steps.emplace_back(v, occ_a);
    ls.levels[pos_b].back().steps.emplace_back(v, occ_b);
  };
  run_sweep(order_type, cb);
  return ls;
}

int occupant_at(const LevelStructure& structure, int level, int slab, const Rat& qx,
                PredicateOracle& oracle) {
  const auto& lv = structure.levels.at(level);
  auto it = std::partition_point(lv.begin(), lv.end(),
                                 [&](const LevelStructure::LevelSlab& s) { return s.slab < slab; });
  if (it == lv.end() || it->slab != slab) throw Error("level has no record for this slab");
  std::size_t lo = 0, hi = it->steps.size();
  while (lo < hi) {
    std::size_t mid = (lo + hi) / 2;
    const auto& v = it->steps[mid].first;
    if (oracle.x_vs_event(qx, v.arc_lo, v.arc_hi, v.pair_k) != Ordering::Below)
      lo = mid + 1;  // vertex at or left of the query
    else
      hi = mid;
  }
  return lo == 0 ? it->start_occupant : it->steps[lo - 1].second;
}

namespace {

/// Occupant of level `l` in major slab `slab` at abscissa qx, then the
/// on/above/below test against the query point.
std::pair<int, int> probe_level(const LevelStructure& ls, int l, int slab, const Rat& qx,
                                const Rat& qy, PredicateOracle& oracle) {
  int occupant = occupant_at(ls, l, slab, qx, oracle);
  return {oracle.point_vs_arc(qx, qy, occupant), occupant};
}

/// Binary search over the levels of one slab. Returns On through `result`,
/// or the first level whose occupant is not strictly below the query.
bool search_slab(const LevelStructure& ls, int slab, const Rat& qx, const Rat& qy,
                 PredicateOracle& oracle, LocateResult& result, int& first_not_below) {
  int lo = 0, hi = ls.alive_count[slab];
  while (lo < hi) {
    int mid = (lo + hi) / 2;
    auto [side, occupant] = probe_level(ls, mid, slab, qx, qy, oracle);
    if (side == 0) {
      result.kind = LocateResult::Kind::On;
      result.on_arc = occupant;
      return true;
    }
    if (side > 0)
      lo = mid + 1;  // query above this level
    else
      hi = mid;
  }
  first_not_below = lo;
  return false;
}

}  // namespace

LocateResult locate(const LevelStructure& structure, const Rat& qx, const Rat& qy,
                    PredicateOracle& oracle) {
  LocateResult result;
  std::uint64_t start_predicates = oracle.predicates;

  // vertical lines are zero-width slabs checked up front
  if (oracle.num_verticals() > 0) {
    int lo = 0, hi = oracle.num_verticals();
    while (lo < hi) {
      int mid = (lo + hi) / 2;
      Ordering o = oracle.x_vs_vertical(qx, mid);
      if (o == Ordering::Equal) {
        result.kind = LocateResult::Kind::On;
        result.on_vertical = mid;
        result.predicates = oracle.predicates - start_predicates;
        return result;
      }
      if (o == Ordering::Above)
        lo = mid + 1;  // the vertical is left of the query
      else
        hi = mid;
    }
  }

  // major slab of the query
  int lo = 0, hi = structure.num_groups;
  while (lo < hi) {
    int mid = (lo + hi) / 2;
    Ordering o = oracle.x_vs_arc_endpoint(qx, structure.group_rep[mid].first,
                                          !structure.group_rep[mid].second);
    if (o != Ordering::Below)
      lo = mid + 1;  // group boundary at or left of the query
    else
      hi = mid;
  }
  const int slab = lo;
  bool on_boundary =
      slab > 0 && oracle.x_vs_arc_endpoint(qx, structure.group_rep[slab - 1].first,
                                           !structure.group_rep[slab - 1].second) ==
                      Ordering::Equal;
  result.at_slab_boundary = on_boundary;

  int first_not_below = 0;
  if (search_slab(structure, slab, qx, qy, oracle, result, first_not_below)) {
    result.predicates = oracle.predicates - start_predicates;
    return result;
  }
  if (on_boundary) {
    // arcs that end exactly here live in the left slab only
    int ignored = 0;
    if (search_slab(structure, slab - 1, qx, qy, oracle, result, ignored)) {
      result.at_slab_boundary = true;
      result.predicates = oracle.predicates - start_predicates;
      return result;
    }
  }
  if (first_not_below >= structure.alive_count[slab]) {
    result.kind = LocateResult::Kind::AboveAll;
  } else {
    result.kind = LocateResult::Kind::Face;
    result.below_level = first_not_below - 1;
    result.above_level = first_not_below;
    result.slab = slab;
  }
  result.predicates = oracle.predicates - start_predicates;
  return result;
}

LocateResult locate_by_scan(PredicateOracle& oracle, const Rat& qx, const Rat& qy) {
  LocateResult result;
  std::uint64_t start_predicates = oracle.predicates;
  for (int v = 0; v < oracle.num_verticals(); ++v) {
    if (oracle.x_vs_vertical(qx, v) == Ordering::Equal) {
      result.kind = LocateResult::Kind::On;
      result.on_vertical = v;
      result.predicates = oracle.predicates - start_predicates;
      return result;
    }
  }
  int below = 0, alive = 0;
  for (int a = 0; a < oracle.num_arcs(); ++a) {
    const CurveArc& arc = oracle.arc(a);
    if (arc.x_lo && oracle.x_vs_arc_endpoint(qx, a, false) == Ordering::Below) continue;
    if (arc.x_hi && oracle.x_vs_arc_endpoint(qx, a, true) == Ordering::Above) continue;
    ++alive;
    int side = oracle.point_vs_arc(qx, qy, a);
    if (side == 0) {
      result.kind = LocateResult::Kind::On;
      result.on_arc = a;
      result.predicates = oracle.predicates - start_predicates;
      return result;
    }
    if (side > 0) ++below;
  }
  if (below == alive) {
    result.kind = LocateResult::Kind::AboveAll;
  } else {
    result.kind = LocateResult::Kind::Face;
    result.below_level = below - 1;
    result.above_level = below;
  }
  result.predicates = oracle.predicates - start_predicates;
  return result;
}

}  // namespace kpol

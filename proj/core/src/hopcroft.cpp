#include "kpol/hopcroft.hpp"

#include <algorithm>

#include "kpol/errors.hpp"

namespace kpol {

namespace {
constexpr int kDepthCap = 64;
}  // namespace

struct HopcroftBuilder {
  const std::vector<std::vector<Rat>>& A;
  const std::vector<std::vector<Rat>>& B;
  const EngineCallbacks& cb;
  const EngineConfig& cfg;
  SignTestCounter& counter;
  std::pair<int, int>* first_zero;
  PredicateTable* out;

  void init_sizes() {
    out->na_ = static_cast<int>(A.size());
    out->nb_ = static_cast<int>(B.size());
  }

  void note_zero(int a, int b, std::int32_t payload) {
    if (first_zero && payload == 0 && first_zero->first < 0) *first_zero = {a, b};
  }

  int build(std::vector<int> a_ids, std::vector<int> b_ids, int depth) {
    out->max_depth_ = std::max(out->max_depth_, depth);
    const int id = static_cast<int>(out->nodes_.size());
    out->nodes_.emplace_back();

    auto make_leaf = [&](PredicateTable::Node& node) {
      node.leaf = true;
      node.leaf_a = a_ids;
      node.leaf_b = b_ids;
      node.leaf_m.reserve(a_ids.size() * b_ids.size());
      for (int a : a_ids)
        for (int b : b_ids) {
          std::int32_t v = cb.resolve(a, b);
          note_zero(a, b, v);
          node.leaf_m.push_back(v);
        }
      out->leaf_entries_ += node.leaf_m.size();
    };

    const std::size_t na = a_ids.size(), nb = b_ids.size();
    if (na == 0 || nb == 0 || std::min(na, nb) <= static_cast<std::size_t>(cfg.n0) ||
        depth >= kDepthCap) {
      make_leaf(out->nodes_[id]);
      return id;
    }

    const bool dual = cfg.allow_dual_switch && nb > na;
    const auto& part_pts = dual ? B : A;
    std::vector<int>& part = dual ? b_ids : a_ids;
    std::vector<int>& rest = dual ? a_ids : b_ids;

    BlockGrid grid = BlockGrid::over_points(part_pts, part, cfg.r);
    const std::size_t cells = grid.cell_count();
    if (cells <= 1) {
      make_leaf(out->nodes_[id]);
      return id;
    }

    struct CellWork {
      std::vector<int> members;
      std::vector<int> crossing;
      std::vector<std::pair<int, std::int32_t>> pruned;
    };
    std::vector<CellWork> work(cells);
    for (int p : part) work[grid.cell_of(part_pts[p])].members.push_back(p);

    bool progress = false;
    std::size_t nonempty = 0;
    for (std::size_t c = 0; c < cells; ++c) {
      auto& w = work[c];
      if (w.members.empty()) continue;
      ++nonempty;
      auto box = grid.cell_box(c);
      const int rep = w.members.front();
      for (int other : rest) {
        counter.ram_ops += 1;
        if (cb.may_vanish(dual, other, box, counter)) {
          w.crossing.push_back(other);
        } else {
          std::int32_t v = dual ? cb.resolve(other, rep) : cb.resolve(rep, other);
          // the payload is constant over the whole cell
          if (first_zero && v == 0)
            for (int m : w.members) note_zero(dual ? other : m, dual ? m : other, v);
          w.pruned.emplace_back(other, v);
        }
      }
      if (w.crossing.size() < rest.size() || nonempty > 1) progress = true;
    }
    if (nonempty <= 1 && !progress) {
      make_leaf(out->nodes_[id]);
      return id;
    }

    // freeze the partitioned side's lookup arrays (sorted by id)
    {
      auto& node = out->nodes_[id];
      node.dual = dual;
      node.cells.resize(cells);
      std::vector<std::pair<int, int>> order;  // (id, cell)
      for (std::size_t c = 0; c < cells; ++c)
        for (int m : work[c].members) order.emplace_back(m, static_cast<int>(c));
      std::sort(order.begin(), order.end());
      node.part_ids.reserve(order.size());
      node.part_cell.reserve(order.size());
      for (auto& [m, c] : order) {
        node.part_ids.push_back(m);
        node.part_cell.push_back(c);
      }
      for (std::size_t c = 0; c < cells; ++c) {
        node.cells[c].pruned = std::move(work[c].pruned);
        std::sort(node.cells[c].pruned.begin(), node.cells[c].pruned.end());
        out->pruned_entries_ += node.cells[c].pruned.size();
      }
    }

    for (std::size_t c = 0; c < cells; ++c) {
      if (work[c].members.empty() || work[c].crossing.empty()) continue;
      int child = dual ? build(work[c].crossing, work[c].members, depth + 1)
                       : build(work[c].members, work[c].crossing, depth + 1);
      out->nodes_[id].cells[c].child = child;
    }
    return id;
  }
};

PredicateTable build_pair_table(const std::vector<std::vector<Rat>>& A,
                                const std::vector<std::vector<Rat>>& B,
                                const EngineCallbacks& callbacks, const EngineConfig& config,
                                SignTestCounter& counter, std::pair<int, int>* first_zero) {
  if (config.r < 2 || config.n0 < 1) throw InvalidRange("engine needs r >= 2 and n0 >= 1");
  PredicateTable table;
  HopcroftBuilder builder{A, B, callbacks, config, counter, first_zero, &table};
  builder.init_sizes();
  std::vector<int> a_ids(A.size()), b_ids(B.size());
  for (std::size_t i = 0; i < A.size(); ++i) a_ids[i] = static_cast<int>(i);
  for (std::size_t i = 0; i < B.size(); ++i) b_ids[i] = static_cast<int>(i);
  builder.build(std::move(a_ids), std::move(b_ids), 0);
  return table;
}

std::int32_t PredicateTable::query(int a, int b, SignTestCounter* counter) const {
  if (a < 0 || a >= na_ || b < 0 || b >= nb_) throw IndexOutOfRange("pair index out of range");
  if (counter) counter->lookups += 1;
  int node_id = 0;
  while (true) {
    const Node& node = nodes_[node_id];
    if (node.leaf) {
      auto ia = std::lower_bound(node.leaf_a.begin(), node.leaf_a.end(), a);
      auto ib = std::lower_bound(node.leaf_b.begin(), node.leaf_b.end(), b);
      if (ia == node.leaf_a.end() || *ia != a || ib == node.leaf_b.end() || *ib != b)
        throw IndexOutOfRange("pair not covered by this table");
      return node.leaf_m[static_cast<std::size_t>(ia - node.leaf_a.begin()) * node.leaf_b.size() +
                         static_cast<std::size_t>(ib - node.leaf_b.begin())];
    }
    const int part_key = node.dual ? b : a;
    const int other_key = node.dual ? a : b;
    auto it = std::lower_bound(node.part_ids.begin(), node.part_ids.end(), part_key);
    if (it == node.part_ids.end() || *it != part_key)
      throw IndexOutOfRange("pair not covered by this table");
    const Cell& cell = node.cells[node.part_cell[it - node.part_ids.begin()]];
    auto pit = std::lower_bound(
        cell.pruned.begin(), cell.pruned.end(), other_key,
        [](const std::pair<int, std::int32_t>& e, int key) { return e.first < key; });
    if (pit != cell.pruned.end() && pit->first == other_key) return pit->second;
    if (cell.child < 0) throw IndexOutOfRange("pair not covered by this table");
    node_id = cell.child;
  }
}

// ---------------------------------------------------------------------------
// detect
// ---------------------------------------------------------------------------

int sign_query(const SignMap& map, int p_index, int q_index, SignTestCounter* counter) {
  if (p_index < 0 || p_index >= map.num_p() || q_index < 0 || q_index >= map.num_q())
    throw IndexOutOfRange("sign_query index out of range");
  int tq = map.q_to_table[q_index];
  if (tq < 0) return 0;  // the surface is the whole space
  return static_cast<int>(map.table.query(p_index, tq, counter));
}

IncidenceReport detect(const IncidenceQuery& query, const EngineConfig& config) {
  const int t = query.t, s = query.s;
  if (t < 1 || s < 1) throw ArityMismatch("detect needs t, s >= 1");
  if (query.F.arity() != t + s) throw ArityMismatch("F arity must equal t + s");
  for (const auto& p : query.P)
    if (static_cast<int>(p.size()) != t) throw ArityMismatch("P point of wrong dimension");
  for (const auto& q : query.Q)
    if (static_cast<int>(q.size()) != s) throw ArityMismatch("Q point of wrong dimension");

  IncidenceReport report;
  report.signs.num_p_ = static_cast<int>(query.P.size());
  report.signs.num_q_ = static_cast<int>(query.Q.size());

  // substitute every q into F; identically-zero surfaces decide immediately
  std::vector<MultiPoly> sigma;
  sigma.reserve(query.Q.size());
  std::vector<std::vector<Rat>> q_table_pts;
  report.signs.q_to_table.assign(query.Q.size(), -1);
  for (std::size_t qi = 0; qi < query.Q.size(); ++qi) {
    std::map<int, Rat> assign;
    for (int j = 0; j < s; ++j) assign.emplace(t + j, query.Q[qi][j]);
    MultiPoly sq = query.F.substitute(assign);
    report.counters.sign_tests += 1;
    report.aux["substitutions"] += 1;
    if (sq.is_zero()) {
      if (!query.P.empty() && !report.yes) {
        report.yes = true;
        report.witness_p = 0;
        report.witness_q = static_cast<int>(qi);
      }
      continue;
    }
    report.signs.q_to_table[qi] = static_cast<int>(q_table_pts.size());
    q_table_pts.push_back(query.Q[qi]);
    sigma.push_back(std::move(sq));
  }
  std::vector<int> table_to_q(q_table_pts.size());
  for (std::size_t qi = 0; qi < query.Q.size(); ++qi)
    if (report.signs.q_to_table[qi] >= 0) table_to_q[report.signs.q_to_table[qi]] = static_cast<int>(qi);

  // dual surfaces are substituted lazily, only if some node partitions Q
  std::vector<std::optional<MultiPoly>> sigma_dual(query.P.size());
  auto dual_surface = [&](int p) -> const MultiPoly& {
    if (!sigma_dual[p]) {
      std::map<int, Rat> assign;
      for (int j = 0; j < t; ++j) assign.emplace(j, query.P[p][j]);
      sigma_dual[p] = query.F.substitute(assign).relabeled(
          [&] {
            std::vector<int> perm(t + s);
            for (int j = 0; j < t; ++j) perm[j] = 0;  // unused after substitution
            for (int j = 0; j < s; ++j) perm[t + j] = j;
            return perm;
          }(),
          s);
      report.counters.sign_tests += 1;
    }
    return *sigma_dual[p];
  };

  std::vector<MultiPoly> sigma_primal_s;  // sigma as arity-t polynomials
  sigma_primal_s.reserve(sigma.size());
  for (auto& sq : sigma) {
    std::vector<int> perm(t + s);
    for (int j = 0; j < t; ++j) perm[j] = j;
    for (int j = 0; j < s; ++j) perm[t + j] = 0;  // unused after substitution
    sigma_primal_s.push_back(sq.relabeled(perm, t));
  }

  EngineCallbacks cb;
  cb.may_vanish = [&](bool dual, int idx, const std::vector<RatInterval>& box,
                      SignTestCounter& counter) {
    const MultiPoly& surf = dual ? dual_surface(idx) : sigma_primal_s[idx];
    return box_may_contain_zero(surf, box, 1, &counter);
  };
  std::vector<Rat> point(t + s);
  cb.resolve = [&](int a, int b) -> std::int32_t {
    for (int j = 0; j < t; ++j) point[j] = query.P[a][j];
    const auto& qv = q_table_pts[b];
    for (int j = 0; j < s; ++j) point[t + j] = qv[j];
    report.counters.sign_tests += 1;
    return sign_of(query.F.eval(point));
  };

  std::pair<int, int> first_zero{-1, -1};
  report.signs.table =
      build_pair_table(query.P, q_table_pts, cb, config, report.counters, &first_zero);
  if (!report.yes && first_zero.first >= 0) {
    report.yes = true;
    report.witness_p = first_zero.first;
    report.witness_q = table_to_q[first_zero.second];
  }
  report.aux["tree_depth"] = report.signs.table.max_depth();
  report.aux["tree_nodes"] = report.signs.table.node_count();
  report.aux["pruned_pairs"] = report.signs.table.pruned_entries();
  report.aux["leaf_pairs"] = report.signs.table.leaf_entries();
  return report;
}

std::pair<Rat, Rat> main_term_exponents(int t, int s) {
  if (t < 1 || s < 1) throw DegenerateDimensions("main_term_exponents needs t, s >= 1");
  if (t * s == 1) throw DegenerateDimensions("ts must exceed 1");
  Rat denom(t * s - 1);
  return {Rat(1) - Rat(t - 1) / denom, Rat(1) - Rat(s - 1) / denom};
}

PredicateTable batch_predicates(const std::vector<std::vector<Rat>>& points,
                                const std::vector<std::vector<Rat>>& params,
                                const MultiPoly& boundary,
                                const std::function<bool(int, int)>& membership,
                                const EngineConfig& config, SignTestCounter& counter) {
  if (points.empty() || params.empty())
    return build_pair_table(points, params,
                            EngineCallbacks{nullptr, [](int, int) { return 0; }}, config, counter);
  const int t = static_cast<int>(points.front().size());
  const int s = static_cast<int>(params.front().size());
  if (boundary.arity() != t + s) throw ArityMismatch("boundary arity must equal t + s");

  std::vector<std::optional<MultiPoly>> sigma(params.size()), sigma_dual(points.size());
  auto primal = [&](int idx) -> const MultiPoly& {
    if (!sigma[idx]) {
      std::map<int, Rat> assign;
      for (int j = 0; j < s; ++j) assign.emplace(t + j, params[idx][j]);
      std::vector<int> perm(t + s);
      for (int j = 0; j < t; ++j) perm[j] = j;
      for (int j = 0; j < s; ++j) perm[t + j] = 0;
      sigma[idx] = boundary.substitute(assign).relabeled(perm, t);
    }
    return *sigma[idx];
  };
  auto dual = [&](int idx) -> const MultiPoly& {
    if (!sigma_dual[idx]) {
      std::map<int, Rat> assign;
      for (int j = 0; j < t; ++j) assign.emplace(j, points[idx][j]);
      std::vector<int> perm(t + s);
      for (int j = 0; j < t; ++j) perm[j] = 0;
      for (int j = 0; j < s; ++j) perm[t + j] = j;
      sigma_dual[idx] = boundary.substitute(assign).relabeled(perm, s);
    }
    return *sigma_dual[idx];
  };

  EngineCallbacks cb;
  cb.may_vanish = [&](bool is_dual, int idx, const std::vector<RatInterval>& box,
                      SignTestCounter& c) {
    const MultiPoly& surf = is_dual ? dual(idx) : primal(idx);
    return box_may_contain_zero(surf, box, 1, &c);
  };
  cb.resolve = [&](int a, int b) -> std::int32_t { return membership(a, b) ? 1 : 0; };
  return build_pair_table(points, params, cb, config, counter);
}

}  // namespace kpol

#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "kpol/counters.hpp"
#include "kpol/interval.hpp"
#include "kpol/multipoly.hpp"
#include "kpol/partition.hpp"
#include "kpol/rat.hpp"

namespace kpol {

struct EngineConfig {
  int r = 8;                     // cells targeted per recursion node
  int n0 = 64;                   // brute-force threshold
  bool allow_dual_switch = true; // partition whichever side is larger
};

/// Decide whether F(p, q) = 0 for some (p, q) in P x Q, with P in R^t and
/// Q in R^s and F of arity t + s (p-variables first).
struct IncidenceQuery {
  int t = 0, s = 0;
  MultiPoly F;
  std::vector<std::vector<Rat>> P;
  std::vector<std::vector<Rat>> Q;
};

/// Callbacks driving the generic primal/dual recursion.
///  - may_vanish: surface induced by the *other* side's element `idx` over
///    the partitioned side's space; must return false only with a proof that
///    the surface misses the box. Exact work is counted on the counter.
///  - resolve: exact payload for the pair (a, b); responsible for counting
///    its own sign tests.
struct EngineCallbacks {
  std::function<bool(bool dual, int idx, const std::vector<RatInterval>& box,
                     SignTestCounter& counter)>
      may_vanish;
  std::function<std::int32_t(int a, int b)> resolve;
};

/// The recursion tree of the incidence engine with one int32 payload per
/// (a, b) pair. Every pair is resolved exactly once: either at the unique
/// cell where b's surface stopped crossing (payload shared by the whole
/// cell), or in a leaf matrix. Queries are pure table walks.
class PredicateTable {
 public:
  std::int32_t query(int a, int b, SignTestCounter* counter = nullptr) const;

  int size_a() const { return na_; }
  int size_b() const { return nb_; }
  int max_depth() const { return max_depth_; }
  std::size_t node_count() const { return nodes_.size(); }
  std::uint64_t pruned_entries() const { return pruned_entries_; }
  std::uint64_t leaf_entries() const { return leaf_entries_; }

 private:
  friend struct HopcroftBuilder;
  struct Cell {
    std::vector<std::pair<int, std::int32_t>> pruned;  // other-side id -> payload
    int child = -1;
  };
  struct Node {
    bool dual = false;  // true: the B side was partitioned
    bool leaf = false;
    std::vector<int> part_ids;  // sorted ids of the partitioned side
    std::vector<int> part_cell; // parallel: cell index
    std::vector<Cell> cells;
    std::vector<int> leaf_a, leaf_b;      // sorted
    std::vector<std::int32_t> leaf_m;     // leaf_a-major
  };
  std::vector<Node> nodes_;
  int na_ = 0, nb_ = 0;
  int max_depth_ = 0;
  std::uint64_t pruned_entries_ = 0, leaf_entries_ = 0;

};

/// Generic engine entry: builds the full pair table over A x B.
/// When first_zero is non-null, the first pair (in deterministic traversal
/// order) whose payload is 0 is recorded there (untouched if none).
PredicateTable build_pair_table(const std::vector<std::vector<Rat>>& A,
                                const std::vector<std::vector<Rat>>& B,
                                const EngineCallbacks& callbacks, const EngineConfig& config,
                                SignTestCounter& counter,
                                std::pair<int, int>* first_zero = nullptr);

/// Compact encoding of sign(F(p, q)) for all pairs: the recursion tree over
/// the non-degenerate surfaces plus the list of q whose surface is all of
/// R^t (sign 0 against every p).
class SignMap {
 public:
  int num_p() const { return num_p_; }
  int num_q() const { return num_q_; }

  PredicateTable table;
  std::vector<int> q_to_table;  // -1 for zero surfaces
  int num_p_ = 0, num_q_ = 0;
};

/// sign(F(p, q)) read from the map; IndexOutOfRange on bad indices.
int sign_query(const SignMap& map, int p_index, int q_index, SignTestCounter* counter = nullptr);

struct IncidenceReport {
  bool yes = false;
  int witness_p = -1, witness_q = -1;
  SignMap signs;
  SignTestCounter counters;
  AuxCounts aux;
};

/// Theorem-6-style incidence detection with the full sign encoding.
IncidenceReport detect(const IncidenceQuery& query, const EngineConfig& config);

/// Exact main-term exponents (1 - (t-1)/(ts-1), 1 - (s-1)/(ts-1)).
std::pair<Rat, Rat> main_term_exponents(int t, int s);

/// Batch semi-algebraic predicate resolution: membership(point, param) is
/// constant wherever boundary(point, param) keeps its sign, so the engine
/// resolves one call per pruned (cell, param) pair and per leaf pair.
/// membership must count its own sign tests.
PredicateTable batch_predicates(const std::vector<std::vector<Rat>>& points,
                                const std::vector<std::vector<Rat>>& params,
                                const MultiPoly& boundary,
                                const std::function<bool(int, int)>& membership,
                                const EngineConfig& config, SignTestCounter& counter);

}  // namespace kpol

#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "kpol/counters.hpp"
#include "kpol/curves.hpp"
#include "kpol/multipoly.hpp"

namespace kpol {

enum class Ordering : int { Below = -1, Equal = 0, Above = 1 };

/// Interleaving of two ascending root lists, with exact ties. pattern entries:
/// 0 = next root comes from list A, 1 = from B, 2 = a tie consuming one root
/// of each. This is the payload the batched triple predicates resolve.
struct Interleave {
  std::uint8_t count_a = 0, count_b = 0;
  std::vector<std::uint8_t> pattern;
  bool operator==(const Interleave&) const = default;
};

Interleave interleave_roots(const std::vector<AlgebraicNumber>& a,
                            const std::vector<AlgebraicNumber>& b, SignTestCounter* counter);

/// Order of A-root i versus B-root j under an interleaving.
Ordering interleave_order(const Interleave& iv, int a_index, int b_index);

/// Hash-consing store so engine payloads are small integers.
class InterleaveStore {
 public:
  std::int32_t intern(const Interleave& iv);
  const Interleave& get(std::int32_t id) const { return items_.at(id); }

 private:
  std::vector<Interleave> items_;
  std::map<std::vector<std::uint8_t>, std::int32_t> index_;
};

/// Kinds of batched triple predicates: ordering two crossings along a common
/// base curve, and ordering a crossing against a third curve's critical
/// (arc-endpoint) x-values.
enum class TripleKind { Order, CritOrder };

/// Discrete per-arc intersection event.
struct ArcEvent {
  int other_arc = -1;
  int pair_k = 0;  // k-th meeting of the underlying curve pair
  bool tangency = false;
  int slab = 0;  // major slab the event falls into (index into endpoint groups)
  /// Same x as the previous event on this arc. Events in one tie block are
  /// processed as an unordered set by the sweep, which is what realizes
  /// multi-curve coincidences (several crossings through one point).
  bool tied_with_prev = false;
};

struct EndpointEvent {
  int arc = -1;
  bool is_start = false;
  int insert_pos = 0;  // vertical position at which the arc enters the order
};

/// The discrete encoding of the arrangement: vertical order at x = -infinity,
/// per-arc left-to-right event sequences tagged by pair rank, and the
/// x-sorted arc endpoint groups with insertion positions. No coordinates are
/// stored; everything downstream of this structure is coordinate-free.
struct OrderType {
  int num_arcs = 0;
  std::vector<int> at_minus_infinity;  // bottom to top
  std::vector<std::vector<ArcEvent>> per_arc;
  std::vector<std::vector<EndpointEvent>> endpoint_groups;

  OrderType relabeled(const std::vector<int>& perm) const;  // arc id permutation
};

/// Routing object for every discrete comparison the arrangement machinery
/// needs. Pair-level predicates (orders at a rational x, endpoint orders,
/// on-arc tests) are always computed exactly; triple-level predicates go
/// through the batched tables in Fredman mode. Every public call counts one
/// predicate; underlying sign tests and lookups land on `counters`.
class PredicateOracle {
 public:
  enum class Mode { Direct, Fredman };

  /// Lookup into the pre-resolved triple tables; returns the interleave of
  /// raw roots of Res_y(F_base, F_c1) against raw roots of Res_y(F_base, F_c2)
  /// (kind Order) or against curve c2's critical values (kind CritOrder).
  using FredmanLookup =
      std::function<const Interleave*(int base, int c1, int c2, TripleKind kind)>;

  PredicateOracle(std::vector<MultiPoly> curves, Mode mode, FredmanLookup lookup = nullptr);

  int num_curves() const { return static_cast<int>(curves_.size()); }
  int num_arcs() const { return static_cast<int>(arc_curve_.size()); }
  int curve_of_arc(int arc) const { return arc_curve_.at(arc); }
  const CurveArc& arc(int id) const;
  const CurveAnalysis& curve_analysis(int curve) const { return analyses_.at(curve); }
  /// Curves found identical (as zero sets) to an earlier one; their arcs are
  /// not materialized and queries resolve against the representative.
  int representative(int curve) const { return alias_.at(curve); }

  const PairAnalysis& pair(int ci, int cj);

  // --- construction-time predicates -------------------------------------
  Ordering minus_inf_order(int arc_i, int arc_j);
  Ordering tip_order(int starting_arc, int alive_arc);
  Ordering endpoint_order(int arc_i, bool end_i, int arc_j, bool end_j);
  Ordering event_order(int base_arc, const ArcEvent& e1, const ArcEvent& e2);
  /// event x versus the endpoint x of arc3 (its start or end).
  Ordering event_vs_endpoint(int base_arc, const ArcEvent& e, int arc3, bool end3);

  // --- query-time predicates ---------------------------------------------
  /// -1: the query point lies below the arc, 0: on it, +1: above it.
  int point_vs_arc(const Rat& qx, const Rat& qy, int arc);
  Ordering x_vs_event(const Rat& qx, int arc_lo, int arc_hi, int pair_k);
  Ordering x_vs_arc_endpoint(const Rat& qx, int arc, bool end);
  Ordering x_vs_vertical(const Rat& qx, int vertical);

  int num_verticals() const { return static_cast<int>(verticals_.size()); }
  int vertical_curve(int vertical) const { return verticals_.at(vertical).curve; }

  SignTestCounter counters;
  std::uint64_t predicates = 0;

 private:
  struct CellPair {
    PairAnalysis analysis;
    std::vector<int> arc_a, arc_b;  // per meeting, global arc ids (-1 at tips)
    Rat left_sample;                // rational point left of every pair event
    bool left_sample_ready = false;
  };
  struct VerticalLine {
    int curve;
    AlgebraicNumber x;
  };

  CellPair& pair_data(int ci, int cj);
  const AlgebraicNumber& meeting_x(int arc_lo, int arc_hi, int pair_k);
  Rat pair_left_sample(int ci, int cj);
  Ordering order_at_sample(int arc_i, int arc_j, const Rat& x);

  Mode mode_;
  FredmanLookup lookup_;
  std::vector<MultiPoly> curves_;
  std::vector<int> alias_;
  std::vector<CurveAnalysis> analyses_;
  std::vector<int> arc_curve_;            // global arc id -> curve
  std::vector<int> arc_local_;            // global arc id -> index in analysis.arcs
  std::vector<std::vector<int>> arc_ids_; // per curve, local arc -> global id
  std::vector<VerticalLine> verticals_;
  std::map<std::pair<int, int>, CellPair> pairs_;

  friend OrderType build_order_type(PredicateOracle& oracle);
};

/// Computes the full discrete encoding, using only oracle predicates.
OrderType build_order_type(PredicateOracle& oracle);

/// Point-location structure over the levels of the arrangement.
struct LevelStructure {
  struct Vertex {
    int arc_lo = -1, arc_hi = -1;  // arc_lo < arc_hi
    int pair_k = 0;
  };
  struct LevelSlab {
    int slab = 0;
    int start_occupant = -1;
    std::vector<std::pair<Vertex, int>> steps;  // vertex, occupant after it
  };
  int num_arcs = 0;
  int num_groups = 0;
  std::vector<std::vector<LevelSlab>> levels;       // levels[l], sorted by slab
  std::vector<int> alive_count;                     // per slab (num_groups + 1)
  std::vector<std::pair<int, bool>> group_rep;      // (arc, is_start) per group
};

/// Pure sweep over the discrete event data; performs no sign tests at all
/// (InconsistentOrderType when the event sequences cannot be realized).
LevelStructure build_pointloc(const OrderType& order_type);

struct LocateResult {
  enum class Kind { AboveAll, Face, On };
  Kind kind = Kind::AboveAll;
  int on_arc = -1;           // when On (arc id), or
  int on_vertical = -1;      // when On via a vertical line (vertical index)
  int below_level = -1, above_level = -1, slab = 0;  // when Face
  /// The query abscissa coincides with an arc endpoint; face labels are
  /// ambiguous there (on-detection stays exact).
  bool at_slab_boundary = false;
  std::uint64_t predicates = 0;  // oracle calls spent on this query
};

/// O(log^2) point location: binary search over levels, with a secondary
/// binary search over each level's vertex x-sequence, all through oracle
/// predicates.
LocateResult locate(const LevelStructure& structure, const Rat& qx, const Rat& qy,
                    PredicateOracle& oracle);

/// Independent reference: scans every arc directly. Used to validate locate.
LocateResult locate_by_scan(PredicateOracle& oracle, const Rat& qx, const Rat& qy);

/// Occupant arc of `level` within `slab` at abscissa qx (diagnostic aid).
int occupant_at(const LevelStructure& structure, int level, int slab, const Rat& qx,
                PredicateOracle& oracle);

}  // namespace kpol

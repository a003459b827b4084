#pragma once

#include <functional>
#include <string>

#include "kpol/arrangement.hpp"
#include "kpol/baselines.hpp"
#include "kpol/hopcroft.hpp"
#include "kpol/instance.hpp"
#include "kpol/partition.hpp"

namespace kpol {

/// Configuration of the decision-tree solvers. g = 0 derives the block size
/// from balance_block_size; Direct evaluates every triple predicate on
/// demand (each counted), Fredman pre-resolves them in batch through the
/// incidence engine and serves them as uncounted lookups.
struct AdtConfig {
  long g = 0;
  enum class Mode { Direct, Fredman } mode = Mode::Fredman;
  EngineConfig engine;
};

/// Block-size exponent balancing the query and preprocessing phases:
/// 3/8 for k = 4 and 13/59 for k = 5 (UnsupportedK otherwise).
Rat balance_block_size(int k);

/// Generic balancer for n^a / g^b = n^c * g^d: the exponent (a-c)/(b+d).
Rat balance_block_size(const Rat& a, const Rat& b, const Rat& c, const Rat& d);

/// Concrete block size for an instance of nominal size n.
long derived_block_size(int k, long n);

/// Boundary certificate for the batched triple predicates of one polynomial
/// family: the x-coefficients of R_1j = Res_y(F(x,y,p_1), F(x,y,p_j)) and of
/// the third curve's critical polynomial, all in the engine's variable order
/// (points first, then parameters). The zero set of the product of
///   Res_x(R_12, R_13), disc_x(R_12), disc_x(R_13), lc_x(R_12), lc_x(R_13)
/// contains every locus where an interleaving answer can change; the factors
/// are kept unexpanded and evaluated through interval Sylvester minors.
struct HBoundary {
  int point_dims = 0, param_dims = 0;
  std::vector<MultiPoly> r12_coeffs;  // index = power of x
  std::vector<MultiPoly> r13_coeffs;  // second pair (Order) or criticals (CritOrder)
  bool degenerate = false;            // Res_x(R12, R13) vanishes identically

  /// The explicit product polynomial (small families only; for tests).
  MultiPoly product() const;
  /// Conservative test: false only when no factor can vanish on the box.
  bool may_vanish(const std::vector<RatInterval>& box, SignTestCounter* counter) const;
  bool may_vanish_fast(const std::vector<DInterval>& box) const;
};

/// Builds the boundary certificate for curves gamma_p = {F(x, y, p) = 0},
/// p the trailing parameter block of F. UnsupportedDegree when the curve
/// variables exceed total degree 3.
HBoundary build_H_boundary(const MultiPoly& F, TripleKind kind);

/// Pre-resolved triple predicates plus the pair-level bookkeeping of one
/// solve: the two engine tables (meeting order and meeting-vs-endpoint) and
/// the interned interleavings they point at.
struct PredicateTables {
  InterleaveStore store;
  PredicateTable order;
  PredicateTable crit;
  std::vector<std::vector<Rat>> point_triples;   // c-triples
  std::vector<std::vector<Rat>> param_tuples;    // d-triples / (d,e)-6-tuples
};

/// Decision-tree solvers for k = 4 and k = 5. Counters are split by phase in
/// aux: "phase_pairs", "phase_minusinf" (within construction), "phase_batch",
/// "phase_query", plus "crossed_boxes_max"/"crossed_boxes_total".
SolveResult solve_4pol(const KPolInstance& instance, const AdtConfig& config);
SolveResult solve_5pol(const KPolInstance& instance, const AdtConfig& config);

/// Per-phase breakdown of an ADT run, CSV-ish text.
std::string count_report(const SolveResult& result);

}  // namespace kpol

#pragma once

#include <cstdint>
#include <map>
#include <string>

namespace kpol {

/// Decision-tree cost ledger. `sign_tests` counts exact sign evaluations of
/// constant-degree polynomials in input-derived numbers (every bisection or
/// refinement step that inspects such a sign counts individually), `lookups`
/// counts reads of pre-resolved predicate tables, and `ram_ops` approximates
/// the uncounted bookkeeping work. All fields are monotone; counters merge by
/// addition.
struct SignTestCounter {
  std::uint64_t sign_tests = 0;
  std::uint64_t lookups = 0;
  std::uint64_t ram_ops = 0;

  void merge(const SignTestCounter& other) {
    sign_tests += other.sign_tests;
    lookups += other.lookups;
    ram_ops += other.ram_ops;
  }
};

/// Solver-specific auxiliary tallies (substitution counts, partial sums,
/// crossed boxes, per-phase splits). Kept separate from the model-level
/// counter so the CSV schema stays fixed.
using AuxCounts = std::map<std::string, std::uint64_t>;

}  // namespace kpol

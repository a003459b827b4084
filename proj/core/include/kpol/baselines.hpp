#pragma once

#include <optional>
#include <string>

#include "kpol/counters.hpp"
#include "kpol/instance.hpp"
#include "kpol/multipoly.hpp"

namespace kpol {

struct SolveResult {
  bool yes = false;
  std::optional<Witness> witness;
  SignTestCounter counters;
  AuxCounts aux;

  std::string csv_fields(const std::string& solver) const;
};

/// Exhaustive oracle: tries all tuples in lexicographic order (set-major,
/// values ascending) and reports the first witness, which is therefore the
/// lexicographically smallest one.
SolveResult brute_force(const KPolInstance& instance);

/// The elementary algorithm: substitute every (k-1)-prefix, isolate the real
/// roots of the remaining univariate polynomial and search A_k inside the
/// isolating intervals with exact confirmation. All prod |A_i| (i < k)
/// substitutions are performed unconditionally so the substitution counter is
/// an exact identity.
SolveResult naive_solve(const KPolInstance& instance);

/// Meet-in-the-middle for F = x1 + ... + xk (NotPlainSum otherwise).
SolveResult mitm_ksum(const KPolInstance& instance);

/// Separable split F = G(F1(x_1..x_t), F2(x_(t+1)..x_k)). F1 and F2 share
/// F's arity but may only use their own variable block; G is bivariate.
struct SeparableSplit {
  int t = 0;
  MultiPoly F1, F2;  // arity k
  MultiPoly G;       // arity 2
};

/// Meet-in-the-middle over u = F1(left), v = F2(right); the split is checked
/// symbolically (SplitMismatch when G(F1,F2) != F).
SolveResult mitm_separable(const KPolInstance& instance, const SeparableSplit& split);

}  // namespace kpol

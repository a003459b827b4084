#pragma once

#include "kpol/baselines.hpp"
#include "kpol/hopcroft.hpp"
#include "kpol/instance.hpp"

namespace kpol {

/// Variable split t + s = k with 1 <= t <= s.
struct DimSplit {
  int t = 0, s = 0;
};

/// Even k: (k/2, k/2); odd k: ((k-1)/2, (k+1)/2). KTooSmall below 3.
DimSplit split_dims(int k);

/// Exact main-term exponent k - 2 + (k-2)/(st-1) of the real-RAM solver.
Rat kpol_exponent(int k);

/// Splits the variables, materializes P = A_1 x ... x A_t and
/// Q = A_(t+1) x ... x A_k, and runs the incidence engine.
SolveResult kpol_solve(const KPolInstance& instance, const EngineConfig& config = {});

}  // namespace kpol

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "kpol/multipoly.hpp"
#include "kpol/rat.hpp"

namespace kpol {

/// A k-tuple of values, one per set, on which F vanishes exactly.
struct Witness {
  std::vector<Rat> tuple;
  bool operator==(const Witness&) const = default;
};

/// A degeneracy-testing instance: k sorted value sets and a k-variate
/// polynomial. Values are kept with duplicates; witnesses are reported by
/// value, not by position.
struct KPolInstance {
  int k = 0;
  std::vector<std::vector<Rat>> sets;  // each sorted ascending
  MultiPoly F;                         // arity k
  std::uint64_t seed = 0;
  std::string family;

  bool is_witness(const Witness& w) const;
  void validate() const;  // invariants: arity, sortedness, k >= 2
};

/// Curves x_j = f_{i,j}(t) in R^d, one per set.
struct CurveFamily {
  int d = 0;
  int k = 0;
  std::vector<std::vector<MultiPoly>> params;  // params[i][j] = f_{i,j}, arity 1
};

/// Deterministic random instance. Values are integers in
/// [value_lo, value_hi]; F is sparse, has total degree <= degree_bound, and
/// depends on every variable.
KPolInstance generate_random(int k, int n, int degree_bound, long coeff_lo, long coeff_hi,
                             long value_lo, long value_hi, std::uint64_t seed);

/// Turns an instance whose F is linear in x_k into a guaranteed YES instance
/// by inserting the root completing a randomly drawn prefix into A_k.
KPolInstance plant_solution(const KPolInstance& instance, std::uint64_t seed);

/// Constrained affine degeneracy testing -> k-POL: F is the symbolic
/// (d+1)x(d+1) collinearity determinant over the parameterized curves.
/// Requires family.k == d + 1.
KPolInstance affine_reduce(const CurveFamily& family,
                           const std::vector<std::vector<Rat>>& param_sets);

/// Seeded random rational linear map R^d -> R^target_dim (identity when
/// target_dim == d). Linearity keeps every affinely dependent subset
/// dependent; genericity is seeded, not certified.
std::vector<std::vector<Rat>> generic_project(const std::vector<std::vector<Rat>>& points,
                                              int target_dim, std::uint64_t seed);

void save_instance(const KPolInstance& instance, const std::string& path);
KPolInstance load_instance(const std::string& path);
std::string instance_to_json(const KPolInstance& instance);
KPolInstance instance_from_json(const std::string& text);

/// Named polynomial families used by the CLI and the test corpora.
/// "ksum": x1+...+xk; "hyper" (k=4): x1 x2 + x3 + x4;
/// "circle" (k=4): (x1-x3)^2 + (x2-x4)^2 - 1;
/// "circle5" (k=5): (x1-x3)^2 + (x2-x4)^2 - x5^2.
MultiPoly family_poly(const std::string& family, int k);

/// Instance with the named F and random integer sets; family "random" draws
/// F from generate_random, "planted" additionally plants a solution.
KPolInstance make_family_instance(const std::string& family, int k, int n, std::uint64_t seed,
                                  long value_lo, long value_hi);

/// The worked curve family from the reduction figure: three plane curves
/// t -> (t, t^2/5 + 2), (t, t^3/5), (t, 2t - 4).
CurveFamily figure_curves();

}  // namespace kpol

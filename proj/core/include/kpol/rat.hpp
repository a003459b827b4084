#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace kpol {

/// Exact rational number. mpq_class keeps values canonical (reduced, positive
/// denominator) through all arithmetic, which is exactly the invariant the
/// rest of the library relies on.
using Rat = mpq_class;

inline int sign_of(const Rat& x) { return sgn(x); }

/// Canonicalizing fraction constructor (mpq_class(n, d) alone does not reduce).
inline Rat make_rat(long num, long den) {
  Rat r(num, den);
  r.canonicalize();
  return r;
}

Rat rat_abs(const Rat& x);

/// Largest integer <= x, as a Rat.
Rat rat_floor(const Rat& x);

/// Parses the canonical text form: `p` for integers, `p/q` with gcd(p,q)=1 and
/// q >= 2 otherwise. Anything else (unreduced, q <= 1 written explicitly,
/// signs on the denominator, whitespace) raises ParseError.
Rat parse_rat(std::string_view text);

/// Canonical text form, the exact inverse of parse_rat.
std::string rat_to_string(const Rat& x);

std::string rat_vec_to_string(const std::vector<Rat>& xs);

/// Deterministic splitmix64-based generator. Distribution code is written out
/// here so that seeded artifacts are byte-identical across platforms and
/// standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next();
  /// Uniform in [0, bound), bound >= 1.
  std::uint64_t below(std::uint64_t bound);
  /// Uniform integer in [lo, hi] inclusive.
  long int_in(long lo, long hi);

 private:
  std::uint64_t state_;
};

}  // namespace kpol

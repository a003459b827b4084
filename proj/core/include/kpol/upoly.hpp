#pragma once

#include <utility>
#include <vector>

#include "kpol/rat.hpp"

namespace kpol {

/// Dense univariate polynomial over Rat; coefficient of x^i lives at index i.
/// The zero polynomial is the empty vector. Every function below keeps its
/// results normalized (no trailing zero coefficients).
using QPoly = std::vector<Rat>;

namespace up {

void normalize(QPoly& p);
int degree(const QPoly& p);  // -1 for the zero polynomial
bool is_zero(const QPoly& p);
const Rat& lead(const QPoly& p);

QPoly constant(const Rat& c);
QPoly from_coeffs(std::vector<Rat> coeffs);

QPoly add(const QPoly& a, const QPoly& b);
QPoly sub(const QPoly& a, const QPoly& b);
QPoly mul(const QPoly& a, const QPoly& b);
QPoly neg(QPoly a);
QPoly scale(QPoly a, const Rat& c);
QPoly derivative(const QPoly& p);

Rat eval(const QPoly& p, const Rat& x);
int sign_at(const QPoly& p, const Rat& x);

/// Euclidean division over the field Q; b must be nonzero.
std::pair<QPoly, QPoly> divrem(const QPoly& a, const QPoly& b);

/// Monic gcd over Q; gcd(0,0) = 0.
QPoly gcd(const QPoly& a, const QPoly& b);

/// p with all repeated factors collapsed: p / gcd(p, p'), made monic.
QPoly squarefree_part(const QPoly& p);

/// Clears denominators and divides by the integer content; sign of the
/// leading coefficient is preserved. Cheap insurance is not the point here:
/// Sturm chains stay much smaller on primitive integer inputs.
QPoly primitive_part(const QPoly& p);

/// Standard Sturm chain of the squarefree part of p.
std::vector<QPoly> sturm_chain(const QPoly& p);

int sign_variations_at(const std::vector<QPoly>& chain, const Rat& x);
int sign_variations_at_neg_inf(const std::vector<QPoly>& chain);
int sign_variations_at_pos_inf(const std::vector<QPoly>& chain);

/// Number of distinct real roots in the half-open interval (lo, hi]. With the
/// zero-skip variation convention V is right-continuous, so the count is
/// exact even when an endpoint is itself a root.
int count_roots_halfopen(const std::vector<QPoly>& chain, const Rat& lo, const Rat& hi);

int count_real_roots(const std::vector<QPoly>& chain);

/// Cauchy bound: all real roots of p lie in (-B, B), B = 1 + max|c_i|/|lead|.
Rat cauchy_bound(const QPoly& p);

std::string to_string(const QPoly& p);  // debugging aid, x as the variable

}  // namespace up
}  // namespace kpol

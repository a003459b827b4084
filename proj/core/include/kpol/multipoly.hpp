#pragma once

#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "kpol/rat.hpp"
#include "kpol/upoly.hpp"

namespace kpol {

/// Sparse multivariate polynomial with exact rational coefficients and a
/// fixed arity. No zero coefficients are ever stored; the zero polynomial is
/// the empty term map and reports total_degree() == -1 (the degree sentinel).
///
/// Variables are 0-indexed internally; the external text form uses x1..xk.
class MultiPoly {
 public:
  using Exponents = std::vector<unsigned>;
  using TermMap = std::map<Exponents, Rat>;

  explicit MultiPoly(int arity = 0);

  static MultiPoly zero(int arity);
  static MultiPoly constant(int arity, const Rat& c);
  static MultiPoly variable(int arity, int var);

  int arity() const { return arity_; }
  bool is_zero() const { return terms_.empty(); }
  int total_degree() const;  // -1 for the zero polynomial
  int degree_in(int var) const;
  const TermMap& terms() const { return terms_; }
  bool is_constant() const;
  Rat constant_value() const;  // requires is_constant()

  void add_term(const Exponents& exps, const Rat& coeff);

  MultiPoly operator-() const;
  MultiPoly operator+(const MultiPoly& rhs) const;
  MultiPoly operator-(const MultiPoly& rhs) const;
  MultiPoly operator*(const MultiPoly& rhs) const;
  MultiPoly scaled(const Rat& c) const;
  MultiPoly pow(unsigned e) const;
  bool operator==(const MultiPoly& rhs) const = default;

  /// Exact value at a full point; point.size() must equal arity.
  Rat eval(std::span<const Rat> point) const;

  /// Fixes a subset of variables to rational values. The result keeps the
  /// same arity with the substituted variables no longer occurring.
  MultiPoly substitute(const std::map<int, Rat>& assignment) const;

  /// Substitutes every variable by a polynomial (all of the same arity).
  MultiPoly compose(const std::vector<MultiPoly>& values) const;

  MultiPoly derivative(int var) const;

  /// Coefficients of var^0, var^1, ... as polynomials of the same arity in
  /// which var no longer occurs. Empty vector for the zero polynomial.
  std::vector<MultiPoly> coeffs_in(int var) const;

  /// Renames variable i to perm[i] in a polynomial of the given new arity.
  MultiPoly relabeled(const std::vector<int>& perm, int new_arity) const;

  bool depends_on(int var) const { return degree_in(var) > 0; }

  /// Dense univariate view; requires that no variable other than var occurs.
  QPoly to_qpoly(int var) const;
  static MultiPoly from_qpoly(const QPoly& p, int arity, int var);

  std::string to_string() const;

 private:
  int arity_;
  TermMap terms_;
};

/// Sylvester resultant of P and Q with respect to var. Both zero -> BothZero;
/// exactly one zero -> the zero polynomial; both constant in var -> 1.
MultiPoly resultant(const MultiPoly& P, const MultiPoly& Q, int var);

/// Parses the canonical term-list form, e.g. "2 * x1^2 x3^1 - 1/2 * x2^1 + 7".
MultiPoly parse_poly(std::string_view text, int arity);

}  // namespace kpol

#include <vector>

#include "doctest.h"
#include "kpol/algebraic.hpp"
#include "kpol/errors.hpp"
#include "kpol/interval.hpp"
#include "kpol/multipoly.hpp"
#include "kpol/rat.hpp"
#include "kpol/upoly.hpp"

using namespace kpol;

namespace {

MultiPoly P(const char* text, int arity) { return parse_poly(text, arity); }

Rat Q(const char* text) { return parse_rat(text); }

std::vector<Rat> pt(std::initializer_list<long> xs) {
  std::vector<Rat> v;
  for (long x : xs) v.emplace_back(x);
  return v;
}

MultiPoly random_poly(Rng& rng, int arity, int max_deg, long coeff_lo, long coeff_hi) {
  MultiPoly p(arity);
  int terms = 1 + static_cast<int>(rng.below(6));
  for (int t = 0; t < terms; ++t) {
    MultiPoly::Exponents e(arity, 0);
    int budget = static_cast<int>(rng.below(max_deg + 1));
    for (int b = 0; b < budget; ++b) e[rng.below(arity)] += 1;
    long c = rng.int_in(coeff_lo, coeff_hi);
    p.add_term(e, Rat(c));
  }
  return p;
}

}  // namespace

TEST_CASE("rational parsing is strict about canonical form") {
  CHECK(parse_rat("0") == 0);
  CHECK(parse_rat("-7") == -7);
  CHECK(parse_rat("22/7") == Rat(22, 7));
  CHECK(rat_to_string(Rat(-3, 2)) == "-3/2");
  CHECK(rat_to_string(Rat(5)) == "5");
  CHECK_THROWS_AS(parse_rat("2/4"), ParseError);
  CHECK_THROWS_AS(parse_rat("5/1"), ParseError);
  CHECK_THROWS_AS(parse_rat("1/-2"), ParseError);
  CHECK_THROWS_AS(parse_rat("+3"), ParseError);
  CHECK_THROWS_AS(parse_rat("03"), ParseError);
  CHECK_THROWS_AS(parse_rat(""), ParseError);
}

TEST_CASE("poly evaluation, spec values") {
  // F(p1, p2, q1, q2) = p1 q1 + p2 - q2
  auto F = P("1 * x1^1 x3^1 + 1 * x2^1 - 1 * x4^1", 4);
  CHECK(F.eval(pt({1, 2, 3, 5})) == 0);

  CHECK(MultiPoly::zero(3).eval(pt({4, 5, 6})) == 0);

  // circle w^2 + z^2 = 1 at the Pythagorean point (3/5, 4/5)
  auto circ = P("1 * x1^2 + 1 * x2^2 - 1", 2);
  std::vector<Rat> zw = {Q("3/5"), Q("4/5")};
  CHECK(circ.eval(zw) == 0);

  CHECK_THROWS_AS(F.eval(pt({1, 2, 3})), ArityMismatch);
}

TEST_CASE("substitute") {
  auto F = P("1 * x1^1 + 1 * x2^1 + 1 * x3^1 + 1 * x4^1", 4);
  auto G = F.substitute({{2, Rat(1)}, {3, Rat(2)}});
  CHECK(G == P("1 * x1^1 + 1 * x2^1 + 3", 4));

  // full substitution agrees with eval
  auto H = P("2 * x1^2 x2^1 - 1 * x3^1", 3);
  auto full = H.substitute({{0, Rat(2)}, {1, Rat(3)}, {2, Rat(5)}});
  CHECK(full.is_constant());
  CHECK(full.constant_value() == H.eval(pt({2, 3, 5})));

  // annihilated term
  auto K = P("1 * x1^1 x2^1 + 1 * x3^1", 3);
  CHECK(K.substitute({{0, Rat(0)}}) == P("1 * x3^1", 3));
  CHECK(K.substitute({{0, Rat(0)}}).is_zero() == false);

  auto Z = P("1 * x1^1 - 1 * x1^1", 1);
  CHECK(Z.is_zero());
}

TEST_CASE("polynomial text form round trips") {
  Rng rng(2024);
  for (int i = 0; i < 200; ++i) {
    int arity = 1 + static_cast<int>(rng.below(5));
    auto p = random_poly(rng, arity, 4, -9, 9);
    CHECK(parse_poly(p.to_string(), arity) == p);
  }
  CHECK(parse_poly("0", 3).is_zero());
  CHECK_THROWS_AS(parse_poly("1 * x5^1", 3), ParseError);
  CHECK_THROWS_AS(parse_poly("1 * x1^0", 3), ParseError);
  CHECK_THROWS_AS(parse_poly("2/4 * x1^1", 3), ParseError);
}

TEST_CASE("resultant, spec values") {
  // Res_y(y - x, y + x) = 2x
  auto A = P("1 * x2^1 - 1 * x1^1", 2);
  auto B = P("1 * x2^1 + 1 * x1^1", 2);
  CHECK(resultant(A, B, 1) == P("2 * x1^1", 2));

  // Res_y(y^2 + x^2 - 1, y - x) = 2x^2 - 1
  auto C = P("1 * x2^2 + 1 * x1^2 - 1", 2);
  auto D = P("1 * x2^1 - 1 * x1^1", 2);
  CHECK(resultant(C, D, 1) == P("2 * x1^2 - 1", 2));

  // Res_y(P, c) = c^deg_y(P)
  auto E = P("1 * x2^3 + 1 * x1^1 x2^1 + 1", 2);
  CHECK(resultant(E, MultiPoly::constant(2, Rat(5)), 1) == MultiPoly::constant(2, Rat(125)));

  CHECK_THROWS_AS(resultant(MultiPoly::zero(2), MultiPoly::zero(2), 1), BothZero);
}

TEST_CASE("resultant shared-root property") {
  Rng rng(77);
  int planted_hits = 0;
  for (int trial = 0; trial < 120; ++trial) {
    MultiPoly p(2), q(2);
    bool plant = trial % 2 == 0;
    Rat x0(rng.int_in(-4, 4)), c(rng.int_in(-4, 4));
    if (plant) {
      // share the root y = c exactly at x = x0
      auto share = P("1 * x2^1", 2) - MultiPoly::constant(2, c);
      auto xoff = P("1 * x1^1", 2) - MultiPoly::constant(2, x0);
      p = share * random_poly(rng, 2, 2, -3, 3) + xoff * random_poly(rng, 2, 2, -3, 3);
      q = share * random_poly(rng, 2, 2, -3, 3) + xoff * random_poly(rng, 2, 2, -3, 3);
    } else {
      p = random_poly(rng, 2, 3, -5, 5);
      q = random_poly(rng, 2, 3, -5, 5);
    }
    if (p.degree_in(1) < 1 || q.degree_in(1) < 1) continue;
    auto res = resultant(p, q, 1);
    for (long g = -5; g <= 5; ++g) {
      Rat xg(g);
      QPoly pu = p.substitute({{0, xg}}).to_qpoly(1);
      QPoly qu = q.substitute({{0, xg}}).to_qpoly(1);
      if (up::is_zero(pu) || up::is_zero(qu)) continue;
      QPoly gcd = up::gcd(pu, qu);
      if (up::degree(gcd) >= 1) {
        CHECK(res.substitute({{0, xg}}).constant_value() == 0);
        if (plant && xg == x0) ++planted_hits;
      }
    }
  }
  CHECK(planted_hits > 20);  // the planted cases actually exercised the check
}

TEST_CASE("root isolation, spec values") {
  QPoly x2m2 = {Rat(-2), Rat(0), Rat(1)};  // x^2 - 2
  auto roots = isolate_real_roots(x2m2);
  REQUIRE(roots.size() == 2);
  for (const auto& r : roots) {
    CHECK(sturm_count(x2m2, r.lo(), r.hi()) == 1);
    CHECK(sign_at_algebraic(x2m2, r) == 0);
  }
  CHECK(compare(roots[0], Rat(0)) == -1);
  CHECK(compare(roots[1], Rat(0)) == +1);
  CHECK(compare(roots[0], roots[1]) == -1);

  QPoly x2p1 = {Rat(1), Rat(0), Rat(1)};  // x^2 + 1
  CHECK(isolate_real_roots(x2p1).empty());

  QPoly quad = {Rat(2), Rat(-3), Rat(1)};  // x^2 - 3x + 2 = (x-1)(x-2)
  auto qr = isolate_real_roots(quad);
  REQUIRE(qr.size() == 2);
  CHECK(up::eval(quad, Rat(1)) == 0);
  CHECK(up::eval(quad, Rat(2)) == 0);
  CHECK(compare(qr[0], Rat(1)) == 0);
  CHECK(compare(qr[1], Rat(2)) == 0);

  CHECK_THROWS_AS(isolate_real_roots(QPoly{}), ZeroPolynomial);
}

TEST_CASE("sturm_count, spec values") {
  QPoly p = {Rat(-2), Rat(0), Rat(1)};  // x^2 - 2
  CHECK(sturm_count(p) == 2);
  CHECK(sturm_count_above(p, Rat(0)) == 1);
  CHECK(sturm_count(p, Rat(2), Rat(3)) == 0);
  CHECK_THROWS_AS(sturm_count(QPoly{}), ZeroPolynomial);
}

TEST_CASE("compare, spec values") {
  QPoly x2m2 = {Rat(-2), Rat(0), Rat(1)};
  auto sqrt2 = isolate_real_roots(x2m2)[1];
  CHECK(compare(sqrt2, Q("3/2")) == -1);  // sqrt(2) < 3/2 since 2 < 9/4

  QPoly xm1 = {Rat(-1), Rat(1)};
  auto one = isolate_real_roots(xm1)[0];
  CHECK(compare(one, Rat(1)) == 0);

  QPoly x2m3 = {Rat(-3), Rat(0), Rat(1)};
  auto sqrt3 = isolate_real_roots(x2m3)[1];
  CHECK(compare(sqrt2, sqrt3) == -1);
  CHECK(compare(sqrt3, sqrt2) == +1);
  CHECK(compare(sqrt2, sqrt2) == 0);
}

TEST_CASE("interval_eval, spec values") {
  auto circ = P("1 * x1^2 + 1 * x2^2 - 1", 2);
  std::vector<RatInterval> small_box = {RatInterval(Rat(0), Q("1/2")), RatInterval(Rat(0), Q("1/2"))};
  auto enc = interval_eval(circ, small_box);
  CHECK(enc.lo >= Rat(-1));
  CHECK(enc.hi <= Q("-1/2"));
  CHECK(!enc.contains_zero());

  std::vector<RatInterval> unit_box = {RatInterval(Rat(0), Rat(1)), RatInterval(Rat(0), Rat(1))};
  CHECK(interval_eval(circ, unit_box).contains_zero());

  auto five = MultiPoly::constant(3, Rat(5));
  std::vector<RatInterval> anybox = {RatInterval(Rat(-9), Rat(4)), RatInterval(Rat(0), Rat(0)),
                                     RatInterval(Rat(1), Rat(2))};
  auto c5 = interval_eval(five, anybox);
  CHECK(c5.lo == 5);
  CHECK(c5.hi == 5);

  CHECK_THROWS_AS(interval_eval(circ, anybox), ArityMismatch);
}

TEST_CASE("root_bound, spec values") {
  CHECK(root_bound(QPoly{Rat(-2), Rat(0), Rat(1)}) == 3);
  CHECK(root_bound(QPoly{Rat(0), Rat(1)}) == 1);
  CHECK(root_bound(QPoly{Rat(-8), Rat(0), Rat(2)}) == 5);
}

// --- module invariants ------------------------------------------------------

TEST_CASE("isolation property: 1000 random polynomials") {
  Rng rng(424242);
  for (int trial = 0; trial < 1000; ++trial) {
    int deg = 1 + static_cast<int>(rng.below(6));
    QPoly p(deg + 1);
    for (int i = 0; i <= deg; ++i) p[i] = Rat(rng.int_in(-50, 50));
    up::normalize(p);
    if (up::is_zero(p)) continue;
    auto roots = isolate_real_roots(p);
    CHECK(static_cast<int>(roots.size()) == sturm_count(p));
    for (std::size_t i = 0; i < roots.size(); ++i) {
      CHECK(sturm_count(p, roots[i].lo(), roots[i].hi()) == 1);
      if (i > 0) CHECK(roots[i - 1].hi() <= roots[i].lo());
    }
  }
}

TEST_CASE("compare is a total order on a pool of algebraic numbers") {
  Rng rng(99);
  std::vector<AlgebraicNumber> pool;
  while (pool.size() < 50) {
    int deg = 1 + static_cast<int>(rng.below(4));
    QPoly p(deg + 1);
    for (int i = 0; i <= deg; ++i) p[i] = Rat(rng.int_in(-10, 10));
    up::normalize(p);
    if (up::is_zero(p)) continue;
    for (auto& r : isolate_real_roots(p)) {
      pool.push_back(r);
      if (pool.size() == 50) break;
    }
  }
  const int n = static_cast<int>(pool.size());
  std::vector<std::vector<int>> cmp(n, std::vector<int>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) cmp[i][j] = compare(pool[i], pool[j]);
  for (int i = 0; i < n; ++i) {
    CHECK(cmp[i][i] == 0);
    for (int j = 0; j < n; ++j) CHECK(cmp[i][j] == -cmp[j][i]);
  }
  // transitivity on all triples, via the equivalence with a sortable key:
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        if (cmp[i][j] <= 0 && cmp[j][k] <= 0) CHECK(cmp[i][k] <= 0);
}

TEST_CASE("interval_eval soundness on random boxes") {
  Rng rng(31337);
  for (int trial = 0; trial < 1000; ++trial) {
    int arity = 1 + static_cast<int>(rng.below(4));
    auto F = random_poly(rng, arity, 4, -20, 20);
    std::vector<RatInterval> box;
    std::vector<Rat> sample;
    for (int i = 0; i < arity; ++i) {
      Rat a(rng.int_in(-8, 8)), w(rng.int_in(0, 5));
      box.emplace_back(a, a + w);
      // a rational sample point inside the box
      Rat t = make_rat(rng.int_in(0, 16), 16);
      sample.push_back(a + t * w);
    }
    auto enc = interval_eval(F, box);
    Rat v = F.eval(sample);
    CHECK(enc.lo <= v);
    CHECK(v <= enc.hi);
  }
}

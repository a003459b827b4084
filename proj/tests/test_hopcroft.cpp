#include <cmath>

#include "doctest.h"
#include "kpol/baselines.hpp"
#include "kpol/errors.hpp"
#include "kpol/hopcroft.hpp"
#include "kpol/instance.hpp"
#include "kpol/kpol_solver.hpp"

using namespace kpol;

namespace {

IncidenceQuery random_query(Rng& rng, int t, int s, int n_points, int m_points, int degree,
                            bool product_structured) {
  IncidenceQuery q;
  q.t = t;
  q.s = s;
  MultiPoly F(t + s);
  int terms = 2 + static_cast<int>(rng.below(4));
  for (int i = 0; i < terms; ++i) {
    MultiPoly::Exponents e(t + s, 0);
    int budget = 1 + static_cast<int>(rng.below(degree));
    for (int b = 0; b < budget; ++b) e[rng.below(t + s)] += 1;
    F.add_term(e, Rat(rng.int_in(-4, 4)));
  }
  if (F.is_zero()) F = MultiPoly::variable(t + s, 0);
  q.F = F;
  auto fill = [&](int dim, int count) {
    std::vector<std::vector<Rat>> pts;
    if (product_structured) {
      int side = std::max(1, static_cast<int>(std::lround(std::pow(count, 1.0 / dim))));
      std::vector<std::vector<Rat>> axes(dim);
      for (int a = 0; a < dim; ++a)
        for (int i = 0; i < side; ++i) axes[a].emplace_back(rng.int_in(-12, 12));
      std::vector<int> idx(dim, 0);
      while (true) {
        std::vector<Rat> p(dim);
        for (int a = 0; a < dim; ++a) p[a] = axes[a][idx[a]];
        pts.push_back(p);
        int pos = dim - 1;
        while (pos >= 0 && ++idx[pos] == static_cast<int>(axes[pos].size())) idx[pos--] = 0;
        if (pos < 0) break;
      }
    } else {
      for (int i = 0; i < count; ++i) {
        std::vector<Rat> p(dim);
        for (int a = 0; a < dim; ++a) p[a] = Rat(rng.int_in(-12, 12));
        pts.push_back(p);
      }
    }
    return pts;
  };
  q.P = fill(t, n_points);
  q.Q = fill(s, m_points);
  return q;
}

bool all_pairs_incidence(const IncidenceQuery& q) {
  std::vector<Rat> point(q.t + q.s);
  for (const auto& p : q.P)
    for (const auto& qq : q.Q) {
      for (int j = 0; j < q.t; ++j) point[j] = p[j];
      for (int j = 0; j < q.s; ++j) point[q.t + j] = qq[j];
      if (q.F.eval(point) == 0) return true;
    }
  return false;
}

}  // namespace

TEST_CASE("detect, spec values") {
  // F = p1 q1 + p2 - q2 with P = {(1,1)}, Q = {(1,2)}
  IncidenceQuery q;
  q.t = q.s = 2;
  q.F = parse_poly("1 * x1^1 x3^1 + 1 * x2^1 - 1 * x4^1", 4);
  q.P = {{Rat(1), Rat(1)}};
  q.Q = {{Rat(1), Rat(2)}};
  auto rep = detect(q, {});
  CHECK(rep.yes);
  CHECK(rep.witness_p == 0);
  CHECK(rep.witness_q == 0);

  q.P.clear();
  CHECK(!detect(q, {}).yes);
  q.P = {{Rat(1), Rat(1)}};
  q.Q.clear();
  CHECK(!detect(q, {}).yes);
}

TEST_CASE("detect equals the all-pairs oracle on a seeded corpus") {
  Rng rng(606);
  int yes_count = 0;
  struct Dim {
    int t, s;
  };
  const Dim dims[] = {{2, 2}, {2, 3}, {3, 3}, {3, 6}};
  for (int trial = 0; trial < 300; ++trial) {
    auto [t, s] = dims[trial % 4];
    int n = 5 + static_cast<int>(rng.below(60));
    int m = 5 + static_cast<int>(rng.below(60));
    auto q = random_query(rng, t, s, n, m, 3, trial % 2 == 0);
    EngineConfig cfg;
    cfg.r = 4 + static_cast<int>(rng.below(8));
    cfg.n0 = 4 + static_cast<int>(rng.below(16));
    cfg.allow_dual_switch = trial % 8 != 7;
    auto rep = detect(q, cfg);
    bool expect = all_pairs_incidence(q);
    CHECK(rep.yes == expect);
    if (rep.yes) {
      ++yes_count;
      std::vector<Rat> point = q.P[rep.witness_p];
      point.insert(point.end(), q.Q[rep.witness_q].begin(), q.Q[rep.witness_q].end());
      CHECK(q.F.eval(point) == 0);
    }
  }
  CHECK(yes_count > 30);  // the corpus mixes YES and NO instances
}

TEST_CASE("zero surface fast path") {
  // F = q1 * (p1 - 1): q = (0, anything) makes sigma_q the whole plane
  IncidenceQuery q;
  q.t = 2;
  q.s = 2;
  q.F = parse_poly("1 * x1^1 x3^1 - 1 * x3^1", 4);
  q.P = {{Rat(7), Rat(9)}, {Rat(2), Rat(4)}};
  q.Q = {{Rat(0), Rat(5)}, {Rat(3), Rat(1)}};
  auto rep = detect(q, {});
  CHECK(rep.yes);
  CHECK(rep.witness_q == 0);
  CHECK(sign_query(rep.signs, 0, 0) == 0);
  CHECK(sign_query(rep.signs, 1, 0) == 0);
}

TEST_CASE("sign map matches direct signs exhaustively") {
  Rng rng(1717);
  for (int trial = 0; trial < 40; ++trial) {
    int t = 2 + static_cast<int>(rng.below(2));
    int s = 2 + static_cast<int>(rng.below(2));
    auto q = random_query(rng, t, s, 30 + static_cast<int>(rng.below(40)),
                          30 + static_cast<int>(rng.below(40)), 2, trial % 2 == 0);
    EngineConfig cfg;
    cfg.n0 = 8;
    cfg.r = 8;
    auto rep = detect(q, cfg);
    std::vector<Rat> point(t + s);
    for (std::size_t pi = 0; pi < q.P.size(); ++pi)
      for (std::size_t qi = 0; qi < q.Q.size(); ++qi) {
        for (int j = 0; j < t; ++j) point[j] = q.P[pi][j];
        for (int j = 0; j < s; ++j) point[t + j] = q.Q[qi][j];
        int direct = sign_of(q.F.eval(point));
        CHECK(sign_query(rep.signs, static_cast<int>(pi), static_cast<int>(qi)) == direct);
      }
    CHECK_THROWS_AS(sign_query(rep.signs, -1, 0), IndexOutOfRange);
    CHECK_THROWS_AS(sign_query(rep.signs, 0, static_cast<int>(q.Q.size())), IndexOutOfRange);
  }
}

TEST_CASE("after a NO decision no pair queries to zero") {
  Rng rng(2222);
  int no_count = 0;
  while (no_count < 10) {
    auto q = random_query(rng, 2, 2, 40, 40, 2, false);
    auto rep = detect(q, {});
    if (rep.yes) continue;
    ++no_count;
    for (std::size_t pi = 0; pi < q.P.size(); ++pi)
      for (std::size_t qi = 0; qi < q.Q.size(); ++qi)
        CHECK(sign_query(rep.signs, static_cast<int>(pi), static_cast<int>(qi)) != 0);
  }
}

TEST_CASE("recursion depth stays logarithmic on product inputs") {
  Rng rng(90210);
  EngineConfig cfg;  // the default r = 8, n0 = 64 regime
  for (int trial = 0; trial < 10; ++trial) {
    int side = 10 + static_cast<int>(rng.below(25));
    auto q = random_query(rng, 2, 2, side * side, side * side, 2, true);
    auto rep = detect(q, cfg);
    double maxnm = static_cast<double>(std::max(q.P.size(), q.Q.size()));
    double bound = std::log(maxnm) / std::log(static_cast<double>(cfg.r)) + 1.0;
    CHECK(static_cast<double>(rep.aux.at("tree_depth")) <= bound + 1e-9);
  }
}

TEST_CASE("main_term_exponents, spec values") {
  auto [m22, n22] = main_term_exponents(2, 2);
  CHECK(m22 == Rat(2, 3));
  CHECK(n22 == Rat(2, 3));
  auto [m36, n36] = main_term_exponents(3, 6);
  CHECK(m36 == Rat(15, 17));
  CHECK(n36 == Rat(12, 17));
  auto [m33, n33] = main_term_exponents(3, 3);
  CHECK(m33 == Rat(3, 4));
  CHECK(n33 == Rat(3, 4));
  CHECK_THROWS_AS(main_term_exponents(1, 1), DegenerateDimensions);
}

TEST_CASE("batch_predicates equals direct evaluation") {
  Rng rng(515);
  // membership: x1 + x2 + x3 < d1 + d2 + d3, boundary sum(x) - sum(d)
  MultiPoly boundary(6);
  for (int i = 0; i < 3; ++i) {
    boundary = boundary + MultiPoly::variable(6, i);
    boundary = boundary - MultiPoly::variable(6, 3 + i);
  }
  std::vector<std::vector<Rat>> points, params;
  for (int i = 0; i < 20; ++i) {
    points.push_back({Rat(rng.int_in(-9, 9)), Rat(rng.int_in(-9, 9)), Rat(rng.int_in(-9, 9))});
    params.push_back({Rat(rng.int_in(-9, 9)), Rat(rng.int_in(-9, 9)), Rat(rng.int_in(-9, 9))});
  }
  auto member = [&](int a, int b) {
    Rat lhs = points[a][0] + points[a][1] + points[a][2];
    Rat rhs = params[b][0] + params[b][1] + params[b][2];
    return lhs < rhs;
  };
  SignTestCounter counter;
  EngineConfig cfg;
  cfg.n0 = 4;
  auto table = batch_predicates(points, params, boundary, member, cfg, counter);
  for (int a = 0; a < 20; ++a)
    for (int b = 0; b < 20; ++b) CHECK((table.query(a, b) == 1) == member(a, b));

  // ties on the boundary reproduce membership's own answer verbatim
  std::vector<std::vector<Rat>> tp = {{Rat(1), Rat(2), Rat(3)}};
  std::vector<std::vector<Rat>> td = {{Rat(3), Rat(2), Rat(1)}};
  auto table2 = batch_predicates(tp, td, boundary, member, cfg, counter);
  CHECK((table2.query(0, 0) == 1) == member(0, 0));
}

TEST_CASE("split_dims and kpol_exponent, spec values") {
  CHECK(split_dims(4).t == 2);
  CHECK(split_dims(4).s == 2);
  CHECK(split_dims(5).t == 2);
  CHECK(split_dims(5).s == 3);
  CHECK(split_dims(7).t == 3);
  CHECK(split_dims(7).s == 4);
  CHECK_THROWS_AS(split_dims(2), KTooSmall);

  CHECK(kpol_exponent(4) == Rat(8, 3));
  CHECK(kpol_exponent(5) == Rat(18, 5));
  CHECK(kpol_exponent(6) == Rat(9, 2));
  CHECK(kpol_exponent(7) == Rat(60, 11));
  CHECK(kpol_exponent(8) == Rat(32, 5));
}

TEST_CASE("kpol exponent closed forms hold exactly for 3 <= k <= 64") {
  for (int k = 3; k <= 64; ++k) {
    Rat e = kpol_exponent(k);
    if (k % 2 == 0)
      CHECK(e == Rat(k - 2) + make_rat(4, k + 2));
    else
      CHECK(e == Rat(k - 2) + make_rat(4 * k - 8, static_cast<long>(k) * k - 5));
  }
}

TEST_CASE("kpol_solve equals brute force on a seeded corpus") {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    int k = 3 + static_cast<int>(seed % 3);
    int n = 2 + static_cast<int>(seed % 6);
    KPolInstance inst;
    switch (seed % 4) {
      case 0: inst = make_family_instance("planted", k, n, seed, -6, 6); break;
      case 1: inst = make_family_instance("ksum", k, n, seed, -6, 6); break;
      case 2: inst = generate_random(k, n, 2, -3, 3, -6, 6, seed); break;
      default: inst = generate_random(k, n, 3, -3, 3, -4, 4, seed); break;
    }
    auto expect = brute_force(inst);
    auto got = kpol_solve(inst, {});
    CHECK(got.yes == expect.yes);
    if (got.yes) CHECK(inst.is_witness(*got.witness));
    std::uint64_t np = 1, nq = 1;
    auto [t, s] = split_dims(k);
    for (int i = 0; i < t; ++i) np *= inst.sets[i].size();
    for (int i = t; i < k; ++i) nq *= inst.sets[i].size();
    CHECK(got.aux.at("points_p") == np);
    CHECK(got.aux.at("points_q") == nq);
  }
}

TEST_CASE("kpol_solve cross-checks against mitm on plain sums") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    auto inst = make_family_instance("ksum", 3, 4 + seed % 8, seed * 3 + 1, -9, 9);
    CHECK(kpol_solve(inst, {}).yes == mitm_ksum(inst).yes);
  }
}

TEST_CASE("zero-surface fast path through kpol_solve") {
  // F independent of x3 that vanishes on a prefix: F = (x1 - 1) * x2
  KPolInstance inst;
  inst.k = 3;
  inst.F = parse_poly("1 * x1^1 x2^1 - 1 * x2^1", 3);
  inst.sets = {{Rat(1), Rat(5)}, {Rat(2)}, {Rat(9)}};
  auto res = kpol_solve(inst, {});
  CHECK(res.yes);
  CHECK(inst.is_witness(*res.witness));
}

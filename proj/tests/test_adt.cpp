#include "doctest.h"
#include "kpol/adt.hpp"
#include "kpol/baselines.hpp"
#include "kpol/errors.hpp"
#include "kpol/instance.hpp"

using namespace kpol;

namespace {

KPolInstance named(const std::string& family, int k, int n, std::uint64_t seed, long lo = -10,
                   long hi = 10) {
  return make_family_instance(family, k, n, seed, lo, hi);
}

KPolInstance parabola_instance(int n, std::uint64_t seed) {
  // y = x^2 - c x - d: parabola curves, linear in y
  KPolInstance inst;
  inst.k = 4;
  inst.F = parse_poly("1 * x2^1 - 1 * x1^2 + 1 * x1^1 x3^1 + 1 * x4^1", 4);
  Rng rng(seed);
  inst.sets.resize(4);
  for (auto& s : inst.sets) {
    for (int i = 0; i < n; ++i) s.emplace_back(rng.int_in(-9, 9));
    std::sort(s.begin(), s.end());
  }
  inst.family = "parab";
  inst.seed = seed;
  return inst;
}

}  // namespace

TEST_CASE("balance_block_size, spec values") {
  CHECK(balance_block_size(4) == make_rat(3, 8));
  CHECK(balance_block_size(5) == make_rat(13, 59));
  CHECK(balance_block_size(Rat(3), Rat(1), make_rat(3, 2), Rat(3)) == make_rat(3, 8));
  CHECK_THROWS_AS(balance_block_size(6), UnsupportedK);

  CHECK(derived_block_size(4, 256) == 8);  // 256^(3/8) = 2^3
  CHECK(derived_block_size(4, 1) == 1);
  CHECK(derived_block_size(5, 10) == 2);
}

TEST_CASE("build_H_boundary for a line family, verified symbolically") {
  // gamma_{c,d}: y = -c x - d; intersection abscissas collide exactly on the
  // 2x2 determinant (c2-c1)(d3-d1) - (c3-c1)(d2-d1)
  auto F = parse_poly("1 * x1^1 x3^1 + 1 * x2^1 + 1 * x4^1", 4);
  auto hb = build_H_boundary(F, TripleKind::Order);
  CHECK(!hb.degenerate);
  REQUIRE(hb.r12_coeffs.size() == 2);  // R12 linear in x

  // engine variable order: (c1, c2, c3, d1, d2, d3)
  auto v = [&](int i) { return MultiPoly::variable(6, i); };
  auto expected = (v(1) - v(0)) * (v(5) - v(3)) - (v(2) - v(0)) * (v(4) - v(3));
  expected = expected * (v(1) - v(0)) * (v(2) - v(0));  // leading-coefficient factors
  auto prod = hb.product();
  CHECK((prod == expected || prod == -expected));
}

TEST_CASE("circle-pair boundary vanishes exactly at tangency") {
  auto F = family_poly("circle", 4);
  auto hb = build_H_boundary(F, TripleKind::Order);
  CHECK(!hb.degenerate);
  auto prod = hb.product();
  // unit circles centered (0,0) and (2,0) touch; the third curve is generic
  std::vector<Rat> tangent{Rat(0), Rat(2), Rat(5), Rat(0), Rat(0), Rat(7)};
  CHECK(prod.eval(tangent) == 0);
  // identical second and third parameter tuples: R12 = R13 share every root
  std::vector<Rat> identical{Rat(0), Rat(2), Rat(2), Rat(0), Rat(1), Rat(1)};
  CHECK(prod.eval(identical) == 0);
  // a generic separated configuration keeps every factor nonzero
  std::vector<Rat> generic{Rat(0), Rat(1), Rat(17), Rat(0), Rat(1), Rat(40)};
  CHECK(prod.eval(generic) != 0);

  auto crit = build_H_boundary(F, TripleKind::CritOrder);
  CHECK(crit.r13_coeffs.size() >= 2);
}

TEST_CASE("boundary interval filter is conservative") {
  auto F = family_poly("circle", 4);
  auto hb = build_H_boundary(F, TripleKind::Order);
  auto prod = hb.product();
  Rng rng(900);
  int vanishing_boxes = 0;
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<RatInterval> box;
    std::vector<Rat> sample;
    for (int i = 0; i < 6; ++i) {
      Rat lo(rng.int_in(-6, 6)), w(rng.int_in(0, 2));
      box.emplace_back(lo, lo + w);
      sample.push_back(lo + make_rat(rng.int_in(0, 4), 4) * w);
    }
    if (prod.eval(sample) == 0) {
      CHECK(hb.may_vanish(box, nullptr));  // a real zero inside must be kept
      ++vanishing_boxes;
    }
  }
  CHECK(vanishing_boxes > 3);
}

TEST_CASE("solve_4pol matches brute force on seeded instances, both modes") {
  int yes_seen = 0;
  for (std::uint64_t seed = 0; seed < 36; ++seed) {
    int n = 3 + static_cast<int>(seed % 8);
    KPolInstance inst;
    switch (seed % 3) {
      case 0: inst = named("circle", 4, n, seed, -6, 6); break;
      case 1: inst = named("hyper", 4, n, seed, -8, 8); break;
      default: inst = parabola_instance(n, seed); break;
    }
    auto expect = brute_force(inst);
    AdtConfig direct;
    direct.mode = AdtConfig::Mode::Direct;
    AdtConfig fredman;
    fredman.mode = AdtConfig::Mode::Fredman;
    auto rd = solve_4pol(inst, direct);
    auto rf = solve_4pol(inst, fredman);
    CHECK(rd.yes == expect.yes);
    CHECK(rf.yes == expect.yes);
    if (rd.yes) CHECK(inst.is_witness(*rd.witness));
    if (rf.yes) CHECK(inst.is_witness(*rf.witness));
    // mode equivalence: identical decisions and identical query-phase work
    CHECK(rd.aux.at("sign_tests_query") == rf.aux.at("sign_tests_query"));
    if (rd.aux.count("query_predicates"))
      CHECK(rd.aux.at("query_predicates") == rf.aux.at("query_predicates"));
    if (expect.yes) ++yes_seen;
  }
  CHECK(yes_seen > 5);
}

TEST_CASE("solve_4pol default block size and crossed boxes on the circle family") {
  auto inst = named("circle", 4, 16, 41, -16, 16);
  AdtConfig cfg;
  cfg.mode = AdtConfig::Mode::Fredman;
  auto res = solve_4pol(inst, cfg);
  CHECK(res.aux.at("g") == static_cast<std::uint64_t>(derived_block_size(4, 16)));
  CHECK(res.yes == brute_force(inst).yes);
  // a unit circle spans at most two blocks per axis, plus the filter's slack
  std::uint64_t blocks = (16 + res.aux.at("g") - 1) / res.aux.at("g");
  CHECK(res.aux.at("crossed_boxes_max") <= 6 * blocks);
}

TEST_CASE("solve_4pol handles empty and degenerate instances") {
  auto empty = named("circle", 4, 0, 1);
  auto res = solve_4pol(empty, {});
  CHECK(!res.yes);
  CHECK(res.counters.sign_tests == 0);

  // F vanishing identically in the curve variables for some (a, b):
  // F = x1 * x3 + x2 * x4 vanishes for a = b = 0 regardless of (c, d)
  KPolInstance zero;
  zero.k = 4;
  zero.F = parse_poly("1 * x1^1 x3^1 + 1 * x2^1 x4^1", 4);
  zero.sets = {{Rat(0), Rat(3)}, {Rat(0), Rat(2)}, {Rat(1)}, {Rat(5)}};
  auto zres = solve_4pol(zero, {});
  CHECK(zres.yes);
  CHECK(zero.is_witness(*zres.witness));
}

TEST_CASE("solve_5pol matches brute force on seeded instances, both modes") {
  for (std::uint64_t seed = 0; seed < 14; ++seed) {
    int n = 2 + static_cast<int>(seed % 4);
    auto inst = named("circle5", 5, n, seed, -5, 5);
    auto expect = brute_force(inst);
    AdtConfig direct;
    direct.mode = AdtConfig::Mode::Direct;
    AdtConfig fredman;
    fredman.mode = AdtConfig::Mode::Fredman;
    auto rd = solve_5pol(inst, direct);
    auto rf = solve_5pol(inst, fredman);
    CHECK(rd.yes == expect.yes);
    CHECK(rf.yes == expect.yes);
    if (rd.yes) CHECK(inst.is_witness(*rd.witness));
    if (rf.yes) CHECK(inst.is_witness(*rf.witness));
    CHECK(rd.aux.at("sign_tests_query") == rf.aux.at("sign_tests_query"));
  }
}

TEST_CASE("count_report lists phases and counters monotonically") {
  auto inst = named("circle", 4, 8, 3, -8, 8);
  AdtConfig cfg;
  cfg.mode = AdtConfig::Mode::Fredman;
  auto res = solve_4pol(inst, cfg);
  auto report = count_report(res);
  CHECK(report.find("sign_tests_batch") != std::string::npos);
  CHECK(report.find("sign_tests_query") != std::string::npos);
  CHECK(report.find("crossed_boxes_max") != std::string::npos);
  CHECK(res.counters.sign_tests >= res.aux.at("sign_tests_query"));

  auto empty = solve_4pol(named("circle", 4, 0, 9), cfg);
  CHECK(count_report(empty).find("decision,NO") != std::string::npos);
}

TEST_CASE("adt solvers reject wrong arity") {
  auto inst3 = named("ksum", 3, 4, 5);
  CHECK_THROWS_AS(solve_4pol(inst3, {}), ArityMismatch);
  CHECK_THROWS_AS(solve_5pol(inst3, {}), ArityMismatch);
}

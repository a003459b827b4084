#include <cmath>
#include <set>

#include "doctest.h"
#include "kpol/arrangement.hpp"
#include "kpol/errors.hpp"

using namespace kpol;

namespace {

MultiPoly C(const char* text) { return parse_poly(text, 2); }

MultiPoly line(long slope, long intercept) {
  MultiPoly f = C("1 * x2^1");
  f = f - parse_poly("1 * x1^1", 2).scaled(Rat(slope));
  f = f - MultiPoly::constant(2, Rat(intercept));
  return f;
}

MultiPoly circle(const Rat& cx, const Rat& cy, const Rat& r2) {
  auto dx = parse_poly("1 * x1^1", 2) - MultiPoly::constant(2, cx);
  auto dy = parse_poly("1 * x2^1", 2) - MultiPoly::constant(2, cy);
  return dx * dx + dy * dy - MultiPoly::constant(2, r2);
}

std::vector<MultiPoly> random_curves(Rng& rng, int count) {
  std::vector<MultiPoly> out;
  while (static_cast<int>(out.size()) < count) {
    switch (rng.below(3)) {
      case 0:
        out.push_back(line(rng.int_in(-3, 3), rng.int_in(-5, 5)));
        break;
      case 1:
        out.push_back(circle(Rat(rng.int_in(-4, 4)), Rat(rng.int_in(-4, 4)),
                             Rat(rng.int_in(1, 12))));
        break;
      default: {
        MultiPoly f = C("1 * x2^1");
        f = f - parse_poly("1 * x1^2", 2).scaled(Rat(rng.int_in(-1, 1)));
        f = f - parse_poly("1 * x1^1", 2).scaled(Rat(rng.int_in(-2, 2)));
        f = f - MultiPoly::constant(2, Rat(rng.int_in(-4, 4)));
        out.push_back(f);
        break;
      }
    }
  }
  return out;
}

}  // namespace

TEST_CASE("three nonparallel lines: order at minus infinity and two events per arc") {
  std::vector<MultiPoly> curves = {line(2, 0), line(-1, 1), line(0, -3)};
  PredicateOracle oracle(curves, PredicateOracle::Mode::Direct);
  auto ot = build_order_type(oracle);
  REQUIRE(ot.num_arcs == 3);
  // bottom to top at minus infinity: descending slope 2, 0, -1
  REQUIRE(ot.at_minus_infinity.size() == 3);
  CHECK(oracle.curve_of_arc(ot.at_minus_infinity[0]) == 0);
  CHECK(oracle.curve_of_arc(ot.at_minus_infinity[1]) == 2);
  CHECK(oracle.curve_of_arc(ot.at_minus_infinity[2]) == 1);
  for (const auto& events : ot.per_arc) CHECK(events.size() == 2);
  CHECK(ot.endpoint_groups.empty());
}

TEST_CASE("parallel lines: no events, intercept order") {
  std::vector<MultiPoly> curves = {line(1, 5), line(1, -2), line(1, 0)};
  PredicateOracle oracle(curves, PredicateOracle::Mode::Direct);
  auto ot = build_order_type(oracle);
  for (const auto& events : ot.per_arc) CHECK(events.empty());
  REQUIRE(ot.at_minus_infinity.size() == 3);
  CHECK(oracle.curve_of_arc(ot.at_minus_infinity[0]) == 1);  // y = x - 2 lowest
  CHECK(oracle.curve_of_arc(ot.at_minus_infinity[1]) == 2);
  CHECK(oracle.curve_of_arc(ot.at_minus_infinity[2]) == 0);
}

TEST_CASE("relabeling arcs permutes the order type consistently") {
  std::vector<MultiPoly> curves = {line(2, 0), line(-1, 1), line(0, -3)};
  PredicateOracle o1(curves, PredicateOracle::Mode::Direct);
  auto ot1 = build_order_type(o1);
  // permute the input curves; arcs follow curve order here (one arc each)
  std::vector<MultiPoly> permuted = {curves[2], curves[0], curves[1]};
  PredicateOracle o2(permuted, PredicateOracle::Mode::Direct);
  auto ot2 = build_order_type(o2);
  // arc of curve i in the original = arc of its new position
  std::vector<int> perm = {1, 2, 0};  // old arc id -> new arc id
  auto mapped = ot1.relabeled(perm);
  CHECK(mapped.at_minus_infinity == ot2.at_minus_infinity);
  for (int a = 0; a < 3; ++a) {
    REQUIRE(mapped.per_arc[a].size() == ot2.per_arc[a].size());
    for (std::size_t e = 0; e < mapped.per_arc[a].size(); ++e) {
      CHECK(mapped.per_arc[a][e].other_arc == ot2.per_arc[a][e].other_arc);
      CHECK(mapped.per_arc[a][e].pair_k == ot2.per_arc[a][e].pair_k);
    }
  }
}

TEST_CASE("build_pointloc, spec values") {
  // single arc: one level, no vertices
  std::vector<MultiPoly> one = {line(1, 0)};
  PredicateOracle o1(one, PredicateOracle::Mode::Direct);
  auto ls1 = build_pointloc(build_order_type(o1));
  CHECK(ls1.alive_count[0] == 1);
  REQUIRE(ls1.levels[0].size() == 1);
  CHECK(ls1.levels[0][0].steps.empty());

  // two crossing lines: two levels, one vertex each, occupancy swap
  std::vector<MultiPoly> two = {line(1, 0), line(-1, 0)};
  PredicateOracle o2(two, PredicateOracle::Mode::Direct);
  auto ot = build_order_type(o2);
  auto ls2 = build_pointloc(ot);
  CHECK(ls2.alive_count[0] == 2);
  for (int l = 0; l < 2; ++l) {
    REQUIRE(ls2.levels[l].size() == 1);
    REQUIRE(ls2.levels[l][0].steps.size() == 1);
    const auto& [v, after] = ls2.levels[l][0].steps[0];
    CHECK(v.arc_lo == 0);
    CHECK(v.arc_hi == 1);
    CHECK(v.pair_k == 0);
    CHECK(after != ls2.levels[l][0].start_occupant);
  }

  // construction is a pure replay: no predicates, no sign tests
  auto before = o2.counters.sign_tests;
  auto preds = o2.predicates;
  auto ls3 = build_pointloc(ot);
  CHECK(o2.counters.sign_tests == before);
  CHECK(o2.predicates == preds);
  CHECK(ls3.alive_count == ls2.alive_count);
}

TEST_CASE("pointloc occupancies match direct geometry on random arrangements") {
  Rng rng(4242);
  for (int trial = 0; trial < 20; ++trial) {
    auto curves = random_curves(rng, 3 + static_cast<int>(rng.below(14)));
    PredicateOracle oracle(curves, PredicateOracle::Mode::Direct);
    OrderType ot;
    try {
      ot = build_order_type(oracle);
    } catch (const Error&) {
      continue;  // coincident random curves: regenerate via the next trial
    }
    auto ls = build_pointloc(ot);

    // probe each slab at a rational abscissa strictly inside it
    std::vector<Rat> samples;
    if (ot.endpoint_groups.empty()) {
      samples.push_back(Rat(0));
    } else {
      auto group_x = [&](int g) {
        const auto& rep = ot.endpoint_groups[g].front();
        const auto& arc = oracle.arc(rep.arc);
        return rep.is_start ? *arc.x_lo : *arc.x_hi;
      };
      samples.push_back(group_x(0).lo() - 1);
      for (std::size_t g = 0; g + 1 < ot.endpoint_groups.size(); ++g)
        samples.push_back(
            rational_strictly_between(group_x(static_cast<int>(g)), group_x(static_cast<int>(g) + 1)));
      samples.push_back(group_x(static_cast<int>(ot.endpoint_groups.size()) - 1).hi() + 1);
    }
    for (std::size_t s = 0; s < samples.size(); ++s) {
      const Rat& x = samples[s];
      // direct: alive arcs sorted by their y at x
      std::vector<std::pair<AlgebraicNumber, int>> direct;
      for (int a = 0; a < oracle.num_arcs(); ++a) {
        const auto& arc = oracle.arc(a);
        if (arc.x_lo && oracle.x_vs_arc_endpoint(x, a, false) != Ordering::Above) continue;
        if (arc.x_hi && oracle.x_vs_arc_endpoint(x, a, true) != Ordering::Below) continue;
        auto fiber = fiber_roots(arc.source, x);
        REQUIRE(arc.branch < static_cast<int>(fiber.size()));
        direct.emplace_back(fiber[arc.branch], a);
      }
      std::sort(direct.begin(), direct.end(),
                [](const auto& u, const auto& v) { return compare(u.first, v.first) < 0; });
      REQUIRE(static_cast<int>(direct.size()) == ls.alive_count[s]);
      // a sample can land exactly on a crossing, where the direct order is
      // ambiguous; skip those probes
      bool tie = false;
      for (std::size_t l = 1; l < direct.size(); ++l)
        if (compare(direct[l - 1].first, direct[l].first) == 0) tie = true;
      if (tie) continue;
      for (std::size_t l = 0; l < direct.size(); ++l)
        CHECK(occupant_at(ls, static_cast<int>(l), static_cast<int>(s), x, oracle) ==
              direct[l].second);
    }
  }
}

TEST_CASE("locate, spec values") {
  std::vector<MultiPoly> curves = {circle(Rat(0), Rat(0), Rat(1)), line(1, 3), line(0, -2)};
  PredicateOracle oracle(curves, PredicateOracle::Mode::Direct);
  auto ls = build_pointloc(build_order_type(oracle));

  // a query on the circle (Pythagorean point)
  auto on = locate(ls, parse_rat("3/5"), parse_rat("4/5"), oracle);
  REQUIRE(on.kind == LocateResult::Kind::On);
  CHECK(oracle.curve_of_arc(on.on_arc) == 0);

  // a query above everything
  auto above = locate(ls, Rat(0), Rat(100), oracle);
  CHECK(above.kind == LocateResult::Kind::AboveAll);

  // a query at the circle's right tip (slab boundary)
  auto tip = locate(ls, Rat(1), Rat(0), oracle);
  REQUIRE(tip.kind == LocateResult::Kind::On);
  CHECK(oracle.curve_of_arc(tip.on_arc) == 0);

  // a query on a vertical line component
  std::vector<MultiPoly> with_vertical = {C("1 * x1^1 x2^1 - 1 * x1^1"), line(0, 5)};
  PredicateOracle ov(with_vertical, PredicateOracle::Mode::Direct);
  auto lsv = build_pointloc(build_order_type(ov));
  auto onv = locate(lsv, Rat(0), Rat(17), ov);
  REQUIRE(onv.kind == LocateResult::Kind::On);
  CHECK(onv.on_vertical >= 0);
}

TEST_CASE("locate agrees with the direct scan on random queries") {
  Rng rng(31007);
  for (int trial = 0; trial < 12; ++trial) {
    auto curves = random_curves(rng, 4 + static_cast<int>(rng.below(28)));
    PredicateOracle oracle(curves, PredicateOracle::Mode::Direct);
    OrderType ot;
    try {
      ot = build_order_type(oracle);
    } catch (const Error&) {
      continue;
    }
    auto ls = build_pointloc(ot);
    for (int q = 0; q < 90; ++q) {
      Rat qx = make_rat(rng.int_in(-48, 48), 7);
      Rat qy = make_rat(rng.int_in(-48, 48), 5);
      if (q % 9 == 0 && oracle.num_arcs() > 0) {
        // exact on-curve queries: ride a line if one exists
        for (int c = 0; c < oracle.num_curves(); ++c) {
          auto fiber = fiber_roots(curves[c], qx);
          if (!fiber.empty() && fiber[0].is_rational()) {
            qy = fiber[0].value();
            break;
          }
        }
      }
      auto fast = locate(ls, qx, qy, oracle);
      auto slow = locate_by_scan(oracle, qx, qy);
      CHECK((fast.kind == LocateResult::Kind::On) == (slow.kind == LocateResult::Kind::On));
      if (fast.kind == LocateResult::Kind::On && fast.on_arc >= 0 && slow.on_arc >= 0) {
        // the hit is curve-level exact: the query zeroes the reported curve
        const auto& src = oracle.arc(fast.on_arc).source;
        std::vector<Rat> pt{qx, qy};
        CHECK(src.eval(pt) == 0);
      }
      if (fast.kind != LocateResult::Kind::On && !fast.at_slab_boundary) {
        CHECK(fast.kind == slow.kind);
        if (fast.kind == LocateResult::Kind::Face)
          CHECK(fast.above_level == slow.above_level);
      }
    }
  }
}

TEST_CASE("locate stays within the predicate budget") {
  Rng rng(5656);
  for (int m : {8, 16, 32}) {
    auto curves = random_curves(rng, m);
    PredicateOracle oracle(curves, PredicateOracle::Mode::Direct);
    OrderType ot;
    try {
      ot = build_order_type(oracle);
    } catch (const Error&) {
      continue;
    }
    auto ls = build_pointloc(ot);
    double total = 0;
    int queries = 200;
    for (int q = 0; q < queries; ++q) {
      Rat qx = make_rat(rng.int_in(-64, 64), 9);
      Rat qy = make_rat(rng.int_in(-64, 64), 11);
      total += static_cast<double>(locate(ls, qx, qy, oracle).predicates);
    }
    double lg = std::ceil(std::log2(static_cast<double>(m)));
    CHECK(total / queries <= 4 * lg * lg + 8 * lg);
  }
}

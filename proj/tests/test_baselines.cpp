#include "doctest.h"
#include "kpol/baselines.hpp"
#include "kpol/errors.hpp"
#include "kpol/instance.hpp"

using namespace kpol;

namespace {

KPolInstance inst_of(const char* poly, std::vector<std::vector<long>> sets) {
  KPolInstance inst;
  inst.k = static_cast<int>(sets.size());
  inst.F = parse_poly(poly, inst.k);
  for (auto& s : sets) {
    std::vector<Rat> vals(s.begin(), s.end());
    std::sort(vals.begin(), vals.end());
    inst.sets.push_back(vals);
  }
  return inst;
}

}  // namespace

TEST_CASE("brute_force, spec values") {
  auto inst = inst_of("1 * x1^1 + 1 * x2^1 + 1 * x3^1", {{1, 2}, {3, 4}, {-5, -6}});
  auto res = brute_force(inst);
  REQUIRE(res.yes);
  CHECK(res.witness->tuple == std::vector<Rat>{Rat(1), Rat(4), Rat(-5)});

  auto nores = brute_force(
      inst_of("1 * x1^2 + 1 * x2^2 + 1 * x3^2 + 1", {{1, 2, 3}, {0, 5}, {-1, 1}}));
  CHECK(!nores.yes);

  auto planted = make_family_instance("planted", 4, 6, 11, -8, 8);
  CHECK(brute_force(planted).yes);
}

TEST_CASE("naive_solve agrees with brute force and counts substitutions exactly") {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    int k = 3 + static_cast<int>(seed % 3);
    int n = 2 + static_cast<int>(seed % 7);
    KPolInstance inst;
    if (seed % 3 == 0)
      inst = make_family_instance("planted", k, n, seed, -6, 6);
    else if (seed % 3 == 1)
      inst = make_family_instance("ksum", k, n, seed, -6, 6);
    else
      inst = generate_random(k, n, 3, -3, 3, -6, 6, seed);
    auto expect = brute_force(inst);
    auto got = naive_solve(inst);
    CHECK(got.yes == expect.yes);
    if (got.yes) CHECK(inst.is_witness(*got.witness));
    std::uint64_t prefixes = 1;
    for (int i = 0; i + 1 < inst.k; ++i) prefixes *= inst.sets[i].size();
    CHECK(got.aux.at("substitutions") == prefixes);
  }
}

TEST_CASE("naive_solve corner cases") {
  // singleton sets with a vanishing tuple
  auto single = inst_of("1 * x1^1 + 1 * x2^1", {{3}, {-3}});
  auto res = naive_solve(single);
  CHECK(res.yes);
  CHECK(res.witness->tuple == std::vector<Rat>{Rat(3), Rat(-3)});

  // F collapses to the zero polynomial after any prefix
  KPolInstance zero;
  zero.k = 2;
  zero.F = parse_poly("1 * x1^1 - 1 * x1^1", 2);  // identically zero
  zero.F = zero.F + parse_poly("1 * x2^1 - 1 * x2^1", 2);
  zero.sets = {{Rat(4)}, {Rat(9)}};
  auto zres = naive_solve(zero);
  CHECK(zres.yes);
  CHECK(zres.witness->tuple == std::vector<Rat>{Rat(4), Rat(9)});
}

TEST_CASE("mitm_ksum, spec values") {
  auto even = inst_of("1 * x1^1 + 1 * x2^1 + 1 * x3^1 + 1 * x4^1",
                      {{1, 2}, {3, 4}, {-2, -1}, {-5, 0}});
  auto eres = mitm_ksum(even);
  CHECK(eres.yes);
  CHECK(even.is_witness(*eres.witness));
  CHECK(eres.aux.at("partial_sums") == 2 * 4);  // 2 n^(k/2) with n = 2, k = 4

  auto odd = inst_of("1 * x1^1 + 1 * x2^1 + 1 * x3^1", {{1, 2}, {3, 4}, {-5, -4}});
  auto ores = mitm_ksum(odd);
  CHECK(ores.yes);
  CHECK(odd.is_witness(*ores.witness));

  auto pos = inst_of("1 * x1^1 + 1 * x2^1 + 1 * x3^1", {{1, 2}, {3, 4}, {5, 6}});
  CHECK(!mitm_ksum(pos).yes);

  auto notsum = inst_of("1 * x1^1 x2^1 + 1 * x3^1", {{1}, {1}, {-1}});
  CHECK_THROWS_AS(mitm_ksum(notsum), NotPlainSum);
}

TEST_CASE("mitm_ksum oracle equivalence and counters") {
  for (std::uint64_t seed = 0; seed < 120; ++seed) {
    int k = 3 + static_cast<int>(seed % 4);
    int n = 2 + static_cast<int>(seed % 6);
    auto inst = make_family_instance("ksum", k, n, seed, -7, 7);
    if (seed % 4 == 0) inst = plant_solution(inst, seed + 1);
    auto expect = brute_force(inst);
    auto got = mitm_ksum(inst);
    CHECK(got.yes == expect.yes);
    if (got.yes) CHECK(inst.is_witness(*got.witness));
    if (inst.k % 2 == 0) {
      std::uint64_t half = 1;
      for (int i = 0; i < inst.k / 2; ++i) half *= inst.sets[i].size();
      std::uint64_t other = 1;
      for (int i = inst.k / 2; i < inst.k; ++i) other *= inst.sets[i].size();
      CHECK(got.aux.at("partial_sums") == half + other);
    }
  }
}

TEST_CASE("mitm_separable, spec values") {
  // F = (x1 + x2) - (x3 + x4)
  auto inst = inst_of("1 * x1^1 + 1 * x2^1 - 1 * x3^1 - 1 * x4^1",
                      {{1, 2}, {3, 4}, {0, 1}, {4, 6}});
  SeparableSplit split;
  split.t = 2;
  split.F1 = parse_poly("1 * x1^1 + 1 * x2^1", 4);
  split.F2 = parse_poly("1 * x3^1 + 1 * x4^1", 4);
  split.G = parse_poly("1 * x1^1 - 1 * x2^1", 2);
  auto res = mitm_separable(inst, split);
  CHECK(res.yes);
  CHECK(inst.is_witness(*res.witness));

  // G(u, v) = u v + 1 with matching u = 2, v = -1/2 present
  KPolInstance prod;
  prod.k = 2;
  prod.F = parse_poly("1 * x1^1 x2^1 + 1", 2);
  prod.sets = {{Rat(2), Rat(3)}, {parse_rat("-1/2"), Rat(5)}};
  SeparableSplit psplit;
  psplit.t = 1;
  psplit.F1 = parse_poly("1 * x1^1", 2);
  psplit.F2 = parse_poly("1 * x2^1", 2);
  psplit.G = parse_poly("1 * x1^1 x2^1 + 1", 2);
  auto pres = mitm_separable(prod, psplit);
  CHECK(pres.yes);
  CHECK(prod.is_witness(*pres.witness));

  SeparableSplit bad = split;
  bad.G = parse_poly("1 * x1^1 + 1 * x2^1", 2);
  CHECK_THROWS_AS(mitm_separable(inst, bad), SplitMismatch);
}

TEST_CASE("mitm_separable oracle equivalence") {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    auto inst = make_family_instance("ksum", 4, 3 + seed % 4, seed, -5, 5);
    SeparableSplit split;
    split.t = 2;
    split.F1 = parse_poly("1 * x1^1 + 1 * x2^1", 4);
    split.F2 = parse_poly("1 * x3^1 + 1 * x4^1", 4);
    split.G = parse_poly("1 * x1^1 + 1 * x2^1", 2);
    auto got = mitm_separable(inst, split);
    auto expect = brute_force(inst);
    CHECK(got.yes == expect.yes);
    if (got.yes) CHECK(inst.is_witness(*got.witness));
  }
}

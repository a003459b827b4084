#include "kpol/instance.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "kpol/errors.hpp"
#include "kpol/laplace.hpp"

namespace kpol {

bool KPolInstance::is_witness(const Witness& w) const {
  if (static_cast<int>(w.tuple.size()) != k) return false;
  return F.eval(w.tuple) == 0;
}

void KPolInstance::validate() const {
  if (k < 2) throw ParseError("instance needs k >= 2");
  if (F.arity() != k) throw ParseError("polynomial arity differs from k");
  if (static_cast<int>(sets.size()) != k) throw ParseError("expected k value sets");
  for (const auto& s : sets)
    if (!std::is_sorted(s.begin(), s.end())) throw ParseError("sets must be sorted ascending");
}

KPolInstance generate_random(int k, int n, int degree_bound, long coeff_lo, long coeff_hi,
                             long value_lo, long value_hi, std::uint64_t seed) {
  if (k < 2 || n < 0) throw InvalidRange("generate_random needs k >= 2 and n >= 0");
  if (coeff_lo > coeff_hi || value_lo > value_hi || degree_bound < 1)
    throw InvalidRange("empty coefficient/value range");
  Rng rng(seed);
  KPolInstance inst;
  inst.k = k;
  inst.seed = seed;
  inst.family = "random";
  inst.sets.resize(k);
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < n; ++j) inst.sets[i].emplace_back(rng.int_in(value_lo, value_hi));
    std::sort(inst.sets[i].begin(), inst.sets[i].end());
  }
  MultiPoly F(k);
  int extra_terms = 1 + static_cast<int>(rng.below(3));
  for (int t = 0; t < extra_terms; ++t) {
    MultiPoly::Exponents e(k, 0);
    int budget = 1 + static_cast<int>(rng.below(degree_bound));
    for (int b = 0; b < budget; ++b) e[rng.below(k)] += 1;
    long c = rng.int_in(coeff_lo, coeff_hi);
    F.add_term(e, Rat(c));
  }
  // guarantee dependence on every variable
  for (int i = 0; i < k; ++i) {
    if (F.depends_on(i)) continue;
    long c = rng.int_in(coeff_lo, coeff_hi);
    if (c == 0) c = 1;
    MultiPoly::Exponents e(k, 0);
    e[i] = 1;
    F.add_term(e, Rat(c));
    if (!F.depends_on(i)) F.add_term(e, Rat(1));  // the draw cancelled an existing term
  }
  inst.F = F;
  return inst;
}

KPolInstance plant_solution(const KPolInstance& instance, std::uint64_t seed) {
  const int k = instance.k;
  const int last = k - 1;
  if (instance.F.degree_in(last) != 1)
    throw NotLinearInLastVar("plant_solution requires F linear in x_k");
  auto coeffs = instance.F.coeffs_in(last);  // [Q, P] with F = P*x_k + Q
  for (const auto& s : instance.sets)
    if (s.empty()) throw InvalidRange("plant_solution needs nonempty sets");

  Rng rng(seed);
  constexpr int kRetries = 64;
  for (int attempt = 0; attempt < kRetries; ++attempt) {
    std::vector<Rat> prefix(k, Rat(0));
    for (int i = 0; i < last; ++i)
      prefix[i] = instance.sets[i][rng.below(instance.sets[i].size())];
    Rat lead = coeffs[1].eval(prefix);
    if (lead == 0) continue;
    Rat root = -coeffs[0].eval(prefix) / lead;
    KPolInstance out = instance;
    auto& ak = out.sets[last];
    ak.insert(std::upper_bound(ak.begin(), ak.end(), root), root);
    out.family = instance.family.empty() ? "planted" : instance.family + "+planted";
    out.seed = seed;
    return out;
  }
  throw LeadingCoeffVanishes("leading coefficient vanished on every drawn prefix");
}

namespace {

struct PolyRingOps {
  int arity;
  MultiPoly zero() const { return MultiPoly::zero(arity); }
  MultiPoly one() const { return MultiPoly::constant(arity, 1); }
  bool is_zero(const MultiPoly& p) const { return p.is_zero(); }
  MultiPoly add(const MultiPoly& a, const MultiPoly& b) const { return a + b; }
  MultiPoly sub(const MultiPoly& a, const MultiPoly& b) const { return a - b; }
  MultiPoly mul(const MultiPoly& a, const MultiPoly& b) const { return a * b; }
};

}  // namespace

KPolInstance affine_reduce(const CurveFamily& family,
                           const std::vector<std::vector<Rat>>& param_sets) {
  if (family.k != family.d + 1)
    throw DimensionMismatch("affine_reduce needs k == d + 1 (project first)");
  if (static_cast<int>(param_sets.size()) != family.k)
    throw DimensionMismatch("one parameter set per curve required");
  const int k = family.k, d = family.d;
  // rows (1, f_{i,1}(x_i), ..., f_{i,d}(x_i))
  std::vector<std::vector<MultiPoly>> m(k, std::vector<MultiPoly>(k, MultiPoly::zero(k)));
  for (int i = 0; i < k; ++i) {
    m[i][0] = MultiPoly::constant(k, 1);
    for (int j = 0; j < d; ++j) {
      if (static_cast<int>(family.params[i].size()) != d)
        throw DimensionMismatch("curve parameterization has wrong dimension");
      m[i][j + 1] = family.params[i][j].relabeled({i}, k);
    }
  }
  KPolInstance inst;
  inst.k = k;
  inst.F = laplace_det(m, PolyRingOps{k});
  inst.sets = param_sets;
  for (auto& s : inst.sets) std::sort(s.begin(), s.end());
  inst.family = "affine";
  return inst;
}

std::vector<std::vector<Rat>> generic_project(const std::vector<std::vector<Rat>>& points,
                                              int target_dim, std::uint64_t seed) {
  if (points.empty()) return {};
  const int d = static_cast<int>(points.front().size());
  if (target_dim > d || target_dim < 1) throw DimensionMismatch("target_dim must be in [1, d]");
  for (const auto& p : points)
    if (static_cast<int>(p.size()) != d) throw DimensionMismatch("ragged point set");
  if (target_dim == d) return points;

  Rng rng(seed);
  std::vector<std::vector<Rat>> map(target_dim, std::vector<Rat>(d));
  for (auto& row : map)
    for (auto& c : row) c = Rat(rng.int_in(-19, 19));
  std::vector<std::vector<Rat>> out;
  out.reserve(points.size());
  for (const auto& p : points) {
    std::vector<Rat> q(target_dim, Rat(0));
    for (int i = 0; i < target_dim; ++i)
      for (int j = 0; j < d; ++j) q[i] += map[i][j] * p[j];
    out.push_back(std::move(q));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Serialization
// ---------------------------------------------------------------------------

std::string instance_to_json(const KPolInstance& instance) {
  nlohmann::json j;
  j["k"] = instance.k;
  auto sets = nlohmann::json::array();
  for (const auto& s : instance.sets) {
    auto arr = nlohmann::json::array();
    for (const auto& v : s) arr.push_back(rat_to_string(v));
    sets.push_back(arr);
  }
  j["sets"] = sets;
  j["poly"] = instance.F.to_string();
  j["meta"] = {{"seed", instance.seed}, {"family", instance.family}};
  return j.dump(2) + "\n";
}

KPolInstance instance_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const std::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  KPolInstance inst;
  try {
    inst.k = j.at("k").get<int>();
    for (const auto& arr : j.at("sets")) {
      std::vector<Rat> s;
      for (const auto& tok : arr) s.push_back(parse_rat(tok.get<std::string>()));
      inst.sets.push_back(std::move(s));
    }
    inst.F = parse_poly(j.at("poly").get<std::string>(), inst.k);
    if (j.contains("meta")) {
      inst.seed = j["meta"].value("seed", std::uint64_t{0});
      inst.family = j["meta"].value("family", std::string{});
    }
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception& e) {
    throw ParseError(std::string("bad instance file: ") + e.what());
  }
  inst.validate();
  return inst;
}

void save_instance(const KPolInstance& instance, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open '" + path + "' for writing");
  out << instance_to_json(instance);
}

KPolInstance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return instance_from_json(ss.str());
}

// ---------------------------------------------------------------------------
// Named families
// ---------------------------------------------------------------------------

MultiPoly family_poly(const std::string& family, int k) {
  if (family == "ksum") {
    MultiPoly F(k);
    MultiPoly::Exponents e(k, 0);
    for (int i = 0; i < k; ++i) {
      e.assign(k, 0);
      e[i] = 1;
      F.add_term(e, Rat(1));
    }
    return F;
  }
  if (family == "hyper") {
    if (k != 4) throw InvalidRange("family 'hyper' needs k = 4");
    return parse_poly("1 * x1^1 x2^1 + 1 * x3^1 + 1 * x4^1", 4);
  }
  if (family == "circle") {
    if (k != 4) throw InvalidRange("family 'circle' needs k = 4");
    // (x1 - x3)^2 + (x2 - x4)^2 - 1
    auto d1 = parse_poly("1 * x1^1 - 1 * x3^1", 4);
    auto d2 = parse_poly("1 * x2^1 - 1 * x4^1", 4);
    return d1 * d1 + d2 * d2 - MultiPoly::constant(4, 1);
  }
  if (family == "circle5") {
    if (k != 5) throw InvalidRange("family 'circle5' needs k = 5");
    auto d1 = parse_poly("1 * x1^1 - 1 * x3^1", 5);
    auto d2 = parse_poly("1 * x2^1 - 1 * x4^1", 5);
    auto r = parse_poly("1 * x5^1", 5);
    return d1 * d1 + d2 * d2 - r * r;
  }
  throw InvalidRange("unknown polynomial family '" + family + "'");
}

KPolInstance make_family_instance(const std::string& family, int k, int n, std::uint64_t seed,
                                  long value_lo, long value_hi) {
  if (family == "random") return generate_random(k, n, 3, -4, 4, value_lo, value_hi, seed);
  if (family == "planted") {
    // random F with the x_k terms replaced by a bare x_k, so the planted
    // root always exists and is rational
    auto inst = generate_random(k, n, 3, -4, 4, value_lo, value_hi, seed);
    inst.F = inst.F.substitute({{k - 1, Rat(0)}}) + MultiPoly::variable(k, k - 1);
    for (int i = 0; i + 1 < k; ++i)
      if (!inst.F.depends_on(i)) {
        MultiPoly::Exponents ei(k, 0);
        ei[i] = 1;
        inst.F.add_term(ei, Rat(1));
      }
    if (n == 0) return inst;
    return plant_solution(inst, seed ^ 0x9e3779b97f4a7c15ULL);
  }
  Rng rng(seed);
  KPolInstance inst;
  inst.k = k;
  inst.seed = seed;
  inst.family = family;
  inst.F = family_poly(family, k);
  inst.sets.resize(k);
  for (int i = 0; i < k; ++i) {
    long lo = value_lo, hi = value_hi;
    if (family == "circle5" && i == 4) lo = 1;  // radii stay positive
    for (int j = 0; j < n; ++j) inst.sets[i].emplace_back(rng.int_in(lo, hi));
    std::sort(inst.sets[i].begin(), inst.sets[i].end());
  }
  return inst;
}

CurveFamily figure_curves() {
  CurveFamily fam;
  fam.d = 2;
  fam.k = 3;
  fam.params.resize(3);
  MultiPoly t = MultiPoly::variable(1, 0);
  for (int i = 0; i < 3; ++i) fam.params[i].push_back(t);  // f_{i,1}(t) = t
  fam.params[0].push_back(t * t.scaled(Rat(1, 5)) + MultiPoly::constant(1, 2));   // t^2/5 + 2
  fam.params[1].push_back(t * t * t.scaled(Rat(1, 5)));                           // t^3/5
  fam.params[2].push_back(t.scaled(Rat(2)) - MultiPoly::constant(1, 4));          // 2t - 4
  return fam;
}

}  // namespace kpol

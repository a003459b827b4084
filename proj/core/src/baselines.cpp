#include "kpol/baselines.hpp"

#include <algorithm>

#include "kpol/algebraic.hpp"
#include "kpol/errors.hpp"

namespace kpol {

std::string SolveResult::csv_fields(const std::string& solver) const {
  std::string w;
  if (witness) w = rat_vec_to_string(witness->tuple);
  return solver + "," + (yes ? "YES" : "NO") + ",\"" + w + "\"," +
         std::to_string(counters.sign_tests) + "," + std::to_string(counters.lookups) + "," +
         std::to_string(counters.ram_ops);
}

namespace {

/// Iterates all index tuples over the given sets in lexicographic order.
/// Returns false when any set is empty.
template <class Fn>
void for_each_tuple(const std::vector<std::vector<Rat>>& sets, int upto, Fn&& fn) {
  for (int i = 0; i < upto; ++i)
    if (sets[i].empty()) return;
  std::vector<std::size_t> idx(upto, 0);
  std::vector<Rat> tuple(upto);
  for (int i = 0; i < upto; ++i) tuple[i] = sets[i][0];
  while (true) {
    if (!fn(tuple)) return;
    int pos = upto - 1;
    while (pos >= 0) {
      if (++idx[pos] < sets[pos].size()) {
        tuple[pos] = sets[pos][idx[pos]];
        break;
      }
      idx[pos] = 0;
      tuple[pos] = sets[pos][0];
      --pos;
    }
    if (pos < 0) return;
  }
}

}  // namespace

SolveResult brute_force(const KPolInstance& instance) {
  SolveResult res;
  for_each_tuple(instance.sets, instance.k, [&](const std::vector<Rat>& tuple) {
    res.counters.sign_tests += 1;
    res.aux["tuples"] += 1;
    if (instance.F.eval(tuple) == 0) {
      res.yes = true;
      res.witness = Witness{tuple};
      return false;
    }
    return true;
  });
  return res;
}

SolveResult naive_solve(const KPolInstance& instance) {
  const int k = instance.k;
  if (k < 2) throw KTooSmall("naive_solve needs k >= 2");
  SolveResult res;
  const auto& ak = instance.sets[k - 1];
  const int last = k - 1;

  for_each_tuple(instance.sets, last, [&](const std::vector<Rat>& prefix) {
    res.aux["substitutions"] += 1;
    std::map<int, Rat> assign;
    for (int i = 0; i < last; ++i) assign.emplace(i, prefix[i]);
    MultiPoly sub = instance.F.substitute(assign);
    res.counters.sign_tests += 1;
    if (res.yes) return true;  // decision settled; substitutions still counted

    if (sub.is_zero()) {
      if (!ak.empty()) {
        res.yes = true;
        Witness w{prefix};
        w.tuple.push_back(ak.front());
        res.witness = w;
      }
      return true;
    }
    QPoly p = sub.to_qpoly(last);
    if (up::degree(p) == 0) return true;  // nonzero constant, no roots
    for (const auto& root : isolate_real_roots(p)) {
      // values of A_k inside the isolating interval (lo, hi]
      auto first = std::upper_bound(ak.begin(), ak.end(), root.lo());
      auto lastit = std::upper_bound(ak.begin(), ak.end(), root.hi());
      res.counters.ram_ops += 1;
      for (auto it = first; it != lastit; ++it) {
        res.counters.sign_tests += 1;
        if (up::eval(p, *it) == 0) {
          res.yes = true;
          Witness w{prefix};
          w.tuple.push_back(*it);
          res.witness = w;
          return true;
        }
      }
    }
    return true;
  });
  return res;
}

SolveResult mitm_ksum(const KPolInstance& instance) {
  if (instance.F != family_poly("ksum", instance.k))
    throw NotPlainSum("mitm_ksum requires F = x1 + ... + xk");
  const int k = instance.k;
  SolveResult res;

  struct Partial {
    Rat sum;
    std::vector<Rat> tuple;
    bool operator<(const Partial& o) const {
      if (sum != o.sum) return sum < o.sum;
      return tuple < o.tuple;
    }
  };
  auto enumerate = [&](int from, int upto) {
    std::vector<Partial> out;
    std::vector<std::vector<Rat>> block(instance.sets.begin() + from, instance.sets.begin() + upto);
    for_each_tuple(block, upto - from, [&](const std::vector<Rat>& tuple) {
      Rat s(0);
      for (const auto& v : tuple) s += v;
      out.push_back({s, tuple});
      res.aux["partial_sums"] += 1;
      return true;
    });
    std::sort(out.begin(), out.end());
    return out;
  };

  auto emit = [&](const Partial& l, const Rat& mid, bool has_mid, const Partial& r) {
    Witness w{l.tuple};
    if (has_mid) w.tuple.push_back(mid);
    w.tuple.insert(w.tuple.end(), r.tuple.begin(), r.tuple.end());
    res.yes = true;
    res.witness = w;
  };

  // scan sorted left sums against negated right sums shifted by -x
  auto scan = [&](const std::vector<Partial>& l, const std::vector<Partial>& r, const Rat& shift,
                  bool has_mid) {
    std::size_t i = 0;
    std::size_t j = r.size();
    while (i < l.size() && j > 0) {
      Rat total = l[i].sum + r[j - 1].sum + shift;
      res.counters.sign_tests += 1;
      if (total == 0) {
        emit(l[i], shift, has_mid, r[j - 1]);
        return true;
      }
      if (total > 0)
        --j;
      else
        ++i;
    }
    return false;
  };

  if (k % 2 == 0) {
    auto left = enumerate(0, k / 2);
    auto right = enumerate(k / 2, k);
    scan(left, right, Rat(0), false);
  } else {
    int half = (k - 1) / 2;
    auto left = enumerate(0, half);
    auto right = enumerate(half + 1, k);
    for (const auto& x : instance.sets[half]) {
      if (scan(left, right, x, true)) break;
    }
  }
  return res;
}

SolveResult mitm_separable(const KPolInstance& instance, const SeparableSplit& split) {
  const int k = instance.k;
  if (split.t < 1 || split.t >= k) throw SplitMismatch("split position out of range");
  for (int i = split.t; i < k; ++i)
    if (split.F1.depends_on(i)) throw SplitMismatch("F1 uses a right-block variable");
  for (int i = 0; i < split.t; ++i)
    if (split.F2.depends_on(i)) throw SplitMismatch("F2 uses a left-block variable");
  if (split.G.compose({split.F1, split.F2}) != instance.F)
    throw SplitMismatch("G(F1, F2) differs from F");

  SolveResult res;
  struct Valued {
    Rat value;
    std::vector<Rat> tuple;
    bool operator<(const Valued& o) const {
      if (value != o.value) return value < o.value;
      return tuple < o.tuple;
    }
  };
  auto enumerate = [&](const MultiPoly& f, int from, int upto, const char* counter) {
    std::vector<Valued> out;
    std::vector<std::vector<Rat>> block(instance.sets.begin() + from, instance.sets.begin() + upto);
    for_each_tuple(block, upto - from, [&](const std::vector<Rat>& tuple) {
      std::vector<Rat> full(k, Rat(0));
      for (int i = 0; i < upto - from; ++i) full[from + i] = tuple[i];
      out.push_back({f.eval(full), tuple});
      res.aux[counter] += 1;
      return true;
    });
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end(),
                          [](const Valued& a, const Valued& b) { return a.value == b.value; }),
              out.end());
    return out;
  };

  auto us = enumerate(split.F1, 0, split.t, "left_values");
  auto vs = enumerate(split.F2, split.t, k, "right_values");
  std::vector<Rat> u_sorted;
  u_sorted.reserve(us.size());
  for (const auto& u : us) u_sorted.push_back(u.value);

  auto emit = [&](const Valued& u, const Valued& v) {
    Witness w{u.tuple};
    w.tuple.insert(w.tuple.end(), v.tuple.begin(), v.tuple.end());
    res.yes = true;
    res.witness = w;
  };

  const QPoly gu_template;  // G(., v) realized per v below
  for (const auto& v : vs) {
    if (res.yes) break;
    MultiPoly gslice = split.G.substitute({{1, v.value}});
    res.counters.sign_tests += 1;
    if (gslice.is_zero()) {
      if (!us.empty()) emit(us.front(), v);
      break;
    }
    QPoly gu = gslice.to_qpoly(0);
    if (up::degree(gu) == 0) continue;
    for (const auto& root : isolate_real_roots(gu)) {
      auto first = std::upper_bound(u_sorted.begin(), u_sorted.end(), root.lo());
      auto last = std::upper_bound(u_sorted.begin(), u_sorted.end(), root.hi());
      for (auto it = first; it != last; ++it) {
        res.counters.sign_tests += 1;
        if (up::eval(gu, *it) == 0) {
          emit(us[static_cast<std::size_t>(it - u_sorted.begin())], v);
          break;
        }
      }
      if (res.yes) break;
    }
  }
  return res;
}

}  // namespace kpol

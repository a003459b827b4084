#include "kpol/kpol_solver.hpp"

#include "kpol/errors.hpp"

namespace kpol {

DimSplit split_dims(int k) {
  if (k < 3) throw KTooSmall("split_dims needs k >= 3");
  if (k % 2 == 0) return {k / 2, k / 2};
  return {(k - 1) / 2, (k + 1) / 2};
}

Rat kpol_exponent(int k) {
  auto [t, s] = split_dims(k);
  return Rat(k - 2) + Rat(k - 2) / Rat(static_cast<long>(s) * t - 1);
}

namespace {

std::vector<std::vector<Rat>> materialize(const std::vector<std::vector<Rat>>& sets, int from,
                                          int upto) {
  std::vector<std::vector<Rat>> out;
  std::size_t total = 1;
  for (int i = from; i < upto; ++i) total *= sets[i].size();
  if (total == 0) return out;
  out.reserve(total);
  std::vector<std::size_t> idx(upto - from, 0);
  while (true) {
    std::vector<Rat> point(upto - from);
    for (int i = 0; i < upto - from; ++i) point[i] = sets[from + i][idx[i]];
    out.push_back(std::move(point));
    int pos = upto - from - 1;
    while (pos >= 0 && ++idx[pos] == sets[from + pos].size()) idx[pos--] = 0;
    if (pos < 0) break;
  }
  return out;
}

}  // namespace

SolveResult kpol_solve(const KPolInstance& instance, const EngineConfig& config) {
  const int k = instance.k;
  auto [t, s] = split_dims(k);

  IncidenceQuery query;
  query.t = t;
  query.s = s;
  query.F = instance.F;
  query.P = materialize(instance.sets, 0, t);
  query.Q = materialize(instance.sets, t, k);

  SolveResult res;
  res.aux["points_p"] = query.P.size();
  res.aux["points_q"] = query.Q.size();

  IncidenceReport report = detect(query, config);
  res.yes = report.yes;
  res.counters = report.counters;
  for (const auto& [key, value] : report.aux) res.aux[key] += value;
  if (report.yes) {
    Witness w;
    w.tuple = query.P[report.witness_p];
    const auto& qv = query.Q[report.witness_q];
    w.tuple.insert(w.tuple.end(), qv.begin(), qv.end());
    res.witness = std::move(w);
  }
  return res;
}

}  // namespace kpol

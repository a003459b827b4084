#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

namespace kpol {

/// Determinant by Laplace expansion along rows, memoized on column subsets.
/// Works over any commutative ring described by Ops (zero/one/add/sub/mul/
/// is_zero). Intended for the small matrices (<= ~12x12) that show up in
/// Sylvester and collinearity determinants.
template <class T, class Ops>
T laplace_det(const std::vector<std::vector<T>>& m, const Ops& ops) {
  const int n = static_cast<int>(m.size());
  if (n == 0) return ops.one();
  std::unordered_map<std::uint32_t, T> memo;

  auto rec = [&](auto&& self, std::uint32_t mask) -> T {
    if (mask == 0) return ops.one();
    auto it = memo.find(mask);
    if (it != memo.end()) return it->second;
    std::vector<int> cols;
    cols.reserve(n);
    for (int j = 0; j < n; ++j)
      if (mask & (1u << j)) cols.push_back(j);
    const int row = n - static_cast<int>(cols.size());
    T acc = ops.zero();
    for (std::size_t idx = 0; idx < cols.size(); ++idx) {
      const T& entry = m[row][cols[idx]];
      if (ops.is_zero(entry)) continue;
      T sub = self(self, mask & ~(1u << cols[idx]));
      T term = ops.mul(entry, sub);
      acc = (idx % 2 == 0) ? ops.add(acc, term) : ops.sub(acc, term);
    }
    memo.emplace(mask, acc);
    return acc;
  };

  return rec(rec, static_cast<std::uint32_t>((1u << n) - 1));
}

}  // namespace kpol

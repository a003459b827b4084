#include "kpol/partition.hpp"

#include <algorithm>
#include <cmath>

#include "kpol/errors.hpp"
#include "kpol/fitting.hpp"

namespace kpol {

BlockGrid BlockGrid::build(const std::vector<std::vector<Rat>>& axis_values, long g) {
  if (g < 1) throw InvalidRange("block size g must be >= 1");
  BlockGrid grid;
  for (const auto& axis : axis_values) {
    if (axis.empty()) throw EmptyAxis("axis with no values");
    std::vector<std::pair<Rat, Rat>> blocks;
    for (std::size_t i = 0; i < axis.size(); i += g) {
      std::size_t j = std::min(axis.size(), i + g);
      blocks.emplace_back(axis[i], axis[j - 1]);
    }
    grid.blocks_.push_back(std::move(blocks));
  }
  return grid;
}

BlockGrid BlockGrid::over_points(const std::vector<std::vector<Rat>>& points,
                                 const std::vector<int>& ids, long target_cells) {
  if (ids.empty()) throw EmptyAxis("grid over an empty point set");
  const int t = static_cast<int>(points[ids.front()].size());
  long per_axis = std::max<long>(
      1, std::lround(std::ceil(std::pow(static_cast<double>(target_cells), 1.0 / t))));
  std::vector<std::vector<Rat>> axes(t);
  for (int a = 0; a < t; ++a) {
    std::vector<Rat> vals;
    vals.reserve(ids.size());
    for (int id : ids) vals.push_back(points[id][a]);
    std::sort(vals.begin(), vals.end());
    vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
    axes[a] = std::move(vals);
  }
  long g = 1;
  for (int a = 0; a < t; ++a) {
    long need = (static_cast<long>(axes[a].size()) + per_axis - 1) / per_axis;
    g = std::max(g, need);
  }
  BlockGrid grid = build(axes, g);
  grid.assign(points, ids);
  return grid;
}

std::size_t BlockGrid::cell_count() const {
  std::size_t n = 1;
  for (const auto& axis : blocks_) n *= axis.size();
  return n;
}

std::vector<RatInterval> BlockGrid::cell_box(std::size_t cell) const {
  std::vector<RatInterval> box(blocks_.size());
  for (std::size_t a = blocks_.size(); a-- > 0;) {
    std::size_t nb = blocks_[a].size();
    std::size_t idx = cell % nb;
    cell /= nb;
    box[a] = RatInterval(blocks_[a][idx].first, blocks_[a][idx].second);
  }
  return box;
}

std::size_t BlockGrid::cell_of(const std::vector<Rat>& point) const {
  std::size_t cell = 0;
  for (std::size_t a = 0; a < blocks_.size(); ++a) {
    const auto& axis = blocks_[a];
    // first block whose max is >= coordinate
    auto it = std::lower_bound(axis.begin(), axis.end(), point[a],
                               [](const std::pair<Rat, Rat>& b, const Rat& v) { return b.second < v; });
    if (it == axis.end()) throw IndexOutOfRange("point coordinate beyond the grid");
    cell = cell * axis.size() + static_cast<std::size_t>(it - axis.begin());
  }
  return cell;
}

void BlockGrid::assign(const std::vector<std::vector<Rat>>& points, const std::vector<int>& ids) {
  points_per_cell_.assign(cell_count(), {});
  for (int id : ids) points_per_cell_[cell_of(points[id])].push_back(id);
}

const std::vector<int>& BlockGrid::cell_points(std::size_t cell) const {
  static const std::vector<int> kEmpty;
  if (points_per_cell_.empty()) return kEmpty;
  return points_per_cell_.at(cell);
}

// ---------------------------------------------------------------------------
// Crossing tests
// ---------------------------------------------------------------------------

namespace {

bool exact_ladder(const MultiPoly& surface, const std::vector<RatInterval>& box, int refine_level,
                  SignTestCounter* counter) {
  if (counter) counter->sign_tests += 1;
  if (!interval_eval(surface, box).contains_zero()) return false;
  if (refine_level <= 0) return true;
  // one bisection round: prune only if every subbox is certified zero-free
  std::vector<RatInterval> sub(box.size());
  const std::size_t n = box.size();
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    for (std::size_t a = 0; a < n; ++a) {
      Rat mid = box[a].mid();
      sub[a] = (mask & (std::size_t{1} << a)) ? RatInterval(mid, box[a].hi)
                                              : RatInterval(box[a].lo, mid);
    }
    if (exact_ladder(surface, sub, refine_level - 1, counter)) return true;
  }
  return false;
}

}  // namespace

bool box_may_contain_zero(const MultiPoly& surface, const std::vector<RatInterval>& box,
                          int refine_level, SignTestCounter* counter) {
  std::vector<DInterval> dbox(box.size());
  for (std::size_t i = 0; i < box.size(); ++i) dbox[i] = DInterval::from_rat_interval(box[i]);
  if (counter) counter->ram_ops += 1;
  if (dinterval_eval(surface, dbox).definitely_excludes_zero()) return false;
  return exact_ladder(surface, box, refine_level, counter);
}

std::vector<std::size_t> crossed_cells(const MultiPoly& surface, const BlockGrid& grid,
                                       SignTestCounter* counter, int refine_level) {
  std::vector<std::size_t> flagged;
  const std::size_t cells = grid.cell_count();
  for (std::size_t c = 0; c < cells; ++c) {
    if (box_may_contain_zero(surface, grid.cell_box(c), refine_level, counter))
      flagged.push_back(c);
  }
  return flagged;
}

CrossingReport measure_crossing_exponent(int t, int degree, const std::vector<long>& grid_sizes,
                                         int trials, std::uint64_t seed) {
  if (trials < 1 || grid_sizes.empty()) throw InvalidRange("need trials >= 1 and grid sizes");
  for (std::size_t i = 1; i < grid_sizes.size(); ++i)
    if (grid_sizes[i] <= grid_sizes[i - 1]) throw InvalidRange("grid sizes must increase");

  CrossingReport report;
  report.seed = seed;
  report.grid_sizes = grid_sizes;
  Rng rng(seed);
  constexpr long kValuesPerBlock = 4;

  for (long m : grid_sizes) {
    double max_c = 0, sum_c = 0;
    for (int trial = 0; trial < trials; ++trial) {
      // random product point set: m*kValuesPerBlock distinct values per axis
      std::vector<std::vector<Rat>> axes(t);
      const long span = 4 * m * kValuesPerBlock;
      for (int a = 0; a < t; ++a) {
        std::vector<Rat> vals;
        while (static_cast<long>(vals.size()) < m * kValuesPerBlock)
          vals.emplace_back(rng.int_in(-span, span));
        std::sort(vals.begin(), vals.end());
        vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
        axes[a] = std::move(vals);
      }
      BlockGrid grid = BlockGrid::build(axes, kValuesPerBlock);

      // random surface anchored at a domain point so its zero set actually
      // sweeps through the grid
      MultiPoly surface(t);
      for (int tries = 0; surface.total_degree() < 1 && tries < 32; ++tries) {
        surface = MultiPoly::zero(t);
        int terms = 2 + static_cast<int>(rng.below(3));
        for (int i = 0; i < terms; ++i) {
          MultiPoly::Exponents e(t, 0);
          int budget = 1 + static_cast<int>(rng.below(degree));
          for (int b = 0; b < budget; ++b) e[rng.below(t)] += 1;
          surface.add_term(e, Rat(rng.int_in(-5, 5)));
        }
      }
      std::vector<Rat> anchor(t);
      for (int a = 0; a < t; ++a) anchor[a] = axes[a][rng.below(axes[a].size())];
      surface = surface - MultiPoly::constant(t, surface.eval(anchor));
      if (surface.is_zero()) continue;

      auto flagged = crossed_cells(surface, grid, nullptr, 1);
      max_c = std::max(max_c, static_cast<double>(flagged.size()));
      sum_c += static_cast<double>(flagged.size());
    }
    report.r_values.push_back(std::pow(static_cast<double>(m), t));
    report.max_crossed.push_back(std::max(1.0, max_c));
    report.mean_crossed.push_back(std::max(1.0, sum_c / trials));
  }

  std::vector<std::pair<double, double>> pts_max, pts_mean;
  for (std::size_t i = 0; i < report.r_values.size(); ++i) {
    pts_max.emplace_back(report.r_values[i], report.max_crossed[i]);
    pts_mean.emplace_back(report.r_values[i], report.mean_crossed[i]);
  }
  report.slope_max = fit_exponent(pts_max);
  report.slope_mean = fit_exponent(pts_mean);
  return report;
}

}  // namespace kpol

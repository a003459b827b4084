#pragma once

#include <cstdint>
#include <vector>

#include "kpol/counters.hpp"
#include "kpol/interval.hpp"
#include "kpol/multipoly.hpp"
#include "kpol/rat.hpp"

namespace kpol {

/// Space-partition contract consumed by the incidence engine: disjoint cells
/// with box regions containing their points, plus an (possibly empty)
/// leftover set that callers must handle pairwise.
class PartitionScheme {
 public:
  virtual ~PartitionScheme() = default;
  virtual int dims() const = 0;
  virtual std::size_t cell_count() const = 0;
  virtual std::vector<RatInterval> cell_box(std::size_t cell) const = 0;
  virtual const std::vector<int>& cell_points(std::size_t cell) const = 0;
  virtual const std::vector<int>& leftover() const = 0;
};

/// Quantile product grid: each axis' distinct sorted values are cut into
/// blocks of g consecutive values (the last block may be smaller); cells are
/// the product boxes [min, max] of the participating blocks. There is never
/// a leftover set.
class BlockGrid : public PartitionScheme {
 public:
  /// axis_values: per axis, sorted distinct values (EmptyAxis if any empty).
  static BlockGrid build(const std::vector<std::vector<Rat>>& axis_values, long g);

  /// Grid over the coordinates of an explicit point set, sized so the number
  /// of cells is roughly `target_cells`; points are assigned to their cells.
  static BlockGrid over_points(const std::vector<std::vector<Rat>>& points,
                               const std::vector<int>& ids, long target_cells);

  /// Bucket points (each coordinate must occur among the axis values).
  void assign(const std::vector<std::vector<Rat>>& points, const std::vector<int>& ids);

  int dims() const override { return static_cast<int>(blocks_.size()); }
  std::size_t cell_count() const override;
  std::size_t axis_blocks(int axis) const { return blocks_[axis].size(); }
  std::vector<RatInterval> cell_box(std::size_t cell) const override;
  const std::vector<int>& cell_points(std::size_t cell) const override;
  const std::vector<int>& leftover() const override { return leftover_; }

  /// Cell index of a point whose coordinates occur among the axis values.
  std::size_t cell_of(const std::vector<Rat>& point) const;

 private:
  // per axis, per block: [min, max] of the block's values
  std::vector<std::vector<std::pair<Rat, Rat>>> blocks_;
  std::vector<std::vector<int>> points_per_cell_;
  std::vector<int> leftover_;  // always empty; here to serve the interface
};

/// Conservative zero-crossing ladder: returns false only when the surface
/// provably does not vanish on the box (fast directed-rounding filter, then
/// exact interval arithmetic, then `refine_level` rounds of box bisection).
/// Each exact interval evaluation increments counter->sign_tests.
bool box_may_contain_zero(const MultiPoly& surface, const std::vector<RatInterval>& box,
                          int refine_level, SignTestCounter* counter);

/// Indices of all cells the zero set of `surface` may cross: a superset of
/// the truly crossed cells, sound for incidence detection. The surface must
/// not be identically zero (callers handle that case).
std::vector<std::size_t> crossed_cells(const MultiPoly& surface, const BlockGrid& grid,
                                       SignTestCounter* counter = nullptr, int refine_level = 1);

/// Empirical crossing-number measurement: random anchored surfaces of the
/// given degree over m^t-cell quantile grids, reporting per-size max/mean
/// crossed-cell counts and the least-squares log-log slopes versus r = m^t.
struct CrossingReport {
  std::vector<long> grid_sizes;         // m values
  std::vector<double> r_values;         // m^t
  std::vector<double> max_crossed;
  std::vector<double> mean_crossed;
  double slope_max = 0.0;
  double slope_mean = 0.0;
  std::uint64_t seed = 0;
};

CrossingReport measure_crossing_exponent(int t, int degree, const std::vector<long>& grid_sizes,
                                         int trials, std::uint64_t seed);

}  // namespace kpol

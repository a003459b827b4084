#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace kpol {

/// Least-squares slope of ln(count) against ln(n). InsufficientData with
/// fewer than two points, NonPositive if any coordinate is <= 0.
double fit_exponent(const std::vector<std::pair<double, double>>& points);

/// One benchmark run. Deterministic except wall_ms.
struct BenchRow {
  long n = 0;
  int k = 0;
  std::string solver;
  std::string family;
  std::uint64_t seed = 0;
  bool decision = false;
  std::uint64_t sign_tests = 0;
  std::uint64_t lookups = 0;
  std::uint64_t ram_ops = 0;
  double wall_ms = 0.0;
};

inline constexpr const char* kBenchCsvHeader =
    "n,k,solver,family,seed,decision,sign_tests,lookups,ram_ops,wall_ms";

std::string bench_row_to_csv(const BenchRow& row);
BenchRow bench_row_from_csv(const std::string& line);

/// Minimal static SVG writer for the log-log scaling plots: one polyline per
/// series plus the fitted slope in the legend.
struct SvgSeries {
  std::string label;
  std::vector<std::pair<double, double>> points;  // (n, count), positive
};
std::string render_loglog_svg(const std::vector<SvgSeries>& series, const std::string& title);

}  // namespace kpol

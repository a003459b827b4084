#include "kpol/fitting.hpp"

#include <cmath>
#include <sstream>

#include "kpol/errors.hpp"

namespace kpol {

double fit_exponent(const std::vector<std::pair<double, double>>& points) {
  if (points.size() < 2) throw InsufficientData("fit_exponent needs at least two points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& [n, count] : points) {
    if (n <= 0 || count <= 0) throw NonPositive("fit_exponent needs positive coordinates");
    double x = std::log(n), y = std::log(count);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double m = static_cast<double>(points.size());
  double denom = m * sxx - sx * sx;
  if (denom == 0) throw InsufficientData("fit_exponent needs distinct n values");
  return (m * sxy - sx * sy) / denom;
}

std::string bench_row_to_csv(const BenchRow& row) {
  std::ostringstream out;
  out << row.n << ',' << row.k << ',' << row.solver << ',' << row.family << ',' << row.seed << ','
      << (row.decision ? "YES" : "NO") << ',' << row.sign_tests << ',' << row.lookups << ','
      << row.ram_ops << ',' << row.wall_ms;
  return out.str();
}

BenchRow bench_row_from_csv(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      fields.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  fields.push_back(cur);
  if (fields.size() != 10) throw ParseError("bench CSV row needs 10 fields");
  BenchRow row;
  try {
    row.n = std::stol(fields[0]);
    row.k = std::stoi(fields[1]);
    row.solver = fields[2];
    row.family = fields[3];
    row.seed = std::stoull(fields[4]);
    if (fields[5] != "YES" && fields[5] != "NO") throw ParseError("bad decision field");
    row.decision = fields[5] == "YES";
    row.sign_tests = std::stoull(fields[6]);
    row.lookups = std::stoull(fields[7]);
    row.ram_ops = std::stoull(fields[8]);
    row.wall_ms = std::stod(fields[9]);
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception&) {
    throw ParseError("malformed bench CSV row: " + line);
  }
  return row;
}

std::string render_loglog_svg(const std::vector<SvgSeries>& series, const std::string& title) {
  constexpr double W = 640, H = 480, PAD = 60;
  double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
  for (const auto& s : series)
    for (const auto& [x, y] : s.points) {
      if (x <= 0 || y <= 0) throw NonPositive("log-log plot needs positive data");
      xmin = std::min(xmin, std::log10(x));
      xmax = std::max(xmax, std::log10(x));
      ymin = std::min(ymin, std::log10(y));
      ymax = std::max(ymax, std::log10(y));
    }
  if (xmax <= xmin) xmax = xmin + 1;
  if (ymax <= ymin) ymax = ymin + 1;
  auto px = [&](double x) { return PAD + (std::log10(x) - xmin) / (xmax - xmin) * (W - 2 * PAD); };
  auto py = [&](double y) { return H - PAD - (std::log10(y) - ymin) / (ymax - ymin) * (H - 2 * PAD); };

  static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};
  std::ostringstream svg;
  svg << "<svg xmlns='http://www.w3.org/2000/svg' width='" << W << "' height='" << H << "'>\n";
  svg << "<rect width='100%' height='100%' fill='white'/>\n";
  svg << "<text x='" << W / 2 << "' y='24' text-anchor='middle' font-size='16'>" << title
      << "</text>\n";
  svg << "<line x1='" << PAD << "' y1='" << H - PAD << "' x2='" << W - PAD << "' y2='" << H - PAD
      << "' stroke='black'/>\n";
  svg << "<line x1='" << PAD << "' y1='" << PAD << "' x2='" << PAD << "' y2='" << H - PAD
      << "' stroke='black'/>\n";
  for (std::size_t i = 0; i < series.size(); ++i) {
    const char* color = colors[i % 6];
    svg << "<polyline fill='none' stroke='" << color << "' stroke-width='1.5' points='";
    for (const auto& [x, y] : series[i].points) svg << px(x) << ',' << py(y) << ' ';
    svg << "'/>\n";
    for (const auto& [x, y] : series[i].points)
      svg << "<circle cx='" << px(x) << "' cy='" << py(y) << "' r='3' fill='" << color << "'/>\n";
    double slope = series[i].points.size() >= 2 ? fit_exponent(series[i].points) : 0.0;
    svg << "<text x='" << W - PAD + 4 << "' y='" << PAD + 18 * i << "' font-size='11' fill='"
        << color << "' text-anchor='end'>" << series[i].label << " (slope " << slope
        << ")</text>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace kpol

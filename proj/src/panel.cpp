#include "hpf/panel.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <set>
#include <sstream>

#include "hpf/design.hpp"
#include "hpf/errors.hpp"
#include "hpf/kernels.hpp"

namespace hpf {

namespace {

constexpr double kMissing = std::numeric_limits<double>::quiet_NaN();

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::stringstream ss(line);
  while (std::getline(ss, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double parse_cell(const std::string& raw, int line_no,
                  const std::string& column) {
  const std::string s = trim(raw);
  if (s.empty()) return kMissing;
  std::size_t pos = 0;
  double v = 0;
  try {
    v = std::stod(s, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos != s.size())
    throw DataError("non-numeric cell '" + s + "' in column '" + column +
                    "' at line " + std::to_string(line_no));
  return v;
}

}  // namespace

std::optional<double> CountrySeries::value(const std::string& variable,
                                           int year) const {
  auto it = values.find(variable);
  if (it == values.end()) return std::nullopt;
  auto y = std::lower_bound(years.begin(), years.end(), year);
  if (y == years.end() || *y != year) return std::nullopt;
  const double v = it->second[static_cast<std::size_t>(y - years.begin())];
  if (std::isnan(v)) return std::nullopt;
  return v;
}

const CountrySeries* PanelDataset::find(const std::string& code) const {
  for (const auto& c : countries)
    if (c.code == code) return &c;
  return nullptr;
}

const std::vector<std::string>& default_schema() {
  static const std::vector<std::string> schema = {
      "hp_growth", "cpi",           "gdp_growth", "i_short",
      "i_long",    "stock_return",  "credit_growth",
      "pop_growth", "price_rent",   "vxo"};
  return schema;
}

PanelDataset load_panel(std::istream& csv,
                        const std::vector<std::string>& schema) {
  std::string line;
  if (!std::getline(csv, line)) throw DataError("empty CSV input");
  if (!line.empty() && line.front() == '\xEF' && line.size() >= 3)
    line = line.substr(3);  // strip UTF-8 BOM

  const auto header = split_csv_line(line);
  std::vector<std::string> names;
  names.reserve(header.size());
  for (const auto& h : header) names.push_back(trim(h));

  auto col_of = [&](const std::string& name) {
    auto it = std::find(names.begin(), names.end(), name);
    if (it == names.end())
      throw DataError("missing required column '" + name + "' in header");
    return static_cast<int>(it - names.begin());
  };
  const int country_col = col_of("country");
  const int year_col = col_of("year");
  std::vector<int> var_cols;
  for (const auto& v : schema) var_cols.push_back(col_of(v));
  if (names.size() != schema.size() + 2) {
    for (const auto& n : names) {
      if (n != "country" && n != "year" &&
          std::find(schema.begin(), schema.end(), n) == schema.end())
        throw DataError("unexpected column '" + n + "' in header");
    }
  }

  struct Obs {
    int year;
    std::vector<double> values;
  };
  std::map<std::string, std::vector<Obs>> by_country;
  std::set<std::pair<std::string, int>> seen;

  int line_no = 1;
  while (std::getline(csv, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto cells = split_csv_line(line);
    if (cells.size() != names.size())
      throw DataError("line " + std::to_string(line_no) + " has " +
                      std::to_string(cells.size()) + " cells, expected " +
                      std::to_string(names.size()));
    const std::string country = trim(cells[country_col]);
    if (country.empty())
      throw DataError("empty country at line " + std::to_string(line_no));
    const double y = parse_cell(cells[year_col], line_no, "year");
    if (std::isnan(y) || y != std::floor(y))
      throw DataError("bad year at line " + std::to_string(line_no));
    const int year = static_cast<int>(y);
    if (!seen.insert({country, year}).second)
      throw DataError("duplicate observation for " + country + "/" +
                      std::to_string(year) + " at line " +
                      std::to_string(line_no));
    Obs obs;
    obs.year = year;
    obs.values.reserve(schema.size());
    for (std::size_t v = 0; v < schema.size(); ++v)
      obs.values.push_back(parse_cell(cells[var_cols[v]], line_no, schema[v]));
    by_country[country].push_back(std::move(obs));
  }
  if (by_country.empty()) throw DataError("CSV contains no data rows");

  PanelDataset panel;
  panel.variable_names = schema;
  for (auto& [code, rows] : by_country) {
    std::sort(rows.begin(), rows.end(),
              [](const Obs& a, const Obs& b) { return a.year < b.year; });
    CountrySeries series;
    series.code = code;
    for (const auto& v : schema) series.values[v] = {};
    for (const auto& obs : rows) {
      series.years.push_back(obs.year);
      for (std::size_t v = 0; v < schema.size(); ++v)
        series.values[schema[v]].push_back(obs.values[v]);
    }
    panel.countries.push_back(std::move(series));
  }
  // std::map iteration already gives countries sorted by code
  return panel;
}

PanelDataset load_panel_file(const std::string& path,
                             const std::vector<std::string>& schema) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open data file: " + path);
  return load_panel(in, schema);
}

namespace {

Moments moments_of(const std::vector<double>& v) {
  Moments m;
  m.n = static_cast<int>(v.size());
  if (v.empty()) return m;
  m.mean = kernels::sum(v.data(), v.size()) / static_cast<double>(v.size());
  m.min = *std::min_element(v.begin(), v.end());
  m.max = *std::max_element(v.begin(), v.end());
  if (v.size() > 1) {
    double ss = 0;
    for (double x : v) ss += (x - m.mean) * (x - m.mean);
    m.sd = std::sqrt(ss / static_cast<double>(v.size() - 1));
  }
  return m;
}

}  // namespace

SummaryStats summary_stats(const DesignMatrix& design,
                           const PanelDataset& panel) {
  if (design.n_rows() < 2)
    throw DataError("degenerate sample: need at least 2 design rows");

  SummaryStats stats;

  for (const auto& name : panel.variable_names) {
    std::vector<double> pooled;
    for (const auto& c : panel.countries) {
      auto it = c.values.find(name);
      if (it == c.values.end()) continue;
      for (double v : it->second)
        if (!std::isnan(v)) pooled.push_back(v);
    }
    stats.variables.emplace_back(name, moments_of(pooled));
  }

  const std::string& target = target_variable();
  for (const auto& c : panel.countries) {
    std::vector<double> vals;
    auto it = c.values.find(target);
    if (it != c.values.end())
      for (double v : it->second)
        if (!std::isnan(v)) vals.push_back(v);
    stats.by_country.emplace_back(c.code, moments_of(vals));
  }

  const auto& y = design.targets;
  stats.target = moments_of(y);
  const double n = static_cast<double>(y.size());
  double m2 = 0, m3 = 0, m4 = 0;
  for (double v : y) {
    const double d = v - stats.target.mean;
    m2 += d * d;
    m3 += d * d * d;
    m4 += d * d * d * d;
  }
  m2 /= n;
  m3 /= n;
  m4 /= n;
  if (m2 > 0) {
    stats.target_skewness = m3 / std::pow(m2, 1.5);
    stats.target_kurtosis = m4 / (m2 * m2);
    stats.higher_moments_defined = true;
  }
  return stats;
}

std::vector<double> kernel_density(const std::vector<double>& values,
                                   double bandwidth,
                                   const std::vector<double>& grid) {
  if (values.empty()) throw DataError("kernel_density: empty sample");
  if (!(bandwidth > 0))
    throw ConfigError("kernel_density: bandwidth must be positive");
  std::vector<double> out(grid.size(), 0.0);
  kernels::kde_accumulate(values.data(), values.size(), grid.data(),
                          grid.size(), 1.0 / bandwidth, out.data());
  const double norm =
      1.0 / (static_cast<double>(values.size()) * bandwidth *
             std::sqrt(2.0 * 3.14159265358979323846));
  for (double& v : out) v *= norm;
  return out;
}

double silverman_bandwidth(const std::vector<double>& values) {
  if (values.size() < 2)
    throw DataError("silverman_bandwidth: need at least 2 values");
  const Moments m = moments_of(values);
  std::vector<double> sorted = values;
  std::sort(sorted.begin(), sorted.end());
  auto quantile = [&](double q) {
    const double pos = q * static_cast<double>(sorted.size() - 1);
    const std::size_t lo = static_cast<std::size_t>(pos);
    const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    return sorted[lo] * (1.0 - frac) + sorted[hi] * frac;
  };
  const double iqr = quantile(0.75) - quantile(0.25);
  double spread = m.sd;
  if (iqr > 0) spread = std::min(spread, iqr / 1.34);
  const double h =
      0.9 * spread * std::pow(static_cast<double>(values.size()), -0.2);
  if (!(h > 0))
    throw DataError("silverman_bandwidth: degenerate (constant) sample");
  return h;
}

std::vector<double> kde_default_grid(const std::vector<double>& values,
                                     double bandwidth, int points) {
  if (values.empty()) throw DataError("kde_default_grid: empty sample");
  if (points < 2) throw ConfigError("kde_default_grid: need >= 2 points");
  const double lo =
      *std::min_element(values.begin(), values.end()) - 4.0 * bandwidth;
  const double hi =
      *std::max_element(values.begin(), values.end()) + 4.0 * bandwidth;
  std::vector<double> grid(static_cast<std::size_t>(points));
  const double step = (hi - lo) / static_cast<double>(points - 1);
  for (int i = 0; i < points; ++i)
    grid[static_cast<std::size_t>(i)] = lo + step * i;
  return grid;
}

}  // namespace hpf

#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace hpf {

/// Annual series for one country. Missing observations are stored as NaN so
/// vectors stay aligned with `years`.
struct CountrySeries {
  std::string code;                                  // e.g. "BEL"
  std::vector<int> years;                            // strictly increasing
  std::map<std::string, std::vector<double>> values; // name -> per-year value

  std::optional<double> value(const std::string& variable, int year) const;
};

struct PanelDataset {
  std::vector<CountrySeries> countries;  // sorted by code
  std::vector<std::string> variable_names;  // target first, then 10 predictors

  const CountrySeries* find(const std::string& code) const;
};

/// Column order of the long-format CSV after `country,year`. The first entry
/// is both the target (next-year value) and the momentum predictor
/// (current-year value).
const std::vector<std::string>& default_schema();

/// Name of the target/momentum series in the schema.
inline const std::string& target_variable() {
  static const std::string name = "hp_growth";
  return name;
}

/// Parse a long-format CSV (`country,year,<variables...>`). Empty cells are
/// missing. Rejects duplicate (country, year) pairs and non-numeric cells
/// with the offending location in the message.
PanelDataset load_panel(std::istream& csv,
                        const std::vector<std::string>& schema =
                            default_schema());
PanelDataset load_panel_file(const std::string& path,
                             const std::vector<std::string>& schema =
                                 default_schema());

struct Moments {
  double mean = 0, sd = 0, min = 0, max = 0;
  int n = 0;
};

struct SummaryStats {
  // Pooled stats per variable, computed over every observed panel value.
  std::vector<std::pair<std::string, Moments>> variables;
  // Target-series stats per country.
  std::vector<std::pair<std::string, Moments>> by_country;
  // Pooled moments of the supervised target column.
  Moments target;
  double target_skewness = 0;   // standardized 3rd moment
  double target_kurtosis = 0;   // standardized 4th moment (Gaussian = 3)
  bool higher_moments_defined = false;  // false when the target is constant
};

class DesignMatrix;

/// Descriptive statistics: pooled target moments come from the design rows,
/// per-variable and per-country blocks from the raw panel.
SummaryStats summary_stats(const DesignMatrix& design,
                           const PanelDataset& panel);

/// Gaussian kernel density estimate of `values` evaluated at `grid`.
std::vector<double> kernel_density(const std::vector<double>& values,
                                   double bandwidth,
                                   const std::vector<double>& grid);

/// Silverman's rule-of-thumb bandwidth: 0.9 * min(sd, IQR/1.34) * n^(-1/5).
/// Throws DataError for degenerate samples (bandwidth would be 0).
double silverman_bandwidth(const std::vector<double>& values);

/// Evenly spaced grid spanning [min - 4h, max + 4h] of the data.
std::vector<double> kde_default_grid(const std::vector<double>& values,
                                     double bandwidth, int points = 512);

}  // namespace hpf

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace hpf {

struct PanelDataset;

/// Supervised rows: year-t predictors against year-(t+1) target. Stored as a
/// flat row-major feature block; immutable in practice after construction.
class DesignMatrix {
 public:
  std::vector<std::string> feature_names;
  std::vector<std::string> countries;  // per row
  std::vector<int> years;              // per row, the predictor year t
  std::vector<double> features;        // n * p, row-major
  std::vector<double> targets;         // n
  bool dummy_mode = false;

  int n_rows() const { return static_cast<int>(targets.size()); }
  int n_features() const { return static_cast<int>(feature_names.size()); }

  std::span<const double> row(int i) const {
    return {features.data() + static_cast<std::size_t>(i) * feature_names.size(),
            feature_names.size()};
  }

  void add_row(std::string country, int year, std::span<const double> x,
               double target);

  int feature_index(const std::string& name) const;  // -1 if absent

  /// FNV-1a over feature names and row count; stored in fitted models so a
  /// reloaded model can be matched to the design it came from.
  std::uint64_t fingerprint() const;
};

/// Build the supervised design from a panel: momentum (current-year target
/// value) plus the nine other predictors at year t, target at year t+1.
/// Rows with any missing predictor or missing target are dropped. With
/// dummy_mode, one 0/1 column per country is appended.
DesignMatrix build_design(const PanelDataset& panel, bool dummy_mode = false);

/// Per-feature means of the design block (conditioning vector for effects).
std::vector<double> feature_means(const DesignMatrix& design);

/// Empirical quantile (linear interpolation) of one feature column.
double feature_quantile(const DesignMatrix& design, int feature, double q);

}  // namespace hpf

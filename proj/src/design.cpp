#include "hpf/design.hpp"

#include <algorithm>
#include <cmath>

#include "hpf/errors.hpp"
#include "hpf/kernels.hpp"
#include "hpf/panel.hpp"

namespace hpf {

void DesignMatrix::add_row(std::string country, int year,
                           std::span<const double> x, double target) {
  if (x.size() != feature_names.size())
    throw ConfigError("add_row: feature length mismatch");
  countries.push_back(std::move(country));
  years.push_back(year);
  features.insert(features.end(), x.begin(), x.end());
  targets.push_back(target);
}

int DesignMatrix::feature_index(const std::string& name) const {
  auto it = std::find(feature_names.begin(), feature_names.end(), name);
  return it == feature_names.end()
             ? -1
             : static_cast<int>(it - feature_names.begin());
}

std::uint64_t DesignMatrix::fingerprint() const {
  std::uint64_t h = 1469598103934665603ull;
  auto mix = [&](const void* data, std::size_t len) {
    const unsigned char* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < len; ++i) {
      h ^= p[i];
      h *= 1099511628211ull;
    }
  };
  for (const auto& name : feature_names) mix(name.data(), name.size());
  const std::uint64_t n = static_cast<std::uint64_t>(n_rows());
  mix(&n, sizeof n);
  return h;
}

DesignMatrix build_design(const PanelDataset& panel, bool dummy_mode) {
  const std::string& target = target_variable();

  DesignMatrix design;
  design.dummy_mode = dummy_mode;
  design.feature_names.push_back("momentum");
  for (const auto& v : panel.variable_names)
    if (v != target) design.feature_names.push_back(v);
  const std::size_t base_p = design.feature_names.size();
  if (dummy_mode)
    for (const auto& c : panel.countries)
      design.feature_names.push_back("dummy_" + c.code);

  std::vector<double> x(design.feature_names.size());
  for (std::size_t ci = 0; ci < panel.countries.size(); ++ci) {
    const auto& c = panel.countries[ci];
    for (std::size_t yi = 0; yi < c.years.size(); ++yi) {
      const int year = c.years[yi];
      // predictors at t, target at t+1; both calendar years must be present
      if (yi + 1 >= c.years.size() || c.years[yi + 1] != year + 1) continue;
      bool usable = true;
      std::size_t f = 0;
      auto put = [&](double v) {
        if (std::isnan(v)) usable = false;
        x[f++] = v;
      };
      put(c.values.at(target)[yi]);  // momentum
      for (const auto& v : panel.variable_names)
        if (v != target) put(c.values.at(v)[yi]);
      const double y_next = c.values.at(target)[yi + 1];
      if (std::isnan(y_next)) usable = false;
      if (!usable) continue;
      if (dummy_mode) {
        for (std::size_t d = 0; d < panel.countries.size(); ++d)
          x[base_p + d] = (d == ci) ? 1.0 : 0.0;
      }
      design.add_row(c.code, year, x, y_next);
    }
  }
  if (design.n_rows() == 0)
    throw DataError(
        "empty design: no country has two consecutive fully observed years");
  return design;
}

std::vector<double> feature_means(const DesignMatrix& design) {
  const int n = design.n_rows();
  const int p = design.n_features();
  if (n == 0) throw DataError("feature_means: empty design");
  std::vector<double> means(static_cast<std::size_t>(p), 0.0);
  for (int i = 0; i < n; ++i) {
    const auto row = design.row(i);
    for (int j = 0; j < p; ++j) means[static_cast<std::size_t>(j)] += row[static_cast<std::size_t>(j)];
  }
  for (double& m : means) m /= static_cast<double>(n);
  return means;
}

double feature_quantile(const DesignMatrix& design, int feature, double q) {
  if (feature < 0 || feature >= design.n_features())
    throw ConfigError("feature_quantile: feature index out of range");
  if (!(q >= 0.0 && q <= 1.0))
    throw ConfigError("feature_quantile: q must be in [0, 1]");
  const int n = design.n_rows();
  if (n == 0) throw DataError("feature_quantile: empty design");
  std::vector<double> col(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    col[static_cast<std::size_t>(i)] = design.row(i)[static_cast<std::size_t>(feature)];
  std::sort(col.begin(), col.end());
  const double pos = q * static_cast<double>(n - 1);
  const std::size_t lo = static_cast<std::size_t>(pos);
  const std::size_t hi = std::min(lo + 1, col.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return col[lo] * (1.0 - frac) + col[hi] * frac;
}

}  // namespace hpf

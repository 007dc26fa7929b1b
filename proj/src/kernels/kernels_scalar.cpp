#include <cmath>

#include "hpf/kernels.hpp"

namespace hpf::kernels::scalar {

double sum(const double* x, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += x[i];
  return acc;
}

double sumsq(const double* x, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += x[i] * x[i];
  return acc;
}

double dot(const double* a, const double* b, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += a[i] * b[i];
  return acc;
}

double sq_err_sum(const double* pred, const double* actual, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double e = pred[i] - actual[i];
    acc += e * e;
  }
  return acc;
}

double abs_err_sum(const double* pred, const double* actual, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += std::fabs(pred[i] - actual[i]);
  return acc;
}

SweepBest split_sweep(const double* prefix, const unsigned char* valid,
                      int n) {
  SweepBest best;
  const double total = prefix[n];
  const double dn = static_cast<double>(n);
  for (int i = 1; i < n; ++i) {
    if (!valid[i]) continue;
    const double ls = prefix[i];
    const double rs = total - ls;
    const double di = static_cast<double>(i);
    const double g = (ls * ls) / di + (rs * rs) / (dn - di);
    if (best.index < 0 || g > best.score) {
      best.index = i;
      best.score = g;
    }
  }
  return best;
}

void kde_accumulate(const double* values, std::size_t n, const double* grid,
                    std::size_t m, double inv_bandwidth, double* out) {
  for (std::size_t j = 0; j < m; ++j) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double z = (grid[j] - values[i]) * inv_bandwidth;
      acc += std::exp(-0.5 * z * z);
    }
    out[j] += acc;
  }
}

}  // namespace hpf::kernels::scalar

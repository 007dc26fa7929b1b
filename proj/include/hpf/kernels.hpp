#pragma once

#include <cstddef>
#include <cstdint>
#include <span>

namespace hpf::kernels {

/// Numeric inner loops used across the library. Every kernel has a scalar
/// reference implementation; on x86-64 an AVX2 variant is compiled in and
/// selected at runtime. `split_sweep` is bit-identical across backends (each
/// candidate position is evaluated with the same operation sequence); the
/// reductions may differ in the last ulps because SIMD changes accumulation
/// order.
enum class Backend { scalar, avx2 };

Backend active_backend();
const char* backend_name(Backend b);
bool backend_supported(Backend b);

/// Force a backend (e.g. for reproducing a run on different hardware).
/// Throws ConfigError if unsupported on this machine. The HPF_KERNELS
/// environment variable ("scalar" or "avx2") has the same effect at startup.
void force_backend(Backend b);

struct SweepBest {
  int index = -1;     // split position in [1, n-1]; -1 when no valid position
  double score = 0.0; // sum_left^2/n_left + sum_right^2/n_right at index
};

double sum(const double* x, std::size_t n);
double sumsq(const double* x, std::size_t n);
double dot(const double* a, const double* b, std::size_t n);
/// sum of (pred[i] - actual[i])^2
double sq_err_sum(const double* pred, const double* actual, std::size_t n);
/// sum of |pred[i] - actual[i]|
double abs_err_sum(const double* pred, const double* actual, std::size_t n);

/// Argmax over split positions of the between-groups score
///   g(i) = prefix[i]^2 / i + (prefix[n] - prefix[i])^2 / (n - i)
/// for i in [1, n-1] with valid[i] != 0. `prefix` has n+1 entries,
/// prefix[i] = sum of the first i (mean-centered) targets in sorted order.
/// Maximizing g minimizes the post-split sum of squared errors. Ties resolve
/// to the lowest index in both backends.
SweepBest split_sweep(const double* prefix, const unsigned char* valid, int n);

/// out[j] += sum_i exp(-0.5 * ((grid[j] - values[i]) * inv_bandwidth)^2).
/// The AVX2 variant uses a vectorized exp accurate to a few ulps, so results
/// agree with scalar to ~1e-13 relative, not bitwise.
void kde_accumulate(const double* values, std::size_t n, const double* grid,
                    std::size_t m, double inv_bandwidth, double* out);

inline double sum(std::span<const double> x) { return sum(x.data(), x.size()); }
inline double sumsq(std::span<const double> x) {
  return sumsq(x.data(), x.size());
}
inline double dot(std::span<const double> a, std::span<const double> b) {
  return dot(a.data(), b.data(), a.size());
}

// Scalar reference implementations, always available; the equivalence tests
// compare the dispatched kernels against these.
namespace scalar {
double sum(const double* x, std::size_t n);
double sumsq(const double* x, std::size_t n);
double dot(const double* a, const double* b, std::size_t n);
double sq_err_sum(const double* pred, const double* actual, std::size_t n);
double abs_err_sum(const double* pred, const double* actual, std::size_t n);
SweepBest split_sweep(const double* prefix, const unsigned char* valid, int n);
void kde_accumulate(const double* values, std::size_t n, const double* grid,
                    std::size_t m, double inv_bandwidth, double* out);
}  // namespace scalar

}  // namespace hpf::kernels

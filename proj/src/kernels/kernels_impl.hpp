#pragma once

#include "hpf/kernels.hpp"

// Internal declarations for the SIMD variants; only referenced by the
// dispatcher when the matching HPF_BUILD_* macro is defined.
namespace hpf::kernels::avx2 {
double sum(const double* x, std::size_t n);
double sumsq(const double* x, std::size_t n);
double dot(const double* a, const double* b, std::size_t n);
double sq_err_sum(const double* pred, const double* actual, std::size_t n);
double abs_err_sum(const double* pred, const double* actual, std::size_t n);
SweepBest split_sweep(const double* prefix, const unsigned char* valid, int n);
void kde_accumulate(const double* values, std::size_t n, const double* grid,
                    std::size_t m, double inv_bandwidth, double* out);
}  // namespace hpf::kernels::avx2

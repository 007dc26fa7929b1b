#include <immintrin.h>

#include <cmath>
#include <limits>

#include "kernels_impl.hpp"

namespace hpf::kernels::avx2 {

namespace {

inline double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  __m128d shuf = _mm_unpackhi_pd(lo, lo);
  return _mm_cvtsd_f64(_mm_add_sd(lo, shuf));
}

// exp(x) for doubles, Cephes-style rational approximation (~2 ulp).
// Arguments below -708.4 flush to zero; large positive arguments overflow to
// +inf through the exponent scaling.
inline __m256d exp_pd(__m256d x) {
  const __m256d lo_cut = _mm256_set1_pd(-708.396418532264106);
  const __m256d underflow = _mm256_cmp_pd(x, lo_cut, _CMP_LT_OQ);
  x = _mm256_max_pd(x, lo_cut);

  const __m256d log2e = _mm256_set1_pd(1.44269504088896340736);
  __m256d px = _mm256_floor_pd(
      _mm256_add_pd(_mm256_mul_pd(log2e, x), _mm256_set1_pd(0.5)));
  const __m128i n32 = _mm256_cvttpd_epi32(px);

  // x -= px * ln2, ln2 split in two parts for accuracy
  x = _mm256_sub_pd(x, _mm256_mul_pd(px, _mm256_set1_pd(6.93145751953125e-1)));
  x = _mm256_sub_pd(
      x, _mm256_mul_pd(px, _mm256_set1_pd(1.42860682030941723212e-6)));

  const __m256d xx = _mm256_mul_pd(x, x);
  __m256d p = _mm256_set1_pd(1.26177193074810590878e-4);
  p = _mm256_add_pd(_mm256_mul_pd(p, xx),
                    _mm256_set1_pd(3.02994407707441961300e-2));
  p = _mm256_add_pd(_mm256_mul_pd(p, xx),
                    _mm256_set1_pd(9.99999999999999999910e-1));
  p = _mm256_mul_pd(p, x);

  __m256d q = _mm256_set1_pd(3.00198505138664455042e-6);
  q = _mm256_add_pd(_mm256_mul_pd(q, xx),
                    _mm256_set1_pd(2.52448340349684104192e-3));
  q = _mm256_add_pd(_mm256_mul_pd(q, xx),
                    _mm256_set1_pd(2.27265548208155028766e-1));
  q = _mm256_add_pd(_mm256_mul_pd(q, xx), _mm256_set1_pd(2.0));

  __m256d r = _mm256_div_pd(p, _mm256_sub_pd(q, p));
  r = _mm256_add_pd(_mm256_set1_pd(1.0), _mm256_add_pd(r, r));

  // scale by 2^n via the exponent field
  __m256i n64 = _mm256_cvtepi32_epi64(n32);
  n64 = _mm256_slli_epi64(_mm256_add_epi64(n64, _mm256_set1_epi64x(1023)), 52);
  r = _mm256_mul_pd(r, _mm256_castsi256_pd(n64));
  return _mm256_andnot_pd(underflow, r);
}

}  // namespace

double sum(const double* x, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) acc = _mm256_add_pd(acc, _mm256_loadu_pd(x + i));
  double r = hsum(acc);
  for (; i < n; ++i) r += x[i];
  return r;
}

double sumsq(const double* x, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d v = _mm256_loadu_pd(x + i);
    acc = _mm256_add_pd(acc, _mm256_mul_pd(v, v));
  }
  double r = hsum(acc);
  for (; i < n; ++i) r += x[i] * x[i];
  return r;
}

double dot(const double* a, const double* b, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    acc = _mm256_add_pd(
        acc, _mm256_mul_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
  }
  double r = hsum(acc);
  for (; i < n; ++i) r += a[i] * b[i];
  return r;
}

double sq_err_sum(const double* pred, const double* actual, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d e =
        _mm256_sub_pd(_mm256_loadu_pd(pred + i), _mm256_loadu_pd(actual + i));
    acc = _mm256_add_pd(acc, _mm256_mul_pd(e, e));
  }
  double r = hsum(acc);
  for (; i < n; ++i) {
    const double e = pred[i] - actual[i];
    r += e * e;
  }
  return r;
}

double abs_err_sum(const double* pred, const double* actual, std::size_t n) {
  const __m256d sign_mask = _mm256_set1_pd(-0.0);
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d e =
        _mm256_sub_pd(_mm256_loadu_pd(pred + i), _mm256_loadu_pd(actual + i));
    acc = _mm256_add_pd(acc, _mm256_andnot_pd(sign_mask, e));
  }
  double r = hsum(acc);
  for (; i < n; ++i) r += std::fabs(pred[i] - actual[i]);
  return r;
}

SweepBest split_sweep(const double* prefix, const unsigned char* valid,
                      int n) {
  SweepBest best;
  best.score = -std::numeric_limits<double>::infinity();
  const double total = prefix[n];
  const double dn = static_cast<double>(n);

  int i = 1;
  if (n - 1 >= 8) {
    const __m256d vtotal = _mm256_set1_pd(total);
    const __m256d vdn = _mm256_set1_pd(dn);
    const __m256d neg_inf =
        _mm256_set1_pd(-std::numeric_limits<double>::infinity());
    __m256d best_g = neg_inf;
    __m256i best_idx = _mm256_set1_epi64x(-1);
    __m256d idx = _mm256_setr_pd(1.0, 2.0, 3.0, 4.0);
    __m256i idx_i = _mm256_setr_epi64x(1, 2, 3, 4);
    const __m256d four = _mm256_set1_pd(4.0);
    const __m256i four_i = _mm256_set1_epi64x(4);

    for (; i + 3 <= n - 1; i += 4) {
      const __m256d ls = _mm256_loadu_pd(prefix + i);
      const __m256d rs = _mm256_sub_pd(vtotal, ls);
      // same operation order as the scalar reference: mul, div, add
      const __m256d g =
          _mm256_add_pd(_mm256_div_pd(_mm256_mul_pd(ls, ls), idx),
                        _mm256_div_pd(_mm256_mul_pd(rs, rs),
                                      _mm256_sub_pd(vdn, idx)));
      const __m256d vmask = _mm256_castsi256_pd(_mm256_setr_epi64x(
          valid[i] ? -1 : 0, valid[i + 1] ? -1 : 0, valid[i + 2] ? -1 : 0,
          valid[i + 3] ? -1 : 0));
      const __m256d gm = _mm256_blendv_pd(neg_inf, g, vmask);
      // strictly-greater keeps the lowest index per lane on ties
      const __m256d gt = _mm256_cmp_pd(gm, best_g, _CMP_GT_OQ);
      best_g = _mm256_blendv_pd(best_g, gm, gt);
      best_idx = _mm256_blendv_epi8(best_idx, idx_i,
                                    _mm256_castpd_si256(gt));
      idx = _mm256_add_pd(idx, four);
      idx_i = _mm256_add_epi64(idx_i, four_i);
    }

    alignas(32) double lane_g[4];
    alignas(32) long long lane_i[4];
    _mm256_storeu_pd(lane_g, best_g);
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(lane_i), best_idx);
    for (int l = 0; l < 4; ++l) {
      if (lane_i[l] < 0) continue;
      if (lane_g[l] > best.score ||
          (lane_g[l] == best.score && lane_i[l] < best.index)) {
        best.score = lane_g[l];
        best.index = static_cast<int>(lane_i[l]);
      }
    }
  }

  for (; i < n; ++i) {
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
  if (best.index < 0) return SweepBest{};
  return best;
}

void kde_accumulate(const double* values, std::size_t n, const double* grid,
                    std::size_t m, double inv_bandwidth, double* out) {
  const __m256d vinv = _mm256_set1_pd(inv_bandwidth);
  const __m256d mhalf = _mm256_set1_pd(-0.5);
  for (std::size_t j = 0; j < m; ++j) {
    const __m256d gj = _mm256_set1_pd(grid[j]);
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
      const __m256d z =
          _mm256_mul_pd(_mm256_sub_pd(gj, _mm256_loadu_pd(values + i)), vinv);
      acc = _mm256_add_pd(acc, exp_pd(_mm256_mul_pd(mhalf,
                                                    _mm256_mul_pd(z, z))));
    }
    double r = hsum(acc);
    for (; i < n; ++i) {
      const double z = (grid[j] - values[i]) * inv_bandwidth;
      r += std::exp(-0.5 * z * z);
    }
    out[j] += r;
  }
}

}  // namespace hpf::kernels::avx2

#include <cstdlib>
#include <cstring>
#include <string>

#include "hpf/errors.hpp"
#include "kernels_impl.hpp"

namespace hpf::kernels {

namespace {

struct Vtable {
  double (*sum)(const double*, std::size_t);
  double (*sumsq)(const double*, std::size_t);
  double (*dot)(const double*, const double*, std::size_t);
  double (*sq_err_sum)(const double*, const double*, std::size_t);
  double (*abs_err_sum)(const double*, const double*, std::size_t);
  SweepBest (*split_sweep)(const double*, const unsigned char*, int);
  void (*kde_accumulate)(const double*, std::size_t, const double*,
                         std::size_t, double, double*);
};

constexpr Vtable kScalar = {
    &scalar::sum,        &scalar::sumsq,       &scalar::dot,
    &scalar::sq_err_sum, &scalar::abs_err_sum, &scalar::split_sweep,
    &scalar::kde_accumulate,
};

#ifdef HPF_BUILD_AVX2
constexpr Vtable kAvx2 = {
    &avx2::sum,        &avx2::sumsq,       &avx2::dot,
    &avx2::sq_err_sum, &avx2::abs_err_sum, &avx2::split_sweep,
    &avx2::kde_accumulate,
};
#endif

bool cpu_has_avx2() {
#if defined(HPF_BUILD_AVX2) && defined(__GNUC__)
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

struct State {
  Backend backend;
  const Vtable* table;
};

State make_initial_state() {
  Backend b = cpu_has_avx2() ? Backend::avx2 : Backend::scalar;
  if (const char* env = std::getenv("HPF_KERNELS")) {
    if (std::strcmp(env, "scalar") == 0) {
      b = Backend::scalar;
    } else if (std::strcmp(env, "avx2") == 0) {
      if (!cpu_has_avx2())
        throw ConfigError("HPF_KERNELS=avx2 but AVX2 is unavailable");
      b = Backend::avx2;
    } else {
      throw ConfigError(std::string("unknown HPF_KERNELS backend: ") + env);
    }
  }
  State s;
  s.backend = b;
#ifdef HPF_BUILD_AVX2
  s.table = (b == Backend::avx2) ? &kAvx2 : &kScalar;
#else
  s.table = &kScalar;
#endif
  return s;
}

State& state() {
  static State s = make_initial_state();
  return s;
}

}  // namespace

Backend active_backend() { return state().backend; }

const char* backend_name(Backend b) {
  return b == Backend::avx2 ? "avx2" : "scalar";
}

bool backend_supported(Backend b) {
  if (b == Backend::scalar) return true;
  return cpu_has_avx2();
}

void force_backend(Backend b) {
  if (!backend_supported(b))
    throw ConfigError(std::string(backend_name(b)) +
                      " kernels are not available on this machine");
  State& s = state();
  s.backend = b;
#ifdef HPF_BUILD_AVX2
  s.table = (b == Backend::avx2) ? &kAvx2 : &kScalar;
#else
  s.table = &kScalar;
#endif
}

double sum(const double* x, std::size_t n) { return state().table->sum(x, n); }

double sumsq(const double* x, std::size_t n) {
  return state().table->sumsq(x, n);
}

double dot(const double* a, const double* b, std::size_t n) {
  return state().table->dot(a, b, n);
}

double sq_err_sum(const double* pred, const double* actual, std::size_t n) {
  return state().table->sq_err_sum(pred, actual, n);
}

double abs_err_sum(const double* pred, const double* actual, std::size_t n) {
  return state().table->abs_err_sum(pred, actual, n);
}

SweepBest split_sweep(const double* prefix, const unsigned char* valid,
                      int n) {
  return state().table->split_sweep(prefix, valid, n);
}

void kde_accumulate(const double* values, std::size_t n, const double* grid,
                    std::size_t m, double inv_bandwidth, double* out) {
  state().table->kde_accumulate(values, n, grid, m, inv_bandwidth, out);
}

}  // namespace hpf::kernels

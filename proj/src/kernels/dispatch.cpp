// Runtime backend selection.  The AVX2 path is taken when it was compiled in
// and the CPU reports support; CCLAB_KERNELS=scalar|avx2|auto overrides, as
// does force_backend().

#include "cclab/kernels.hpp"

#include <cstdlib>
#include <stdexcept>
#include <string>

#include "detail.hpp"

namespace cclab::kernels {

bool avx2_available() {
#if defined(CCLAB_HAVE_AVX2)
  return __builtin_cpu_supports("avx2") != 0;
#else
  return false;
#endif
}

namespace {

Backend detect_backend() {
  if (const char* env = std::getenv("CCLAB_KERNELS")) {
    std::string v(env);
    if (v == "scalar") return Backend::Scalar;
    if (v == "avx2") {
      if (!avx2_available())
        throw std::invalid_argument("CCLAB_KERNELS=avx2 but AVX2 is unavailable");
      return Backend::Avx2;
    }
    // anything else, including "auto", falls through to detection
  }
  return avx2_available() ? Backend::Avx2 : Backend::Scalar;
}

Backend& backend_slot() {
  static Backend backend = detect_backend();
  return backend;
}

}  // namespace

Backend active_backend() { return backend_slot(); }

void force_backend(Backend backend) {
  if (backend == Backend::Avx2 && !avx2_available())
    throw std::invalid_argument("force_backend: AVX2 is unavailable on this CPU");
  backend_slot() = backend;
}

const char* backend_name(Backend backend) {
  return backend == Backend::Avx2 ? "avx2" : "scalar";
}

#if defined(CCLAB_HAVE_AVX2)
#define CCLAB_DISPATCH(fn, ...)                                       \
  do {                                                                \
    if (backend_slot() == Backend::Avx2) return avx2::fn(__VA_ARGS__); \
    return scalar::fn(__VA_ARGS__);                                   \
  } while (0)
#else
#define CCLAB_DISPATCH(fn, ...) return scalar::fn(__VA_ARGS__)
#endif

double reduce_add(std::span<const double> x) { CCLAB_DISPATCH(reduce_add, x); }

double dot(std::span<const double> a, std::span<const double> b) {
  CCLAB_DISPATCH(dot, a, b);
}

double sum_abs_diff(std::span<const double> a, std::span<const double> b) {
  CCLAB_DISPATCH(sum_abs_diff, a, b);
}

double survival_product(std::span<const double> p) {
  CCLAB_DISPATCH(survival_product, p);
}

double max_value(std::span<const double> x) { CCLAB_DISPATCH(max_value, x); }

void exp_shift(std::span<const double> x, double shift, std::span<double> out) {
  CCLAB_DISPATCH(exp_shift, x, shift, out);
}

void scale(std::span<double> x, double s) { CCLAB_DISPATCH(scale, x, s); }

void sgd_pair_update(std::span<double> u, std::span<double> v, double lr,
                     double err, double reg) {
  CCLAB_DISPATCH(sgd_pair_update, u, v, lr, err, reg);
}

void mu_tv_tcm_batch(std::size_t m, std::size_t K, std::span<const double> p0s,
                     double gamma, double pq, std::span<const double> target,
                     std::span<double> out_tv) {
  CCLAB_DISPATCH(mu_tv_tcm_batch, m, K, p0s, gamma, pq, target, out_tv);
}

void mu_tv_ccm_batch(std::size_t m, std::size_t K, std::span<const double> p0s,
                     double gamma, double pq, std::span<const double> target,
                     std::span<double> out_tv) {
  CCLAB_DISPATCH(mu_tv_ccm_batch, m, K, p0s, gamma, pq, target, out_tv);
}

}  // namespace cclab::kernels

#pragma once

#include <bit>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>

// Internal kernel machinery shared by the scalar reference backend, the AVX2
// backend, and the surface builders in fitting.cpp.  Keeping the per-element
// operation order in ONE place is what makes the cross-backend bit-equality
// contract (see kernels.hpp) hold.

namespace cclab::kernels::detail {

// ---- exp -------------------------------------------------------------------
// Cody-Waite argument reduction plus the classic rational expansion of e^r on
// |r| <= ln2/2, scaled by 2^n through exponent arithmetic.  The AVX2 variant
// performs exactly these operations per lane (same rounding shifter, no FMA),
// so scalar and vector results are bit-identical.

inline constexpr double kExpLog2e = 1.4426950408889634073599;
inline constexpr double kExpC1 = 6.93145751953125e-1;        // ln2, high part
inline constexpr double kExpC2 = 1.42860682030941723212e-6;  // ln2, low part
inline constexpr double kExpP0 = 1.26177193074810590878e-4;
inline constexpr double kExpP1 = 3.02994407707441961300e-2;
inline constexpr double kExpP2 = 9.99999999999999999910e-1;
inline constexpr double kExpQ0 = 3.00198505138664455042e-6;
inline constexpr double kExpQ1 = 2.52448340349684104192e-3;
inline constexpr double kExpQ2 = 2.27265548208155028766e-1;
inline constexpr double kExpQ3 = 2.00000000000000000005e0;
// 1.5 * 2^52; adding and subtracting it rounds to the nearest integer under
// the default round-to-nearest-even mode.
inline constexpr double kExpMagic = 6755399441055744.0;
inline constexpr double kExpLo = -708.0;
inline constexpr double kExpHi = 708.0;

inline double exp_core(double x) {
  if (x > kExpHi) x = kExpHi;
  if (x < kExpLo) x = kExpLo;
  double t = x * kExpLog2e + kExpMagic;
  double n = t - kExpMagic;
  double r = x - n * kExpC1;
  r = r - n * kExpC2;
  double rr = r * r;
  double px = ((kExpP0 * rr + kExpP1) * rr + kExpP2) * r;
  double qx = ((kExpQ0 * rr + kExpQ1) * rr + kExpQ2) * rr + kExpQ3;
  double e = 1.0 + 2.0 * px / (qx - px);
  auto bits = std::bit_cast<std::uint64_t>(e);
  bits += static_cast<std::uint64_t>(static_cast<std::int64_t>(n)) << 52;
  return std::bit_cast<double>(bits);
}

// ---- geometric click-surface walkers ----------------------------------------
// Cell-by-cell evaluation of the two parameterized click surfaces used by the
// grid fitter, in row-major order.  `cell(c, mu)` receives the flat index and
// the click probability.  The TV batch kernels accumulate |mu - target| with
// the same operation order, so a target generated by these walkers at a grid
// point is re-evaluated to a distance of exactly zero.

// List surface: attraction p0*gamma^(k-1) at flat rank k; reaching rank k+1
// survives both a continuation coin (1-pq) and non-attraction (1-attr).
template <class Cell>
inline void walk_mu_tcm(std::size_t m, std::size_t K, double p0, double gamma,
                        double pq, Cell&& cell) {
  double surv = 1.0;
  double attr = p0;
  std::size_t c = 0;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < K; ++j) {
      cell(c, surv * attr);
      surv *= (1.0 - pq) * (1.0 - attr);
      attr *= gamma;
      ++c;
    }
  }
}

// Carousel surface: attraction p0*gamma^(i+j-2) at row i, column j (1-based).
// `run` carries examination times within-row continuation survival; `next`
// carries the examination probability of the following row (one continuation
// coin per row plus the row's full attraction survival).
template <class Cell>
inline void walk_mu_ccm(std::size_t m, std::size_t K, double p0, double gamma,
                        double pq, Cell&& cell) {
  double exam = 1.0;
  double row_attr = p0;
  std::size_t c = 0;
  for (std::size_t i = 0; i < m; ++i) {
    double run = exam;
    double next = exam * (1.0 - pq);
    double attr = row_attr;
    for (std::size_t j = 0; j < K; ++j) {
      cell(c, run * attr);
      run *= (1.0 - pq) * (1.0 - attr);
      next *= (1.0 - attr);
      attr *= gamma;
      ++c;
    }
    exam = next;
    row_attr *= gamma;
  }
}

inline double mu_tv_tcm_one(std::size_t m, std::size_t K, double p0,
                            double gamma, double pq, const double* target) {
  double tv = 0.0;
  walk_mu_tcm(m, K, p0, gamma, pq,
              [&](std::size_t c, double mu) { tv += std::fabs(mu - target[c]); });
  return 0.5 * tv;
}

inline double mu_tv_ccm_one(std::size_t m, std::size_t K, double p0,
                            double gamma, double pq, const double* target) {
  double tv = 0.0;
  walk_mu_ccm(m, K, p0, gamma, pq,
              [&](std::size_t c, double mu) { tv += std::fabs(mu - target[c]); });
  return 0.5 * tv;
}

}  // namespace cclab::kernels::detail

// Backend entry points wired up by dispatch.cpp.
namespace cclab::kernels::scalar {
double reduce_add(std::span<const double> x);
double dot(std::span<const double> a, std::span<const double> b);
double sum_abs_diff(std::span<const double> a, std::span<const double> b);
double survival_product(std::span<const double> p);
double max_value(std::span<const double> x);
void exp_shift(std::span<const double> x, double shift, std::span<double> out);
void scale(std::span<double> x, double s);
void sgd_pair_update(std::span<double> u, std::span<double> v, double lr,
                     double err, double reg);
void mu_tv_tcm_batch(std::size_t m, std::size_t K, std::span<const double> p0s,
                     double gamma, double pq, std::span<const double> target,
                     std::span<double> out_tv);
void mu_tv_ccm_batch(std::size_t m, std::size_t K, std::span<const double> p0s,
                     double gamma, double pq, std::span<const double> target,
                     std::span<double> out_tv);
}  // namespace cclab::kernels::scalar

#if defined(CCLAB_HAVE_AVX2)
namespace cclab::kernels::avx2 {
double reduce_add(std::span<const double> x);
double dot(std::span<const double> a, std::span<const double> b);
double sum_abs_diff(std::span<const double> a, std::span<const double> b);
double survival_product(std::span<const double> p);
double max_value(std::span<const double> x);
void exp_shift(std::span<const double> x, double shift, std::span<double> out);
void scale(std::span<double> x, double s);
void sgd_pair_update(std::span<double> u, std::span<double> v, double lr,
                     double err, double reg);
void mu_tv_tcm_batch(std::size_t m, std::size_t K, std::span<const double> p0s,
                     double gamma, double pq, std::span<const double> target,
                     std::span<double> out_tv);
void mu_tv_ccm_batch(std::size_t m, std::size_t K, std::span<const double> p0s,
                     double gamma, double pq, std::span<const double> target,
                     std::span<double> out_tv);
}  // namespace cclab::kernels::avx2
#endif

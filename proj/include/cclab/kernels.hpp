#pragma once

#include <cstddef>
#include <span>
#include <string>

namespace cclab::kernels {

/**
 * Numeric kernels with a scalar reference implementation and an AVX2
 * variant selected at runtime.  The AVX2 variant is compiled only on
 * x86-64 and used only when the CPU reports AVX2 support; every other
 * platform runs the scalar path.
 *
 * Equivalence contract, enforced by tests:
 *  - element-wise kernels (exp_shift, scale, sgd_pair_update) and the
 *    per-lane sequential batch kernels (mu_tv_tcm_batch, mu_tv_ccm_batch)
 *    produce bit-identical results on every backend.  They use the same
 *    operation order per element/lane and no FMA contraction.
 *  - reductions (reduce_add, dot, sum_abs_diff, survival_product) may
 *    associate differently across backends; each backend is individually
 *    deterministic and agrees with the scalar reference to ~1e-13 relative.
 *  - max_value is exact on every backend.
 *
 * Backend selection: auto-detected at startup; the CCLAB_KERNELS
 * environment variable ("scalar", "avx2", "auto") or force_backend()
 * overrides it.
 */
enum class Backend { Scalar, Avx2 };

// True when the AVX2 variant was compiled in AND the CPU supports it.
bool avx2_available();

Backend active_backend();

// Throws std::invalid_argument if the requested backend is unavailable.
void force_backend(Backend backend);

const char* backend_name(Backend backend);

// ---- reductions -----------------------------------------------------------

// Sum of all elements.
double reduce_add(std::span<const double> x);

// Inner product <a, b>.  Sizes must match (std::invalid_argument).
double dot(std::span<const double> a, std::span<const double> b);

// Sum of |a_i - b_i|.  Sizes must match (std::invalid_argument).
double sum_abs_diff(std::span<const double> a, std::span<const double> b);

// Product of (1 - p_i); the probability that no element "fires".
double survival_product(std::span<const double> p);

// Maximum element; x must be non-empty (std::invalid_argument).
double max_value(std::span<const double> x);

// ---- element-wise ----------------------------------------------------------

// out_i = exp(x_i - shift), computed with a Cody-Waite + rational-polynomial
// expansion (identical algorithm on all backends, so results are bit-equal).
// Accurate to < 3 ulp over x - shift in [-708, 708]; arguments are clamped to
// that range.  out.size() must equal x.size().
void exp_shift(std::span<const double> x, double shift, std::span<double> out);

// x_i *= s.
void scale(std::span<double> x, double s);

// One matrix-factorization SGD step on a user/item factor pair:
//   u_i += lr * (err * v_i - reg * u_i)
//   v_i += lr * (err * u_old_i - reg * v_i)
// using the pre-update u for the v update.  Sizes must match.
void sgd_pair_update(std::span<double> u, std::span<double> v, double lr,
                     double err, double reg);

// ---- parameterized-surface batch kernels ------------------------------------

// For each candidate p0 in p0s, builds the m*K geometric click surface of the
// list model (attraction p0*gamma^(k-1) at flat rank k, continuation survival
// (1-pq)(1-attraction) per rank) and writes the total-variation distance to
// `target` (row-major m*K) into out_tv.  Per-lane arithmetic matches the
// scalar walker bit-for-bit on every backend.
void mu_tv_tcm_batch(std::size_t m, std::size_t K, std::span<const double> p0s,
                     double gamma, double pq, std::span<const double> target,
                     std::span<double> out_tv);

// Same for the carousel model surface: attraction p0*gamma^(i+j-2) at row i,
// column j (1-based), carousel examination decaying by (1-pq) and by the
// row's full attraction survival.
void mu_tv_ccm_batch(std::size_t m, std::size_t K, std::span<const double> p0s,
                     double gamma, double pq, std::span<const double> target,
                     std::span<double> out_tv);

}  // namespace cclab::kernels

// Numeric kernel backends: the scalar reference and the runtime-selected
// AVX2 variant.  Element-wise kernels must agree bit-for-bit; reductions
// must agree to tight relative tolerance against a long-double reference.

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <vector>

#include "cclab/fitting.hpp"
#include "cclab/kernels.hpp"
#include "cclab/rng.hpp"
#include "doctest.h"

using namespace cclab;
namespace kn = cclab::kernels;

namespace {

// Restores the active backend on scope exit.
struct BackendGuard {
  kn::Backend saved = kn::active_backend();
  ~BackendGuard() { kn::force_backend(saved); }
};

std::vector<double> random_vec(Xoshiro256ss& rng, std::size_t n, double lo,
                               double hi) {
  std::vector<double> v(n);
  for (double& x : v) x = rng.uniform(lo, hi);
  return v;
}

// Odd sizes exercise the vector tail; 0 and 1 exercise degenerate spans.
const std::vector<std::size_t> kSizes{1, 2, 3, 4, 5, 7, 8, 16, 33, 257};

template <class Fn>
void on_both_backends(Fn&& fn) {
  BackendGuard guard;
  kn::force_backend(kn::Backend::Scalar);
  fn(kn::Backend::Scalar);
  if (kn::avx2_available()) {
    kn::force_backend(kn::Backend::Avx2);
    fn(kn::Backend::Avx2);
  }
}

}  // namespace

TEST_CASE("backend plumbing") {
  CHECK(std::string(kn::backend_name(kn::Backend::Scalar)) == "scalar");
  CHECK(std::string(kn::backend_name(kn::Backend::Avx2)) == "avx2");

  BackendGuard guard;
  kn::force_backend(kn::Backend::Scalar);
  CHECK(kn::active_backend() == kn::Backend::Scalar);
  if (kn::avx2_available()) {
    kn::force_backend(kn::Backend::Avx2);
    CHECK(kn::active_backend() == kn::Backend::Avx2);
  } else {
    CHECK_THROWS_AS(kn::force_backend(kn::Backend::Avx2),
                    std::invalid_argument);
  }
}

TEST_CASE("element-wise kernels are bit-identical across backends") {
  if (!kn::avx2_available()) return;  // single-backend build: nothing to compare
  BackendGuard guard;
  Xoshiro256ss rng(101);

  for (std::size_t n : kSizes) {
    // exp_shift, including the clamp region on both ends.
    std::vector<double> x = random_vec(rng, n, -800.0, 800.0);
    std::vector<double> scalar_out(n), avx_out(n);
    kn::force_backend(kn::Backend::Scalar);
    kn::exp_shift(x, 1.5, scalar_out);
    kn::force_backend(kn::Backend::Avx2);
    kn::exp_shift(x, 1.5, avx_out);
    CHECK(scalar_out == avx_out);

    // scale.
    std::vector<double> base = random_vec(rng, n, -3.0, 3.0);
    std::vector<double> s1 = base, s2 = base;
    kn::force_backend(kn::Backend::Scalar);
    kn::scale(s1, 0.37);
    kn::force_backend(kn::Backend::Avx2);
    kn::scale(s2, 0.37);
    CHECK(s1 == s2);

    // sgd_pair_update.
    std::vector<double> u = random_vec(rng, n, -1.0, 1.0);
    std::vector<double> v = random_vec(rng, n, -1.0, 1.0);
    std::vector<double> u1 = u, v1 = v, u2 = u, v2 = v;
    kn::force_backend(kn::Backend::Scalar);
    kn::sgd_pair_update(u1, v1, 0.01, 0.83, 0.02);
    kn::force_backend(kn::Backend::Avx2);
    kn::sgd_pair_update(u2, v2, 0.01, 0.83, 0.02);
    CHECK(u1 == u2);
    CHECK(v1 == v2);
  }
}

TEST_CASE("exp_shift tracks the standard library exp") {
  on_both_backends([&](kn::Backend) {
    Xoshiro256ss rng(7);
    std::vector<double> x = random_vec(rng, 4000, -708.0, 708.0);
    std::vector<double> out(x.size());
    kn::exp_shift(x, 0.0, out);
    for (std::size_t i = 0; i < x.size(); ++i) {
      double ref = std::exp(x[i]);
      CHECK(std::fabs(out[i] - ref) <= 5e-15 * ref);
    }
    // Clamped arguments behave like the clamp boundary.
    std::vector<double> extreme{-1000.0, 1000.0};
    std::vector<double> eout(2);
    kn::exp_shift(extreme, 0.0, eout);
    CHECK(eout[0] == doctest::Approx(std::exp(-708.0)).epsilon(1e-13));
    CHECK(eout[1] == doctest::Approx(std::exp(708.0)).epsilon(1e-13));
    CHECK(std::isfinite(eout[1]));
  });
}

TEST_CASE("sgd_pair_update uses the pre-update factors symmetrically") {
  BackendGuard guard;
  kn::force_backend(kn::Backend::Scalar);
  std::vector<double> u{0.5, -0.25};
  std::vector<double> v{0.125, 1.0};
  const double lr = 0.1, err = 2.0, reg = 0.5;
  std::vector<double> exp_u(2), exp_v(2);
  for (std::size_t i = 0; i < 2; ++i) {
    exp_u[i] = u[i] + lr * (err * v[i] - reg * u[i]);
    exp_v[i] = v[i] + lr * (err * u[i] - reg * v[i]);  // pre-update u
  }
  kn::sgd_pair_update(u, v, lr, err, reg);
  CHECK(u == exp_u);
  CHECK(v == exp_v);

  std::vector<double> mismatched{1.0};
  CHECK_THROWS_AS(kn::sgd_pair_update(u, mismatched, lr, err, reg),
                  std::invalid_argument);
}

TEST_CASE("reductions agree with a long-double reference on every backend") {
  Xoshiro256ss seed_rng(55);
  for (std::size_t n : kSizes) {
    // Fixed inputs per size so both backends see identical data.
    Xoshiro256ss rng(seed_rng.next());
    std::vector<double> a = random_vec(rng, n, -10.0, 10.0);
    std::vector<double> b = random_vec(rng, n, -10.0, 10.0);
    std::vector<double> p = random_vec(rng, n, 0.0, 1.0);

    long double sum_ref = 0.0L, dot_ref = 0.0L, abs_ref = 0.0L,
                surv_ref = 1.0L;
    double sum_mag = 0.0, dot_mag = 0.0;  // condition scale for the tolerance
    for (std::size_t i = 0; i < n; ++i) {
      sum_ref += a[i];
      dot_ref += static_cast<long double>(a[i]) * b[i];
      abs_ref += std::fabs(static_cast<long double>(a[i]) - b[i]);
      surv_ref *= 1.0L - static_cast<long double>(p[i]);
      sum_mag += std::fabs(a[i]);
      dot_mag += std::fabs(a[i] * b[i]);
    }
    double max_ref = *std::max_element(a.begin(), a.end());

    on_both_backends([&](kn::Backend) {
      CHECK(std::fabs(kn::reduce_add(a) - static_cast<double>(sum_ref)) <=
            1e-12 * (1.0 + sum_mag));
      CHECK(std::fabs(kn::dot(a, b) - static_cast<double>(dot_ref)) <=
            1e-12 * (1.0 + dot_mag));
      CHECK(std::fabs(kn::sum_abs_diff(a, b) - static_cast<double>(abs_ref)) <=
            1e-12 * (1.0 + std::fabs(static_cast<double>(abs_ref))));
      CHECK(std::fabs(kn::survival_product(p) -
                      static_cast<double>(surv_ref)) <=
            1e-12 * (1.0 + std::fabs(static_cast<double>(surv_ref))));
      CHECK(kn::max_value(a) == max_ref);
    });

    // Each backend is individually deterministic.
    on_both_backends([&](kn::Backend) {
      CHECK(kn::reduce_add(a) == kn::reduce_add(a));
      CHECK(kn::dot(a, b) == kn::dot(a, b));
    });
  }

  std::vector<double> x{1.0, 2.0};
  std::vector<double> y{1.0};
  std::vector<double> empty;
  CHECK_THROWS_AS((void)kn::dot(x, y), std::invalid_argument);
  CHECK_THROWS_AS((void)kn::sum_abs_diff(x, y), std::invalid_argument);
  CHECK_THROWS_AS((void)kn::max_value(empty), std::invalid_argument);
  CHECK(kn::reduce_add(empty) == 0.0);
  CHECK(kn::survival_product(empty) == 1.0);
}

TEST_CASE("surface batch kernels match the fitting metric per lane") {
  Xoshiro256ss rng(77);
  const std::size_t m = 3, K = 4;
  std::vector<double> target(m * K);
  for (double& v : target) v = rng.next_double() * 0.05;
  ClickProbMatrix target_mat;
  target_mat.values.assign(m, std::vector<double>(K));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < K; ++j)
      target_mat.values[i][j] = target[i * K + j];

  std::vector<double> p0s(11);
  for (std::size_t i = 0; i < p0s.size(); ++i)
    p0s[i] = static_cast<double>(i) / 10.0;
  const double gamma = 0.8, pq = 0.15;

  std::vector<double> tcm_scalar(p0s.size()), tcm_avx(p0s.size());
  std::vector<double> ccm_scalar(p0s.size()), ccm_avx(p0s.size());
  {
    BackendGuard guard;
    kn::force_backend(kn::Backend::Scalar);
    kn::mu_tv_tcm_batch(m, K, p0s, gamma, pq, target, tcm_scalar);
    kn::mu_tv_ccm_batch(m, K, p0s, gamma, pq, target, ccm_scalar);
    if (kn::avx2_available()) {
      kn::force_backend(kn::Backend::Avx2);
      kn::mu_tv_tcm_batch(m, K, p0s, gamma, pq, target, tcm_avx);
      kn::mu_tv_ccm_batch(m, K, p0s, gamma, pq, target, ccm_avx);
      CHECK(tcm_scalar == tcm_avx);  // per-lane bit equality
      CHECK(ccm_scalar == ccm_avx);
    }
  }

  // Lane values equal the public metric applied to the built surfaces.
  for (std::size_t i = 0; i < p0s.size(); ++i) {
    ParamTriple theta{p0s[i], gamma, pq};
    double tcm_tv = total_variation(mu_tcm(m, K, theta), target_mat);
    double ccm_tv = total_variation(mu_ccm(m, K, theta), target_mat);
    CHECK(std::fabs(tcm_scalar[i] - tcm_tv) < 1e-12);
    CHECK(std::fabs(ccm_scalar[i] - ccm_tv) < 1e-12);
  }
}

// AVX2 backend.  Element-wise kernels and the per-lane batch kernels mirror
// the scalar reference operation-for-operation (no FMA), so their results are
// bit-identical; reductions use four-lane accumulators with a fixed
// combination order, so they are deterministic but may round differently from
// the scalar reference.

#if defined(CCLAB_HAVE_AVX2)

#include <immintrin.h>

#include <cmath>
#include <stdexcept>

#include "detail.hpp"

namespace cclab::kernels::avx2 {

namespace {

// Fixed combination order for additive reductions: (l0+l2) + (l1+l3).
inline double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  __m128d s = _mm_add_pd(lo, hi);                     // [l0+l2, l1+l3]
  return _mm_cvtsd_f64(s) + _mm_cvtsd_f64(_mm_unpackhi_pd(s, s));
}

inline double hprod(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  __m128d s = _mm_mul_pd(lo, hi);
  return _mm_cvtsd_f64(s) * _mm_cvtsd_f64(_mm_unpackhi_pd(s, s));
}

inline double hmax(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  __m128d s = _mm_max_pd(lo, hi);
  double a = _mm_cvtsd_f64(s);
  double b = _mm_cvtsd_f64(_mm_unpackhi_pd(s, s));
  return a > b ? a : b;
}

inline __m256d abs_pd(__m256d v) {
  return _mm256_andnot_pd(_mm256_set1_pd(-0.0), v);
}

// Four-lane exp_core; see detail.hpp for the algorithm.  Operation order is
// identical to the scalar version.
inline __m256d exp4(__m256d x) {
  using namespace detail;
  x = _mm256_min_pd(x, _mm256_set1_pd(kExpHi));
  x = _mm256_max_pd(x, _mm256_set1_pd(kExpLo));
  __m256d magic = _mm256_set1_pd(kExpMagic);
  __m256d t = _mm256_add_pd(_mm256_mul_pd(x, _mm256_set1_pd(kExpLog2e)), magic);
  __m256d n = _mm256_sub_pd(t, magic);
  __m256d r = _mm256_sub_pd(x, _mm256_mul_pd(n, _mm256_set1_pd(kExpC1)));
  r = _mm256_sub_pd(r, _mm256_mul_pd(n, _mm256_set1_pd(kExpC2)));
  __m256d rr = _mm256_mul_pd(r, r);
  __m256d px = _mm256_mul_pd(rr, _mm256_set1_pd(kExpP0));
  px = _mm256_add_pd(px, _mm256_set1_pd(kExpP1));
  px = _mm256_mul_pd(px, rr);
  px = _mm256_add_pd(px, _mm256_set1_pd(kExpP2));
  px = _mm256_mul_pd(px, r);
  __m256d qx = _mm256_mul_pd(rr, _mm256_set1_pd(kExpQ0));
  qx = _mm256_add_pd(qx, _mm256_set1_pd(kExpQ1));
  qx = _mm256_mul_pd(qx, rr);
  qx = _mm256_add_pd(qx, _mm256_set1_pd(kExpQ2));
  qx = _mm256_mul_pd(qx, rr);
  qx = _mm256_add_pd(qx, _mm256_set1_pd(kExpQ3));
  __m256d e = _mm256_add_pd(
      _mm256_set1_pd(1.0),
      _mm256_div_pd(_mm256_mul_pd(_mm256_set1_pd(2.0), px),
                    _mm256_sub_pd(qx, px)));
  // Scale by 2^n: n is integral, convert and add into the exponent bits.
  __m128i n32 = _mm256_cvtpd_epi32(n);
  __m256i n64 = _mm256_cvtepi32_epi64(n32);
  __m256i bits = _mm256_castpd_si256(e);
  bits = _mm256_add_epi64(bits, _mm256_slli_epi64(n64, 52));
  return _mm256_castsi256_pd(bits);
}

}  // namespace

double reduce_add(std::span<const double> x) {
  std::size_t n4 = x.size() / 4 * 4;
  __m256d acc = _mm256_setzero_pd();
  for (std::size_t i = 0; i < n4; i += 4)
    acc = _mm256_add_pd(acc, _mm256_loadu_pd(x.data() + i));
  double total = hsum(acc);
  for (std::size_t i = n4; i < x.size(); ++i) total += x[i];
  return total;
}

double dot(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size())
    throw std::invalid_argument("dot: size mismatch");
  std::size_t n4 = a.size() / 4 * 4;
  __m256d acc = _mm256_setzero_pd();
  for (std::size_t i = 0; i < n4; i += 4)
    acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_loadu_pd(a.data() + i),
                                           _mm256_loadu_pd(b.data() + i)));
  double total = hsum(acc);
  for (std::size_t i = n4; i < a.size(); ++i) total += a[i] * b[i];
  return total;
}

double sum_abs_diff(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size())
    throw std::invalid_argument("sum_abs_diff: size mismatch");
  std::size_t n4 = a.size() / 4 * 4;
  __m256d acc = _mm256_setzero_pd();
  for (std::size_t i = 0; i < n4; i += 4)
    acc = _mm256_add_pd(acc, abs_pd(_mm256_sub_pd(_mm256_loadu_pd(a.data() + i),
                                                  _mm256_loadu_pd(b.data() + i))));
  double total = hsum(acc);
  for (std::size_t i = n4; i < a.size(); ++i) total += std::fabs(a[i] - b[i]);
  return total;
}

double survival_product(std::span<const double> p) {
  std::size_t n4 = p.size() / 4 * 4;
  __m256d one = _mm256_set1_pd(1.0);
  __m256d acc = one;
  for (std::size_t i = 0; i < n4; i += 4)
    acc = _mm256_mul_pd(acc, _mm256_sub_pd(one, _mm256_loadu_pd(p.data() + i)));
  double total = hprod(acc);
  for (std::size_t i = n4; i < p.size(); ++i) total *= 1.0 - p[i];
  return total;
}

double max_value(std::span<const double> x) {
  if (x.empty()) throw std::invalid_argument("max_value: empty input");
  if (x.size() < 4) {
    double best = x[0];
    for (double v : x.subspan(1))
      if (v > best) best = v;
    return best;
  }
  __m256d acc = _mm256_loadu_pd(x.data());
  std::size_t n4 = x.size() / 4 * 4;
  for (std::size_t i = 4; i < n4; i += 4)
    acc = _mm256_max_pd(acc, _mm256_loadu_pd(x.data() + i));
  double best = hmax(acc);
  for (std::size_t i = n4; i < x.size(); ++i)
    if (x[i] > best) best = x[i];
  return best;
}

void exp_shift(std::span<const double> x, double shift, std::span<double> out) {
  if (x.size() != out.size())
    throw std::invalid_argument("exp_shift: size mismatch");
  __m256d sh = _mm256_set1_pd(shift);
  std::size_t n4 = x.size() / 4 * 4;
  for (std::size_t i = 0; i < n4; i += 4)
    _mm256_storeu_pd(out.data() + i,
                     exp4(_mm256_sub_pd(_mm256_loadu_pd(x.data() + i), sh)));
  for (std::size_t i = n4; i < x.size(); ++i)
    out[i] = detail::exp_core(x[i] - shift);
}

void scale(std::span<double> x, double s) {
  __m256d sv = _mm256_set1_pd(s);
  std::size_t n4 = x.size() / 4 * 4;
  for (std::size_t i = 0; i < n4; i += 4)
    _mm256_storeu_pd(x.data() + i, _mm256_mul_pd(_mm256_loadu_pd(x.data() + i), sv));
  for (std::size_t i = n4; i < x.size(); ++i) x[i] *= s;
}

void sgd_pair_update(std::span<double> u, std::span<double> v, double lr,
                     double err, double reg) {
  if (u.size() != v.size())
    throw std::invalid_argument("sgd_pair_update: size mismatch");
  __m256d lrv = _mm256_set1_pd(lr);
  __m256d errv = _mm256_set1_pd(err);
  __m256d regv = _mm256_set1_pd(reg);
  std::size_t n4 = u.size() / 4 * 4;
  for (std::size_t i = 0; i < n4; i += 4) {
    __m256d ui = _mm256_loadu_pd(u.data() + i);
    __m256d vi = _mm256_loadu_pd(v.data() + i);
    __m256d du = _mm256_mul_pd(
        lrv, _mm256_sub_pd(_mm256_mul_pd(errv, vi), _mm256_mul_pd(regv, ui)));
    __m256d dv = _mm256_mul_pd(
        lrv, _mm256_sub_pd(_mm256_mul_pd(errv, ui), _mm256_mul_pd(regv, vi)));
    _mm256_storeu_pd(u.data() + i, _mm256_add_pd(ui, du));
    _mm256_storeu_pd(v.data() + i, _mm256_add_pd(vi, dv));
  }
  for (std::size_t i = n4; i < u.size(); ++i) {
    double ui = u[i];
    double vi = v[i];
    u[i] = ui + lr * (err * vi - reg * ui);
    v[i] = vi + lr * (err * ui - reg * vi);
  }
}

void mu_tv_tcm_batch(std::size_t m, std::size_t K, std::span<const double> p0s,
                     double gamma, double pq, std::span<const double> target,
                     std::span<double> out_tv) {
  if (target.size() != m * K)
    throw std::invalid_argument("mu_tv_tcm_batch: target size mismatch");
  if (out_tv.size() != p0s.size())
    throw std::invalid_argument("mu_tv_tcm_batch: output size mismatch");
  __m256d one = _mm256_set1_pd(1.0);
  __m256d one_minus_pq = _mm256_set1_pd(1.0 - pq);
  __m256d gammav = _mm256_set1_pd(gamma);
  std::size_t n4 = p0s.size() / 4 * 4;
  for (std::size_t base = 0; base < n4; base += 4) {
    __m256d surv = one;
    __m256d attr = _mm256_loadu_pd(p0s.data() + base);
    __m256d tv = _mm256_setzero_pd();
    std::size_t cells = m * K;
    for (std::size_t c = 0; c < cells; ++c) {
      __m256d mu = _mm256_mul_pd(surv, attr);
      tv = _mm256_add_pd(tv, abs_pd(_mm256_sub_pd(mu, _mm256_set1_pd(target[c]))));
      surv = _mm256_mul_pd(surv,
                           _mm256_mul_pd(one_minus_pq, _mm256_sub_pd(one, attr)));
      attr = _mm256_mul_pd(attr, gammav);
    }
    _mm256_storeu_pd(out_tv.data() + base,
                     _mm256_mul_pd(tv, _mm256_set1_pd(0.5)));
  }
  for (std::size_t i = n4; i < p0s.size(); ++i)
    out_tv[i] = detail::mu_tv_tcm_one(m, K, p0s[i], gamma, pq, target.data());
}

void mu_tv_ccm_batch(std::size_t m, std::size_t K, std::span<const double> p0s,
                     double gamma, double pq, std::span<const double> target,
                     std::span<double> out_tv) {
  if (target.size() != m * K)
    throw std::invalid_argument("mu_tv_ccm_batch: target size mismatch");
  if (out_tv.size() != p0s.size())
    throw std::invalid_argument("mu_tv_ccm_batch: output size mismatch");
  __m256d one = _mm256_set1_pd(1.0);
  __m256d one_minus_pq = _mm256_set1_pd(1.0 - pq);
  __m256d gammav = _mm256_set1_pd(gamma);
  std::size_t n4 = p0s.size() / 4 * 4;
  for (std::size_t base = 0; base < n4; base += 4) {
    __m256d exam = one;
    __m256d row_attr = _mm256_loadu_pd(p0s.data() + base);
    __m256d tv = _mm256_setzero_pd();
    std::size_t c = 0;
    for (std::size_t i = 0; i < m; ++i) {
      __m256d run = exam;
      __m256d next = _mm256_mul_pd(exam, one_minus_pq);
      __m256d attr = row_attr;
      for (std::size_t j = 0; j < K; ++j) {
        __m256d mu = _mm256_mul_pd(run, attr);
        tv = _mm256_add_pd(tv,
                           abs_pd(_mm256_sub_pd(mu, _mm256_set1_pd(target[c]))));
        __m256d onem = _mm256_sub_pd(one, attr);
        run = _mm256_mul_pd(run, _mm256_mul_pd(one_minus_pq, onem));
        next = _mm256_mul_pd(next, onem);
        attr = _mm256_mul_pd(attr, gammav);
        ++c;
      }
      exam = next;
      row_attr = _mm256_mul_pd(row_attr, gammav);
    }
    _mm256_storeu_pd(out_tv.data() + base,
                     _mm256_mul_pd(tv, _mm256_set1_pd(0.5)));
  }
  for (std::size_t i = n4; i < p0s.size(); ++i)
    out_tv[i] = detail::mu_tv_ccm_one(m, K, p0s[i], gamma, pq, target.data());
}

}  // namespace cclab::kernels::avx2

#endif  // CCLAB_HAVE_AVX2

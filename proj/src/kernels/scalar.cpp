// Scalar reference backend.  Straight sequential loops; every other backend
// is tested against this one.

#include <cmath>
#include <stdexcept>

#include "detail.hpp"

namespace cclab::kernels::scalar {

double reduce_add(std::span<const double> x) {
  double acc = 0.0;
  for (double v : x) acc += v;
  return acc;
}

double dot(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size())
    throw std::invalid_argument("dot: size mismatch");
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

double sum_abs_diff(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size())
    throw std::invalid_argument("sum_abs_diff: size mismatch");
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += std::fabs(a[i] - b[i]);
  return acc;
}

double survival_product(std::span<const double> p) {
  double acc = 1.0;
  for (double v : p) acc *= 1.0 - v;
  return acc;
}

double max_value(std::span<const double> x) {
  if (x.empty()) throw std::invalid_argument("max_value: empty input");
  double best = x[0];
  for (double v : x.subspan(1))
    if (v > best) best = v;
  return best;
}

void exp_shift(std::span<const double> x, double shift, std::span<double> out) {
  if (x.size() != out.size())
    throw std::invalid_argument("exp_shift: size mismatch");
  for (std::size_t i = 0; i < x.size(); ++i)
    out[i] = detail::exp_core(x[i] - shift);
}

void scale(std::span<double> x, double s) {
  for (double& v : x) v *= s;
}

void sgd_pair_update(std::span<double> u, std::span<double> v, double lr,
                     double err, double reg) {
  if (u.size() != v.size())
    throw std::invalid_argument("sgd_pair_update: size mismatch");
  for (std::size_t i = 0; i < u.size(); ++i) {
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
  for (std::size_t i = 0; i < p0s.size(); ++i)
    out_tv[i] = detail::mu_tv_tcm_one(m, K, p0s[i], gamma, pq, target.data());
}

void mu_tv_ccm_batch(std::size_t m, std::size_t K, std::span<const double> p0s,
                     double gamma, double pq, std::span<const double> target,
                     std::span<double> out_tv) {
  if (target.size() != m * K)
    throw std::invalid_argument("mu_tv_ccm_batch: target size mismatch");
  if (out_tv.size() != p0s.size())
    throw std::invalid_argument("mu_tv_ccm_batch: output size mismatch");
  for (std::size_t i = 0; i < p0s.size(); ++i)
    out_tv[i] = detail::mu_tv_ccm_one(m, K, p0s[i], gamma, pq, target.data());
}

}  // namespace cclab::kernels::scalar

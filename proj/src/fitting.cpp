#include "cclab/fitting.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "cclab/kernels.hpp"
#include "kernels/detail.hpp"

namespace cclab {
namespace {

void check_shape(std::size_t m, std::size_t K) {
  if (m == 0 || K == 0)
    throw std::invalid_argument("surface shape must be at least 1 x 1");
}

// Lexicographic order on (p0, gamma, pq).
bool lex_less(const ParamTriple& a, const ParamTriple& b) {
  if (a.p0 != b.p0) return a.p0 < b.p0;
  if (a.gamma != b.gamma) return a.gamma < b.gamma;
  return a.pq < b.pq;
}

}  // namespace

void ParamTriple::validate() const {
  auto check = [](double v, const char* name) {
    if (!(v >= 0.0 && v <= 1.0))
      throw std::invalid_argument(std::string(name) + " must lie in [0, 1]");
  };
  check(p0, "p0");
  check(gamma, "gamma");
  check(pq, "pq");
}

ClickProbMatrix mu_tcm(std::size_t m, std::size_t K,
                       const ParamTriple& params) {
  check_shape(m, K);
  params.validate();
  ClickProbMatrix out;
  out.values.assign(m, std::vector<double>(K, 0.0));
  kernels::detail::walk_mu_tcm(m, K, params.p0, params.gamma, params.pq,
                               [&](std::size_t c, double mu) {
                                 out.values[c / K][c % K] = mu;
                               });
  return out;
}

ClickProbMatrix mu_ccm(std::size_t m, std::size_t K,
                       const ParamTriple& params) {
  check_shape(m, K);
  params.validate();
  ClickProbMatrix out;
  out.values.assign(m, std::vector<double>(K, 0.0));
  kernels::detail::walk_mu_ccm(m, K, params.p0, params.gamma, params.pq,
                               [&](std::size_t c, double mu) {
                                 out.values[c / K][c % K] = mu;
                               });
  return out;
}

double total_variation(const ClickProbMatrix& a, const ClickProbMatrix& b) {
  if (!a.same_shape(b))
    throw std::invalid_argument("total_variation: shape mismatch");
  double acc = 0.0;
  for (std::size_t i = 0; i < a.values.size(); ++i)
    acc += kernels::sum_abs_diff(a.values[i], b.values[i]);
  return 0.5 * acc;
}

FitResult grid_fit(const ClickProbMatrix& target, ClickModel model,
                   double resolution) {
  if (model == ClickModel::CM)
    throw std::invalid_argument("grid_fit supports TCM and CCM only");
  if (!(resolution > 0.0 && resolution <= 1.0))
    throw std::invalid_argument("resolution must lie in (0, 1]");
  const std::size_t m = target.values.size();
  if (m == 0) throw std::invalid_argument("empty target surface");
  const std::size_t K = target.values[0].size();
  check_shape(m, K);
  std::vector<double> flat;
  flat.reserve(m * K);
  for (const auto& row : target.values) {
    if (row.size() != K)
      throw std::invalid_argument("target surface must be rectangular");
    for (double v : row) {
      if (!(v >= 0.0 && v <= 1.0))
        throw std::invalid_argument("target entries must lie in [0, 1]");
      flat.push_back(v);
    }
  }

  // Grid values i/S are computed by division, not by accumulating the
  // resolution, so decimal grid points (0.01, 0.02, ...) are hit exactly.
  const long long steps = std::llround(1.0 / resolution);
  std::vector<double> grid(static_cast<std::size_t>(steps) + 1);
  for (long long i = 0; i <= steps; ++i)
    grid[static_cast<std::size_t>(i)] =
        static_cast<double>(i) / static_cast<double>(steps);

  FitResult best;
  best.model = model;
  best.resolution = resolution;
  best.delta = std::numeric_limits<double>::infinity();
  std::vector<double> tvs(grid.size());
  for (double pq : grid) {
    for (double gamma : grid) {
      // All p0 candidates for this (gamma, pq) in one batched kernel call.
      if (model == ClickModel::TCM)
        kernels::mu_tv_tcm_batch(m, K, grid, gamma, pq, flat, tvs);
      else
        kernels::mu_tv_ccm_batch(m, K, grid, gamma, pq, flat, tvs);
      for (std::size_t i = 0; i < grid.size(); ++i) {
        ParamTriple cand{grid[i], gamma, pq};
        if (tvs[i] < best.delta ||
            (tvs[i] == best.delta && lex_less(cand, best.params))) {
          best.delta = tvs[i];
          best.params = cand;
        }
      }
    }
  }
  return best;
}

ClickProbMatrix empirical_frequencies(const EmpiricalClicks& clicks) {
  if (clicks.sessions == 0)
    throw std::invalid_argument("empirical_frequencies needs >= 1 session");
  ClickProbMatrix out;
  out.values.reserve(clicks.counts.size());
  const double n = static_cast<double>(clicks.sessions);
  for (const auto& row : clicks.counts) {
    std::vector<double> freq;
    freq.reserve(row.size());
    for (std::uint64_t c : row) freq.push_back(static_cast<double>(c) / n);
    out.values.push_back(std::move(freq));
  }
  return out;
}

}  // namespace cclab

#pragma once

#include <cstddef>

#include "cclab/models.hpp"
#include "cclab/simulate.hpp"

namespace cclab {

// Parameters of the three-parameter click surfaces: first-position
// attraction p0, geometric decay gamma per step, uniform abandonment pq.
struct ParamTriple {
  double p0 = 0.0;
  double gamma = 0.0;
  double pq = 0.0;

  void validate() const;  // each in [0, 1]

  friend bool operator==(const ParamTriple&, const ParamTriple&) = default;
};

struct FitResult {
  ParamTriple params;
  double delta = 0.0;  // total-variation distance at the optimum
  ClickModel model = ClickModel::TCM;
  double resolution = 0.0;
};

// Model click surface on an m x K grid for a sequential list read row-major:
// position t (row-major index) has attraction p0 * gamma^t, scanned with
// abandonment pq after each unattractive item.
ClickProbMatrix mu_tcm(std::size_t m, std::size_t K, const ParamTriple& params);

// Carousel click surface on an m x K grid: row i starts at attraction
// p0 * gamma^i and decays by gamma within the row; rows are entered per the
// carousel examination recursion with uniform abandonment pq.
ClickProbMatrix mu_ccm(std::size_t m, std::size_t K, const ParamTriple& params);

// 0.5 * sum of absolute cell differences.  Throws std::invalid_argument on
// shape mismatch.
double total_variation(const ClickProbMatrix& a, const ClickProbMatrix& b);

// Exhaustive grid search over {0, 1/S, 2/S, ..., 1}^3 where S = round(1/
// resolution), minimizing the total-variation distance between the model
// surface and `target`; ties resolve to the lexicographically smallest
// (p0, gamma, pq).  `target` must be rectangular with entries in [0, 1];
// model must be TCM or CCM.  The surface evaluation shares its arithmetic
// with mu_tcm / mu_ccm, so a target generated by them at a grid point fits
// with delta exactly 0.
FitResult grid_fit(const ClickProbMatrix& target, ClickModel model,
                   double resolution);

// counts / sessions as a click-probability matrix.  Throws
// std::invalid_argument when sessions == 0.
ClickProbMatrix empirical_frequencies(const EmpiricalClicks& clicks);

}  // namespace cclab

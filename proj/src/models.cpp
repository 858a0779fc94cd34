#include "cclab/models.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace cclab {

namespace {

void check_prob(double p, const char* what) {
  if (!(p >= 0.0 && p <= 1.0))
    throw std::invalid_argument(std::string(what) + " must lie in [0,1]");
}

}  // namespace

void TerminationProfile::validate() const {
  if (kind == Kind::Uniform) {
    check_prob(pq, "termination probability");
  } else {
    check_prob(near, "near-column termination probability");
    check_prob(far, "far-column termination probability");
    if (threshold < 1)
      throw std::invalid_argument("PerColumn threshold must be >= 1");
  }
}

AttractionMatrix AttractionMatrix::single_row(std::vector<double> probs) {
  AttractionMatrix mat;
  mat.rows.push_back(std::move(probs));
  return mat;
}

std::size_t AttractionMatrix::total_items() const {
  std::size_t n = 0;
  for (const auto& row : rows) n += row.size();
  return n;
}

bool AttractionMatrix::rectangular() const {
  for (const auto& row : rows)
    if (row.size() != rows[0].size()) return false;
  return true;
}

void AttractionMatrix::validate() const {
  if (rows.empty())
    throw std::invalid_argument("attraction matrix must have at least one row");
  for (const auto& row : rows) {
    if (row.empty())
      throw std::invalid_argument("attraction matrix rows must be nonempty");
    for (double p : row) check_prob(p, "attraction probability");
  }
  if (!item_ids.empty()) {
    if (item_ids.size() != rows.size())
      throw std::invalid_argument("item id grid shape does not match rows");
    std::vector<std::int64_t> seen;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (item_ids[i].size() != rows[i].size())
        throw std::invalid_argument("item id grid shape does not match rows");
      for (std::int64_t id : item_ids[i]) seen.push_back(id);
    }
    std::sort(seen.begin(), seen.end());
    for (std::size_t i = 1; i < seen.size(); ++i)
      if (seen[i] == seen[i - 1])
        throw std::invalid_argument("item id " + std::to_string(seen[i]) +
                                    " appears in more than one position");
  }
}

double ClickProbMatrix::total() const {
  double acc = 0.0;
  for (const auto& row : values)
    for (double v : row) acc += v;
  return acc;
}

bool ClickProbMatrix::same_shape(const ClickProbMatrix& other) const {
  if (values.size() != other.values.size()) return false;
  for (std::size_t i = 0; i < values.size(); ++i)
    if (values[i].size() != other.values[i].size()) return false;
  return true;
}

// ---- list models ------------------------------------------------------------

double cm_position_prob(std::span<const double> attr, std::size_t k) {
  if (k >= attr.size())
    throw std::out_of_range("cm_position_prob: position " + std::to_string(k) +
                            " out of range");
  double surv = 1.0;
  for (std::size_t l = 0; l < k; ++l) surv *= 1.0 - attr[l];
  return surv * attr[k];
}

double cm_list_prob(std::span<const double> attr) {
  if (attr.empty()) throw std::invalid_argument("cm_list_prob: empty list");
  double total = 0.0;
  double surv = 1.0;
  for (double p : attr) {
    total += surv * p;
    surv *= 1.0 - p;
  }
  return total;
}

double tcm_position_prob(std::span<const double> attr, std::size_t k,
                         const TerminationProfile& term) {
  if (k >= attr.size())
    throw std::out_of_range("tcm_position_prob: position " +
                            std::to_string(k) + " out of range");
  double surv = 1.0;
  for (std::size_t l = 0; l < k; ++l) surv *= (1.0 - term.at(l)) * (1.0 - attr[l]);
  return surv * attr[k];
}

double tcm_list_prob(std::span<const double> attr,
                     const TerminationProfile& term) {
  if (attr.empty()) throw std::invalid_argument("tcm_list_prob: empty list");
  double total = 0.0;
  double surv = 1.0;
  for (std::size_t k = 0; k < attr.size(); ++k) {
    total += surv * attr[k];
    surv *= (1.0 - term.at(k)) * (1.0 - attr[k]);
  }
  return total;
}

// ---- carousel model ---------------------------------------------------------

double ccm_examination_prob(const AttractionMatrix& mat, std::size_t i,
                            const TerminationProfile& term) {
  if (i >= mat.row_count())
    throw std::out_of_range("ccm_examination_prob: row " + std::to_string(i) +
                            " out of range");
  double q_row = term.row_level();
  double exam = 1.0;
  for (std::size_t l = 0; l < i; ++l) {
    exam *= 1.0 - q_row;
    for (double p : mat.rows[l]) exam *= 1.0 - p;
  }
  return exam;
}

double ccm_position_prob(const AttractionMatrix& mat, std::size_t i,
                         std::size_t j, const TerminationProfile& term) {
  if (i >= mat.row_count())
    throw std::out_of_range("ccm_position_prob: row " + std::to_string(i) +
                            " out of range");
  const std::vector<double>& row = mat.rows[i];
  if (j >= row.size())
    throw std::out_of_range("ccm_position_prob: column " + std::to_string(j) +
                            " out of range");
  // Same running product as the matrix walk below, so a single-cell query
  // returns the identical double to the matching ccm_click_matrix entry.
  double run = ccm_examination_prob(mat, i, term);
  for (std::size_t l = 0; l < j; ++l)
    run *= (1.0 - term.at(l)) * (1.0 - row[l]);
  return run * row[j];
}

// ccm_list_prob and ccm_click_matrix share one pass over the matrix.  `run`
// carries examination-so-far times within-row continuation survival, so each
// added term equals the position's click probability; `next` carries the
// examination probability of the following row.  Keeping a single running
// product (rather than composing separately computed factors) is what makes
// the documented exact reductions hold bit-for-bit: with zero termination the
// per-step updates of `run` and `next` are identical operations, so a matrix
// walk and a flat-list walk produce the same doubles.
namespace {

template <class Cell>
double ccm_walk(const AttractionMatrix& mat, const TerminationProfile& term,
                Cell&& cell) {
  if (mat.rows.empty())
    throw std::invalid_argument("ccm: matrix must have at least one row");
  double q_row = term.row_level();
  double total = 0.0;
  double exam = 1.0;
  for (std::size_t i = 0; i < mat.rows.size(); ++i) {
    const auto& row = mat.rows[i];
    if (row.empty())
      throw std::invalid_argument("ccm: matrix rows must be nonempty");
    double run = exam;
    double next = exam * (1.0 - q_row);
    for (std::size_t j = 0; j < row.size(); ++j) {
      double p = row[j];
      double term_prob = run * p;
      total += term_prob;
      cell(i, j, term_prob);
      run *= (1.0 - term.at(j)) * (1.0 - p);
      next *= 1.0 - p;
    }
    exam = next;
  }
  return total;
}

}  // namespace

double ccm_list_prob(const AttractionMatrix& mat,
                     const TerminationProfile& term) {
  return ccm_walk(mat, term, [](std::size_t, std::size_t, double) {});
}

ClickProbMatrix ccm_click_matrix(const AttractionMatrix& mat,
                                 const TerminationProfile& term) {
  ClickProbMatrix out;
  out.values.resize(mat.rows.size());
  for (std::size_t i = 0; i < mat.rows.size(); ++i)
    out.values[i].resize(mat.rows[i].size());
  ccm_walk(mat, term, [&](std::size_t i, std::size_t j, double p) {
    out.values[i][j] = p;
  });
  return out;
}

// ---- small-attraction comparison --------------------------------------------

TcmCcmComparison compare_tcm_ccm_uniform(double p, std::size_t m,
                                         std::size_t K, double pq) {
  check_prob(p, "attraction probability");
  check_prob(pq, "termination probability");
  if (m < 1 || K < 1)
    throw std::invalid_argument("compare_tcm_ccm_uniform: m and K must be >= 1");
  // Both sums walk the same power chain c_t = (1-pq)^t evaluated by repeated
  // multiplication; the list term at (i,j) uses exponent K*i + j, the grid
  // term uses i + j (0-based).  Since the chain is non-increasing and the
  // list exponent is never smaller, term-by-term dominance (and with it the
  // documented tcm <= ccm guarantee) holds in floating point, not just in
  // exact arithmetic; with m == 1 the two walks are the same operations.
  double tcm_sum = 0.0;
  double ccm_sum = 0.0;
  double flat_pow = 1.0;
  double row_pow = 1.0;
  for (std::size_t i = 0; i < m; ++i) {
    double cell_pow = row_pow;
    for (std::size_t j = 0; j < K; ++j) {
      tcm_sum += flat_pow;
      flat_pow *= 1.0 - pq;
      ccm_sum += cell_pow;
      cell_pow *= 1.0 - pq;
    }
    row_pow *= 1.0 - pq;
  }
  return {p * tcm_sum, p * ccm_sum};
}

}  // namespace cclab

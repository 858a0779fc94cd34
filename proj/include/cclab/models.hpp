#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace cclab {

/**
 * Closed-form click probabilities for three single-click browsing models
 * over ranked item layouts:
 *
 *  - CM  (cascade over a list): the user scans a list top-down and clicks
 *    the first attractive item.  Item at rank k is clicked with probability
 *    prod_{l<k}(1 - p_l) * p_k.
 *
 *  - TCM (terminating cascade over a list): after each unattractive item the
 *    user abandons the session with a termination probability, so rank k
 *    additionally survives a factor prod_{l<k}(1 - q_l), where q_l is the
 *    termination probability at rank l (uniform or per-column, see
 *    TerminationProfile).
 *
 *  - CCM (carousel cascade over a matrix): items are arranged in rows
 *    ("carousels").  The user scans rows top-down; a row with at least one
 *    attractive item is entered and browsed like a TCM list; an entirely
 *    unattractive row is skipped after one termination draw.  Row i is
 *    examined with probability prod_{l<i} (1 - q_row) * prod_j (1 - p_{l,j}).
 *
 * All positions and row/column arguments in this API are 0-based.
 * Probabilities are computed in linear space with incremental prefix
 * products; no logarithms and no pow(), which keeps the documented exact
 * reductions (zero termination -> CM, one row -> TCM, near == far -> uniform)
 * bit-for-bit true.
 */

enum class ClickModel { CM, TCM, CCM };

// Session-termination behaviour.  Uniform: one probability everywhere.
// PerColumn: columns before `threshold` (0-based count) use `near`, the rest
// use `far` -- modelling positions that require scrolling.  The row-level
// termination draw of CCM always uses the near-column value, since row labels
// are visible without scrolling.
struct TerminationProfile {
  enum class Kind { Uniform, PerColumn };

  Kind kind = Kind::Uniform;
  double pq = 0.0;             // Uniform
  std::size_t threshold = 1;   // PerColumn: number of near columns (>= 1)
  double near = 0.0;           // PerColumn: termination at columns < threshold
  double far = 0.0;            // PerColumn: termination at columns >= threshold

  static TerminationProfile uniform(double pq) {
    TerminationProfile t;
    t.kind = Kind::Uniform;
    t.pq = pq;
    return t;
  }

  static TerminationProfile per_column(std::size_t threshold, double near,
                                       double far) {
    TerminationProfile t;
    t.kind = Kind::PerColumn;
    t.threshold = threshold;
    t.near = near;
    t.far = far;
    return t;
  }

  // Termination probability after the item at 0-based column `col`.
  double at(std::size_t col) const {
    if (kind == Kind::Uniform) return pq;
    return col < threshold ? near : far;
  }

  // Termination probability after skipping an unattractive carousel.
  double row_level() const { return kind == Kind::Uniform ? pq : near; }

  // Throws std::invalid_argument on out-of-range probabilities or a
  // PerColumn threshold of zero.
  void validate() const;
};

// A ragged matrix of attraction probabilities, one row per carousel.  A
// single-row matrix doubles as a plain ranked list.  `item_ids` optionally
// records which item sits at each position (same shape as `rows`); ids must
// be pairwise distinct.
struct AttractionMatrix {
  std::vector<std::vector<double>> rows;
  std::vector<std::vector<std::int64_t>> item_ids;  // empty, or same shape

  static AttractionMatrix single_row(std::vector<double> probs);

  std::size_t row_count() const { return rows.size(); }
  std::size_t total_items() const;
  bool has_ids() const { return !item_ids.empty(); }
  bool rectangular() const;

  // Throws std::invalid_argument on empty/ragged-id/out-of-range content.
  void validate() const;
};

// Per-position click probabilities (model-implied or empirical), shaped like
// the layout they describe.
struct ClickProbMatrix {
  std::vector<std::vector<double>> values;

  double total() const;
  bool same_shape(const ClickProbMatrix& other) const;
};

// ---- list models ------------------------------------------------------------

// P(click lands on 0-based position k) under CM.
// Throws std::out_of_range if k >= attr.size().
double cm_position_prob(std::span<const double> attr, std::size_t k);

// P(any click) under CM; equals 1 - prod(1 - p).  Throws
// std::invalid_argument on an empty list.
double cm_list_prob(std::span<const double> attr);

// P(click lands on 0-based position k) under TCM.
double tcm_position_prob(std::span<const double> attr, std::size_t k,
                         const TerminationProfile& term);

// P(any click) under TCM.
double tcm_list_prob(std::span<const double> attr,
                     const TerminationProfile& term);

// ---- carousel model ---------------------------------------------------------

// P(row i is examined).  Throws std::out_of_range if i >= row count.
double ccm_examination_prob(const AttractionMatrix& mat, std::size_t i,
                            const TerminationProfile& term);

// P(click lands on row i, column j): examination(i) times the within-row
// continuation term, evaluated with the same running product as
// ccm_click_matrix so a single-cell query matches the matrix cell exactly.
// Throws std::out_of_range for a bad i or j.
double ccm_position_prob(const AttractionMatrix& mat, std::size_t i,
                         std::size_t j, const TerminationProfile& term);

// P(any click) on the whole matrix.
double ccm_list_prob(const AttractionMatrix& mat,
                     const TerminationProfile& term);

// All position probabilities at once; summing the entries row-major
// reproduces ccm_list_prob exactly (same accumulation order).
ClickProbMatrix ccm_click_matrix(const AttractionMatrix& mat,
                                 const TerminationProfile& term);

// ---- small-attraction comparison --------------------------------------------

// First-order values of the list and carousel click probabilities when every
// position carries the same small attraction probability p: the list sums
// (1-pq)^(k-1) over all m*K flat ranks, the carousel grid sums
// (1-pq)^(i+j-2).  These are approximation values, not probabilities, and
// may exceed 1.  Guarantees tcm_approx <= ccm_approx.
struct TcmCcmComparison {
  double tcm_approx = 0.0;
  double ccm_approx = 0.0;
};

TcmCcmComparison compare_tcm_ccm_uniform(double p, std::size_t m,
                                         std::size_t K, double pq);

}  // namespace cclab

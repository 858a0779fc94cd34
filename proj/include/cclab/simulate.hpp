#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "cclab/models.hpp"
#include "cclab/rng.hpp"

namespace cclab {

// One simulated browsing session.  `clicked` holds the 0-based (row, column)
// of the click, if any; `terminated_early` is set when the session ended on a
// termination draw rather than a click or list exhaustion; `examined_count`
// counts item positions the user actually examined (skipped carousels
// contribute nothing).
struct SessionOutcome {
  std::optional<std::pair<std::size_t, std::size_t>> clicked;
  bool terminated_early = false;
  std::size_t examined_count = 0;
};

// Aggregated click counts over a number of simulated sessions, shaped like
// the layout they were simulated on.
struct EmpiricalClicks {
  std::vector<std::vector<std::uint64_t>> counts;
  std::uint64_t sessions = 0;

  std::uint64_t total_clicks() const;
};

/**
 * Samples one session of the generative browsing process.
 *
 * Draw order (fixed; part of the determinism contract):
 *  - CM/TCM (single-row matrices only): per position left to right, one
 *    attraction draw; on failure TCM adds one termination draw.
 *  - CCM: per row top-down, one attraction draw per item left to right
 *    (deciding whether the row is entered); if no item is attractive, one
 *    row-level termination draw; otherwise the user walks the row and makes
 *    one termination draw after each examined unattractive item before the
 *    first attractive one, which is clicked.
 *
 * No draw follows a click.  Throws std::invalid_argument when a CM/TCM model
 * is paired with a multi-row matrix or the matrix is malformed.
 */
SessionOutcome simulate_session(const AttractionMatrix& mat,
                                const TerminationProfile& term,
                                ClickModel model, Xoshiro256ss& rng);

// Runs n_sessions independent sessions, session s drawing from
// Xoshiro256ss::substream(seed, s), and aggregates click counts.  The
// substream-per-session scheme makes the result independent of execution
// order.  Throws std::invalid_argument when n_sessions is zero.
EmpiricalClicks empirical_click_matrix(const AttractionMatrix& mat,
                                       const TerminationProfile& term,
                                       ClickModel model,
                                       std::uint64_t n_sessions,
                                       std::uint64_t seed);

/**
 * Exact per-position click probabilities by enumeration of the generative
 * process -- the correctness oracle for the closed forms in models.hpp.
 *
 * Every attraction indicator is enumerated explicitly (2^row_length
 * assignments per row); termination branches are integrated exactly along
 * the walk, and indicators the walk never consumes integrate out to 1.
 * No prefix-product shortcuts from the closed forms are used.
 *
 * The indicator budget (items + termination slots) must be at most 24;
 * larger instances throw std::length_error.
 */
ClickProbMatrix enumerate_exact(const AttractionMatrix& mat,
                                const TerminationProfile& term,
                                ClickModel model);

}  // namespace cclab

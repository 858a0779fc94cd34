#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "cclab/dataset.hpp"
#include "cclab/models.hpp"

namespace cclab {

// A candidate item for placement.
struct ScoredItem {
  std::int64_t item_id = 0;
  std::int32_t topic_id = 0;
  double attraction = 0.0;  // in [0, 1]
};

enum class ItemPool { Top100, Top1000, All };

// Shape constraints for a carousel layout.  Unset means unconstrained.
struct LayoutSpec {
  std::optional<std::size_t> max_rows;
  std::optional<std::size_t> items_per_row;

  void validate() const;  // set values must be >= 1
};

// The K most attractive items in descending attraction order (ties: ascending
// item_id), as a single-row matrix with item_ids filled in.  This maximizes
// the sequential-browsing click probability for any uniform abandonment
// level.  Throws std::invalid_argument when items is empty, K == 0, or
// K > items.size().
AttractionMatrix tcm_optimal_list(std::span<const ScoredItem> items,
                                  std::size_t K);

// One row per topic: items sorted within a row by descending attraction
// (ties: ascending item_id), rows ordered by descending total attraction
// (ties: ascending topic_id).  items_per_row truncates each row after
// sorting; max_rows truncates the row list after ordering.  Within-row
// descending order is exactly optimal; the row ordering is the greedy
// total-attraction heuristic, which best_row_order_bruteforce can check
// against on tiny instances.  Throws std::invalid_argument on an empty item
// set or invalid spec.
AttractionMatrix ccm_optimal_matrix(std::span<const ScoredItem> items,
                                    const LayoutSpec& spec);

// Concatenates the rows of a carousel layout into one long row, preserving
// row-major order (for evaluating a grid as a plain list).
AttractionMatrix flatten_row_major(const AttractionMatrix& mat);

// Dense item indices of the pool: the `count` items with the largest total
// rating value in `data` (ties: ascending item id), or all items.  Returned
// ascending by dense index.  When the dataset holds fewer items than the
// pool size, truncation is a no-op and every item is returned.
std::vector<std::uint32_t> select_item_pool(const RatingsDataset& data,
                                            ItemPool pool);

std::size_t item_pool_size(ItemPool pool);  // 100, 1000, or 0 (= all)
const char* item_pool_name(ItemPool pool);  // "top100", "top1000", "all"

// Exhaustive search over all row permutations of `mat` for the ordering that
// maximizes the carousel click probability (ties: first permutation in
// lexicographic order of row indices).  Exponential; intended for validating
// the greedy row ordering on tiny instances.  Throws std::invalid_argument
// for more than 8 rows.
AttractionMatrix best_row_order_bruteforce(const AttractionMatrix& mat,
                                           const TerminationProfile& term);

}  // namespace cclab

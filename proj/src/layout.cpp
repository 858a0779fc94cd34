#include "cclab/layout.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

namespace cclab {
namespace {

void check_attraction(double p) {
  if (!(p >= 0.0 && p <= 1.0))
    throw std::invalid_argument("attraction must lie in [0, 1]");
}

bool more_attractive(const ScoredItem& a, const ScoredItem& b) {
  if (a.attraction != b.attraction) return a.attraction > b.attraction;
  return a.item_id < b.item_id;
}

}  // namespace

void LayoutSpec::validate() const {
  if (max_rows && *max_rows == 0)
    throw std::invalid_argument("max_rows must be >= 1");
  if (items_per_row && *items_per_row == 0)
    throw std::invalid_argument("items_per_row must be >= 1");
}

AttractionMatrix tcm_optimal_list(std::span<const ScoredItem> items,
                                  std::size_t K) {
  if (items.empty()) throw std::invalid_argument("empty item set");
  if (K == 0) throw std::invalid_argument("list length must be >= 1");
  if (K > items.size())
    throw std::invalid_argument("list length exceeds item count");
  for (const ScoredItem& it : items) check_attraction(it.attraction);

  std::vector<ScoredItem> sorted(items.begin(), items.end());
  std::sort(sorted.begin(), sorted.end(), more_attractive);
  AttractionMatrix mat;
  mat.rows.resize(1);
  mat.item_ids.resize(1);
  for (std::size_t k = 0; k < K; ++k) {
    mat.rows[0].push_back(sorted[k].attraction);
    mat.item_ids[0].push_back(sorted[k].item_id);
  }
  return mat;
}

AttractionMatrix ccm_optimal_matrix(std::span<const ScoredItem> items,
                                    const LayoutSpec& spec) {
  if (items.empty()) throw std::invalid_argument("empty item set");
  spec.validate();
  for (const ScoredItem& it : items) check_attraction(it.attraction);

  // Group by topic; std::map iterates topics in ascending id order, which
  // settles row ties deterministically.
  std::map<std::int32_t, std::vector<ScoredItem>> by_topic;
  for (const ScoredItem& it : items) by_topic[it.topic_id].push_back(it);

  struct Row {
    std::int32_t topic_id;
    std::vector<ScoredItem> items;
    double total;
  };
  std::vector<Row> rows;
  rows.reserve(by_topic.size());
  for (auto& [topic, vec] : by_topic) {
    std::sort(vec.begin(), vec.end(), more_attractive);
    if (spec.items_per_row && vec.size() > *spec.items_per_row)
      vec.resize(*spec.items_per_row);
    double total = 0.0;
    for (const ScoredItem& it : vec) total += it.attraction;
    rows.push_back(Row{topic, std::move(vec), total});
  }
  std::stable_sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
    if (a.total != b.total) return a.total > b.total;
    return a.topic_id < b.topic_id;
  });
  if (spec.max_rows && rows.size() > *spec.max_rows)
    rows.resize(*spec.max_rows);

  AttractionMatrix mat;
  mat.rows.reserve(rows.size());
  mat.item_ids.reserve(rows.size());
  for (const Row& r : rows) {
    std::vector<double> probs;
    std::vector<std::int64_t> ids;
    probs.reserve(r.items.size());
    ids.reserve(r.items.size());
    for (const ScoredItem& it : r.items) {
      probs.push_back(it.attraction);
      ids.push_back(it.item_id);
    }
    mat.rows.push_back(std::move(probs));
    mat.item_ids.push_back(std::move(ids));
  }
  return mat;
}

AttractionMatrix flatten_row_major(const AttractionMatrix& mat) {
  mat.validate();
  AttractionMatrix flat;
  flat.rows.resize(1);
  for (const auto& row : mat.rows)
    flat.rows[0].insert(flat.rows[0].end(), row.begin(), row.end());
  if (mat.has_ids()) {
    flat.item_ids.resize(1);
    for (const auto& row : mat.item_ids)
      flat.item_ids[0].insert(flat.item_ids[0].end(), row.begin(), row.end());
  }
  return flat;
}

std::size_t item_pool_size(ItemPool pool) {
  switch (pool) {
    case ItemPool::Top100: return 100;
    case ItemPool::Top1000: return 1000;
    case ItemPool::All: return 0;
  }
  throw std::invalid_argument("unknown item pool");
}

const char* item_pool_name(ItemPool pool) {
  switch (pool) {
    case ItemPool::Top100: return "top100";
    case ItemPool::Top1000: return "top1000";
    case ItemPool::All: return "all";
  }
  throw std::invalid_argument("unknown item pool");
}

std::vector<std::uint32_t> select_item_pool(const RatingsDataset& data,
                                            ItemPool pool) {
  const std::size_t n = data.n_items();
  std::vector<std::uint32_t> out;
  if (pool == ItemPool::All) {
    out.resize(n);
    std::iota(out.begin(), out.end(), 0u);
    return out;
  }
  const std::size_t count = std::min(item_pool_size(pool), n);
  std::vector<double> sums(n, 0.0);
  for (const Rating& r : data.triples) sums[r.item] += r.value;
  std::vector<std::uint32_t> order(n);
  std::iota(order.begin(), order.end(), 0u);
  std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
    if (sums[a] != sums[b]) return sums[a] > sums[b];
    return a < b;  // dense index order == ascending original item id
  });
  out.assign(order.begin(), order.begin() + count);
  std::sort(out.begin(), out.end());
  return out;
}

AttractionMatrix best_row_order_bruteforce(const AttractionMatrix& mat,
                                           const TerminationProfile& term) {
  mat.validate();
  term.validate();
  const std::size_t m = mat.row_count();
  if (m > 8)
    throw std::invalid_argument("brute-force row search limited to 8 rows");

  std::vector<std::size_t> perm(m), best_perm(m);
  std::iota(perm.begin(), perm.end(), 0u);
  best_perm = perm;
  double best = -1.0;
  auto apply = [&](const std::vector<std::size_t>& p) {
    AttractionMatrix reordered;
    reordered.rows.reserve(m);
    if (mat.has_ids()) reordered.item_ids.reserve(m);
    for (std::size_t i : p) {
      reordered.rows.push_back(mat.rows[i]);
      if (mat.has_ids()) reordered.item_ids.push_back(mat.item_ids[i]);
    }
    return reordered;
  };
  do {
    double v = ccm_list_prob(apply(perm), term);
    if (v > best) {  // strict: ties keep the earliest permutation
      best = v;
      best_perm = perm;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return apply(best_perm);
}

}  // namespace cclab

#include "cclab/simulate.hpp"

#include <stdexcept>
#include <string>

namespace cclab {

namespace {

void check_model_shape(const AttractionMatrix& mat, ClickModel model) {
  if (mat.rows.empty())
    throw std::invalid_argument("simulate: matrix must have at least one row");
  if (model != ClickModel::CCM && mat.row_count() != 1)
    throw std::invalid_argument(
        "simulate: CM/TCM require a single-row matrix, got " +
        std::to_string(mat.row_count()) + " rows");
}

SessionOutcome simulate_list(std::span<const double> attr,
                             const TerminationProfile& term, bool with_term,
                             Xoshiro256ss& rng) {
  SessionOutcome out;
  for (std::size_t k = 0; k < attr.size(); ++k) {
    ++out.examined_count;
    if (rng.bernoulli(attr[k])) {
      out.clicked = {0, k};
      return out;
    }
    if (with_term && rng.bernoulli(term.at(k))) {
      out.terminated_early = true;
      return out;
    }
  }
  return out;
}

SessionOutcome simulate_carousels(const AttractionMatrix& mat,
                                  const TerminationProfile& term,
                                  Xoshiro256ss& rng) {
  SessionOutcome out;
  std::vector<char> attractive;
  for (std::size_t i = 0; i < mat.row_count(); ++i) {
    const auto& row = mat.rows[i];
    attractive.assign(row.size(), 0);
    bool any = false;
    for (std::size_t j = 0; j < row.size(); ++j) {
      attractive[j] = rng.bernoulli(row[j]) ? 1 : 0;
      any = any || attractive[j];
    }
    if (!any) {
      // Row label signals nothing of interest; skip with one termination draw.
      if (rng.bernoulli(term.row_level())) {
        out.terminated_early = true;
        return out;
      }
      continue;
    }
    for (std::size_t j = 0; j < row.size(); ++j) {
      ++out.examined_count;
      if (attractive[j]) {
        out.clicked = {i, j};
        return out;
      }
      if (rng.bernoulli(term.at(j))) {
        out.terminated_early = true;
        return out;
      }
    }
  }
  return out;
}

}  // namespace

std::uint64_t EmpiricalClicks::total_clicks() const {
  std::uint64_t n = 0;
  for (const auto& row : counts)
    for (std::uint64_t c : row) n += c;
  return n;
}

SessionOutcome simulate_session(const AttractionMatrix& mat,
                                const TerminationProfile& term,
                                ClickModel model, Xoshiro256ss& rng) {
  check_model_shape(mat, model);
  switch (model) {
    case ClickModel::CM:
      return simulate_list(mat.rows[0], term, false, rng);
    case ClickModel::TCM:
      return simulate_list(mat.rows[0], term, true, rng);
    case ClickModel::CCM:
    default:
      return simulate_carousels(mat, term, rng);
  }
}

EmpiricalClicks empirical_click_matrix(const AttractionMatrix& mat,
                                       const TerminationProfile& term,
                                       ClickModel model,
                                       std::uint64_t n_sessions,
                                       std::uint64_t seed) {
  if (n_sessions == 0)
    throw std::invalid_argument("empirical_click_matrix: need >= 1 session");
  mat.validate();
  term.validate();
  check_model_shape(mat, model);
  EmpiricalClicks out;
  out.sessions = n_sessions;
  out.counts.resize(mat.row_count());
  for (std::size_t i = 0; i < mat.row_count(); ++i)
    out.counts[i].assign(mat.rows[i].size(), 0);
  for (std::uint64_t s = 0; s < n_sessions; ++s) {
    Xoshiro256ss rng = Xoshiro256ss::substream(seed, s);
    SessionOutcome oc = simulate_session(mat, term, model, rng);
    if (oc.clicked) ++out.counts[oc.clicked->first][oc.clicked->second];
  }
  return out;
}

// ---- enumeration oracle ------------------------------------------------------

namespace {

// Weight of one attraction-indicator assignment for a row: the product of
// p or (1-p) per item depending on its bit in `mask`.
double mask_weight(std::span<const double> row, std::uint32_t mask) {
  double w = 1.0;
  for (std::size_t j = 0; j < row.size(); ++j)
    w *= (mask >> j & 1u) ? row[j] : 1.0 - row[j];
  return w;
}

// Enumerates one row entered by the user: adds click mass for the first
// attractive position of every assignment, integrating the termination
// branches of the unattractive prefix.  Returns the probability mass that
// survives the row entirely unattractive (for CCM row-skipping); the caller
// decides what happens with it.
double enumerate_row(std::span<const double> row,
                     const TerminationProfile& term, bool with_term,
                     double weight, std::vector<double>& click_out) {
  double skip_mass = 0.0;
  std::uint32_t n_masks = 1u << row.size();
  for (std::uint32_t mask = 0; mask < n_masks; ++mask) {
    double w = weight * mask_weight(row, mask);
    if (mask == 0) {
      skip_mass += w;
      continue;
    }
    std::size_t first = 0;
    while (!(mask >> first & 1u)) ++first;
    if (with_term)
      for (std::size_t l = 0; l < first; ++l) w *= 1.0 - term.at(l);
    click_out[first] += w;
  }
  return skip_mass;
}

}  // namespace

ClickProbMatrix enumerate_exact(const AttractionMatrix& mat,
                                const TerminationProfile& term,
                                ClickModel model) {
  mat.validate();
  term.validate();
  check_model_shape(mat, model);

  std::size_t items = mat.total_items();
  std::size_t indicators = items;  // one attraction indicator per item
  if (model == ClickModel::TCM) indicators += items;
  if (model == ClickModel::CCM) indicators += items + mat.row_count();
  if (indicators > 24)
    throw std::length_error("enumerate_exact: instance needs " +
                            std::to_string(indicators) +
                            " indicators, capacity is 24");

  ClickProbMatrix out;
  out.values.resize(mat.row_count());
  for (std::size_t i = 0; i < mat.row_count(); ++i)
    out.values[i].assign(mat.rows[i].size(), 0.0);

  if (model != ClickModel::CCM) {
    enumerate_row(mat.rows[0], term, model == ClickModel::TCM, 1.0,
                  out.values[0]);
    return out;
  }

  double reach = 1.0;  // mass that arrives at the current row
  for (std::size_t i = 0; i < mat.row_count(); ++i) {
    double skip = enumerate_row(mat.rows[i], term, true, reach, out.values[i]);
    reach = skip * (1.0 - term.row_level());
  }
  return out;
}

}  // namespace cclab

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "cclab/dataset.hpp"

namespace cclab {

// SGD matrix-factorization hyperparameters.
struct MfHyperParams {
  std::size_t d = 32;            // latent dimension
  std::size_t epochs = 20;
  double learning_rate = 0.005;
  double regularization = 0.02;
  double init_scale = 0.1;       // stddev of the Gaussian factor init
  std::uint64_t seed = 0;

  void validate() const;
};

// Biased matrix-factorization model:
//   predict(u, a) = global_mean + user_bias[u] + item_bias[a]
//                 + <user_factors[u], item_factors[a]>.
// Users/items with no training ratings keep zero bias and zero factors, so
// their prediction is exactly the global mean.
struct FactorModel {
  std::size_t d = 0;
  std::uint64_t seed = 0;
  double global_mean = 0.0;
  std::vector<double> user_bias;
  std::vector<double> item_bias;
  std::vector<double> user_factors;  // row-major n_users x d
  std::vector<double> item_factors;  // row-major n_items x d
  std::vector<double> epoch_rmse;    // pre-update train RMSE per epoch
  double train_rmse = 0.0;           // post-training train RMSE

  std::size_t n_users() const { return user_bias.size(); }
  std::size_t n_items() const { return item_bias.size(); }
  std::span<const double> user_row(std::size_t u) const;
  std::span<const double> item_row(std::size_t a) const;
  double predict(std::size_t u, std::size_t a) const;
};

// Trains with per-epoch reshuffled SGD (deterministic given seed and kernel
// backend).  Factors init Gaussian(0, init_scale), biases zero; after
// training, rows of users/items that never appeared in `data` are reset to
// zero so predict() falls back to the global mean.  Throws
// std::invalid_argument on empty data or invalid hyperparameters.
FactorModel train_mf(const RatingsDataset& data, const MfHyperParams& hp);

// Versioned text checkpoint (exact round-trip; records d and seed).
void save_factor_model(const FactorModel& model, const std::string& path);
FactorModel load_factor_model(const std::string& path);

// Per-user attraction probabilities over all items.
struct AttractionTable {
  std::size_t items = 0;
  std::vector<double> probs;  // row-major n_users x n_items

  std::size_t n_users() const { return items == 0 ? 0 : probs.size() / items; }
  std::span<const double> row(std::size_t u) const;
};

// Numerically stable softmax (max-shifted); each row sums to 1 up to
// rounding and every entry is strictly positive.
std::vector<double> softmax(std::span<const double> scores);

// softmax over each user's predicted ratings for all items.
AttractionTable softmax_attractions(const FactorModel& model);

// Non-personalized baseline scores (one value per item, shared by every
// user): the mean predicted rating across users, and seeded uniform draws
// on [1, 5).
std::vector<double> popular_ratings(const FactorModel& model);
std::vector<double> random_ratings(std::size_t n_items, std::uint64_t seed);

}  // namespace cclab

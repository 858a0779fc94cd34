#pragma once

#include <cstdint>
#include <string>

#include "cclab/dataset.hpp"

namespace cclab {

// Seeded generator for a MovieLens-schema catalog with the structural
// features the pipeline exercises: genre-affinity users, a long-tailed item
// popularity / user activity distribution, multi-genre movies, a small
// "(no genres listed)" slice, and titles that need CSV quoting.
struct SynthConfig {
  std::size_t n_users = 610;
  std::size_t n_items = 9000;
  std::uint64_t seed = 7;

  void validate() const;
};

struct SynthData {
  RatingsDataset ratings;
  std::vector<MovieRecord> movies;
};

SynthData synth_catalog(const SynthConfig& cfg);

// Emits ratings.csv / movies.csv for the catalog (MovieLens schema).
void write_synth(const SynthData& data, const std::string& ratings_path,
                 const std::string& movies_path);

}  // namespace cclab

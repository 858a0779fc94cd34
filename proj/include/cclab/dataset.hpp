#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace cclab {

// One rating with dense (0-based) user/item indices.
struct Rating {
  std::uint32_t user;
  std::uint32_t item;
  double value;

  friend bool operator==(const Rating&, const Rating&) = default;
};

// Ratings with a dense index space.  Dense indices are assigned in ascending
// order of the original ids, so ordering by dense index and by original id
// coincide.  Subsets produced by split_half keep the full id universe: a user
// or item may own zero triples in a subset but keeps its index.
struct RatingsDataset {
  std::vector<Rating> triples;               // in source order
  std::vector<std::int64_t> user_ids;        // dense user index -> original id
  std::vector<std::int64_t> item_ids;        // dense item index -> original id

  std::size_t n_users() const { return user_ids.size(); }
  std::size_t n_items() const { return item_ids.size(); }

  // Ratings held by each user / received by each item.
  std::vector<std::uint32_t> user_counts() const;
  std::vector<std::uint32_t> item_counts() const;
};

struct MovieRecord {
  std::int64_t movie_id = 0;
  std::string title;
  std::vector<std::string> genres;  // at least one token

  friend bool operator==(const MovieRecord&, const MovieRecord&) = default;
};

struct LoadedData {
  RatingsDataset ratings;
  std::vector<MovieRecord> movies;
};

// Reads MovieLens-schema CSV files (ratings.csv: userId,movieId,rating,
// timestamp; movies.csv: movieId,title,genres with pipe-separated genres).
// One header line each; quoted fields with embedded commas/quotes are
// handled.  Throws IoError when a file cannot be opened, ParseError (with
// line number) on malformed content, std::invalid_argument on duplicate
// (user, item) pairs, out-of-range ratings, or a rated movie without
// metadata.
LoadedData load_movielens(const std::string& ratings_path,
                          const std::string& movies_path);

// Canonical dumps in the same schema (timestamps are not modeled and are
// written as 0).  Reloading a dump yields identical triples.
void write_ratings_csv(const RatingsDataset& data, const std::string& path);
void write_movies_csv(const std::vector<MovieRecord>& movies,
                      const std::string& path);

// Index sets into `triples` for a random half/half split.
struct SplitAssignment {
  std::vector<std::uint32_t> train_idx;
  std::vector<std::uint32_t> test_idx;
  std::uint64_t seed = 0;
};

// Seeded uniform permutation; the first floor(n/2) entries become the train
// half.  Throws std::invalid_argument when the dataset has fewer than two
// ratings.
SplitAssignment split_half(const RatingsDataset& data, std::uint64_t seed);

// Dataset with the selected triples and the unchanged id universe.
RatingsDataset subset(const RatingsDataset& data,
                      std::span<const std::uint32_t> idx);

// Topic ids for every dense item.  Topics are the genre names seen anywhere
// in the movie list, sorted lexicographically, so topic ids are deterministic
// and tie-breaking "lexicographically smallest genre" equals "smallest
// topic id".  The literal "(no genres listed)" is a topic like any other.
struct GenreAssignment {
  std::vector<std::string> topic_names;
  std::vector<std::int32_t> topic_of_item;  // dense item index -> topic id
};

// Multi-genre movies get the genre whose movies collected the most ratings
// in `data` (ties: lexicographically smallest name).  Throws
// std::invalid_argument if a rated movie lacks metadata.
GenreAssignment assign_primary_genre(const std::vector<MovieRecord>& movies,
                                     const RatingsDataset& data);

// Quintile buckets by rating count: group 0 = fewest ratings ("very low").
struct UserGroups {
  std::vector<std::uint8_t> group_of_user;  // dense user index -> 0..4

  static const std::array<const char*, 5>& labels();
};

// Users sorted ascending by rating count (ties by dense index, i.e. by
// original id) and cut into 5 near-equal groups.  Throws
// std::invalid_argument with fewer than 5 users.
UserGroups quintile_groups(const RatingsDataset& data);

}  // namespace cclab

#include "cclab/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "cclab/rng.hpp"

namespace cclab {
namespace {

// The 19 genre labels of the common movie-catalog schema.  Catalog shares are
// kept near-uniform so every genre carousel has comparable depth; what makes
// genres matter to a user is the preference structure below, not rarity.
constexpr const char* kGenres[] = {
    "Action",      "Adventure", "Animation", "Children", "Comedy",
    "Crime",       "Documentary", "Drama",   "Fantasy",  "Film-Noir",
    "Horror",      "IMAX",      "Musical",   "Mystery",  "Romance",
    "Sci-Fi",      "Thriller",  "War",       "Western",
};
constexpr std::size_t kGenreCount = std::size(kGenres);

// Rating-model knobs.  The design goal is a catalog whose preference
// structure a modest SGD factor model can actually pick up from half the
// ratings: a per-user genre affinity (drives which carousels a user browses),
// plus a strong two-sided "style" axis (drives which items within a carousel
// a user likes).  The style axis is the personalization signal: it is
// user-specific, low-rank, and large relative to the rating noise.
constexpr double kBaseRating = 3.28;
constexpr double kQualityGain = 0.18;      // rating points per quality z-unit
constexpr double kUserBiasSd = 0.08;
constexpr double kPopLogitSd = 0.60;
constexpr double kQualitySelectGain = 0.27;  // popularity tilt toward quality
constexpr double kRatingNoiseSd = 0.12;
constexpr double kAffinityBonus[3] = {0.90, 0.75, 0.60};
constexpr double kNonFavoritePenalty = -0.35;
constexpr double kFavoriteSelectBoost[3] = {6.0, 4.0, 2.5};
constexpr double kStyleGain = 0.55;    // rating points per w_u * s_a unit
constexpr double kStyleMag = 0.9;      // |w_u|
constexpr double kStyleSelect = 0.5;   // selection tilt toward congruent style

std::size_t draw_genre(Xoshiro256ss& rng) {
  return static_cast<std::size_t>(rng.next_below(kGenreCount));
}

}  // namespace

void SynthConfig::validate() const {
  if (n_users < 5) throw std::invalid_argument("need at least 5 users");
  if (n_items < 100) throw std::invalid_argument("need at least 100 items");
}

SynthData synth_catalog(const SynthConfig& cfg) {
  cfg.validate();
  SynthData out;

  // --- items ------------------------------------------------------------
  struct Item {
    std::int64_t movie_id;
    double quality;        // z-scored latent quality
    double style;          // +1 or -1: which side of the style axis
    double select_weight;  // popularity weight for rating selection
    std::vector<std::size_t> genre_idx;
  };
  std::vector<Item> items(cfg.n_items);
  {
    Xoshiro256ss rng = Xoshiro256ss::substream(cfg.seed, 1);
    for (std::size_t a = 0; a < cfg.n_items; ++a) {
      Item& it = items[a];
      it.movie_id = static_cast<std::int64_t>(3 * a + 1);
      if (rng.next_double() < 0.01) {
        it.genre_idx = {};  // marks "(no genres listed)"
      } else {
        it.genre_idx.push_back(draw_genre(rng));
        if (rng.next_double() < 0.15) {
          std::size_t g;
          do g = draw_genre(rng);
          while (g == it.genre_idx[0]);
          it.genre_idx.push_back(g);
        }
        if (it.genre_idx.size() == 2 && rng.next_double() < 0.20) {
          std::size_t g;
          do g = draw_genre(rng);
          while (g == it.genre_idx[0] || g == it.genre_idx[1]);
          it.genre_idx.push_back(g);
        }
      }
      it.quality = rng.normal(0.0, 1.0);
      it.style = (rng.next() & 1) ? 1.0 : -1.0;
      it.select_weight = std::exp(kQualitySelectGain * it.quality +
                                  rng.normal(0.0, kPopLogitSd));
      const int year = 1960 + static_cast<int>(rng.next_below(60));

      MovieRecord rec;
      rec.movie_id = it.movie_id;
      const std::string id_str = std::to_string(it.movie_id);
      const std::string year_str = " (" + std::to_string(year) + ")";
      if (a % 9 == 3)
        rec.title = "Saga of Item " + id_str + ", The" + year_str;
      else if (a % 23 == 5)
        rec.title = "Item " + id_str + " \"Redux\"" + year_str;
      else
        rec.title = "Item " + id_str + year_str;
      if (it.genre_idx.empty()) {
        rec.genres = {"(no genres listed)"};
      } else {
        // Store genres in label order for a tidy pipe list.
        std::vector<std::size_t> sorted = it.genre_idx;
        std::sort(sorted.begin(), sorted.end());
        for (std::size_t g : sorted) rec.genres.push_back(kGenres[g]);
      }
      out.movies.push_back(std::move(rec));
    }
    // A small slice of catalog-only movies that nobody rated.
    const std::size_t extras = cfg.n_items / 100;
    for (std::size_t e = 0; e < extras; ++e) {
      MovieRecord rec;
      rec.movie_id = static_cast<std::int64_t>(3 * cfg.n_items + 5 + 7 * e);
      rec.title = "Unseen Item " + std::to_string(rec.movie_id) + " (" +
                  std::to_string(1960 + static_cast<int>(rng.next_below(60))) +
                  ")";
      rec.genres = {kGenres[draw_genre(rng)]};
      out.movies.push_back(std::move(rec));
    }
  }

  // --- users --------------------------------------------------------------
  struct User {
    double bias;
    double style;  // +kStyleMag or -kStyleMag: taste along the style axis
    std::size_t activity;
    std::size_t favorites[3];
  };
  std::vector<User> users(cfg.n_users);
  {
    Xoshiro256ss rng = Xoshiro256ss::substream(cfg.seed, 2);
    const std::size_t max_activity =
        std::min<std::size_t>(2500, cfg.n_items / 2);
    for (User& u : users) {
      u.bias = rng.normal(0.0, kUserBiasSd);
      u.style = (rng.next() & 1) ? kStyleMag : -kStyleMag;
      const double raw = 20.0 + std::exp(rng.normal(5.8, 0.5));
      u.activity = static_cast<std::size_t>(
          std::clamp(raw, 20.0, static_cast<double>(max_activity)));
      u.favorites[0] = draw_genre(rng);
      do u.favorites[1] = draw_genre(rng);
      while (u.favorites[1] == u.favorites[0]);
      do u.favorites[2] = draw_genre(rng);
      while (u.favorites[2] == u.favorites[0] ||
             u.favorites[2] == u.favorites[1]);
    }
  }

  // --- ratings ------------------------------------------------------------
  struct RawRating {
    std::size_t user, item;
    double value;
  };
  std::vector<RawRating> raw;
  {
    Xoshiro256ss rng = Xoshiro256ss::substream(cfg.seed, 3);
    std::vector<double> key(cfg.n_items);
    std::vector<std::uint32_t> order(cfg.n_items);
    for (std::size_t u = 0; u < cfg.n_users; ++u) {
      const User& usr = users[u];
      // Weighted sample without replacement (exponential-key trick): the
      // activity-many items with the smallest Exp(1)/weight keys.
      for (std::size_t a = 0; a < cfg.n_items; ++a) {
        double boost = 1.0;
        int rank = -1;
        for (std::size_t g : items[a].genre_idx)
          for (int f = 0; f < 3; ++f)
            if (g == usr.favorites[f] && (rank < 0 || f < rank)) rank = f;
        if (rank >= 0) boost = kFavoriteSelectBoost[rank];
        boost *= std::exp(kStyleSelect * usr.style * items[a].style);
        double v = rng.next_double();
        while (v <= 0.0) v = rng.next_double();
        key[a] = -std::log(v) / (items[a].select_weight * boost);
      }
      std::iota(order.begin(), order.end(), 0u);
      const std::size_t take = std::min(usr.activity, cfg.n_items);
      std::nth_element(order.begin(), order.begin() + take, order.end(),
                       [&](std::uint32_t x, std::uint32_t y) {
                         return key[x] < key[y];
                       });
      std::sort(order.begin(), order.begin() + take);  // file order: by item
      for (std::size_t k = 0; k < take; ++k) {
        const std::size_t a = order[k];
        int rank = -1;
        for (std::size_t g : items[a].genre_idx)
          for (int f = 0; f < 3; ++f)
            if (g == usr.favorites[f] && (rank < 0 || f < rank)) rank = f;
        const double affinity =
            rank >= 0 ? kAffinityBonus[rank] : kNonFavoritePenalty;
        double r = kBaseRating + usr.bias + kQualityGain * items[a].quality +
                   affinity + kStyleGain * usr.style * items[a].style +
                   rng.normal(0.0, kRatingNoiseSd);
        r = std::round(r * 2.0) / 2.0;  // half-star scale
        r = std::clamp(r, 0.5, 5.0);
        raw.push_back({u, a, r});
      }
    }
  }

  // --- assemble the dense dataset (only rated items join the universe) ----
  std::vector<std::uint32_t> item_map(cfg.n_items, UINT32_MAX);
  {
    std::vector<char> rated(cfg.n_items, 0);
    for (const RawRating& r : raw) rated[r.item] = 1;
    RatingsDataset& ds = out.ratings;
    for (std::size_t a = 0; a < cfg.n_items; ++a)
      if (rated[a]) {
        item_map[a] = static_cast<std::uint32_t>(ds.item_ids.size());
        ds.item_ids.push_back(items[a].movie_id);
      }
    ds.user_ids.resize(cfg.n_users);
    for (std::size_t u = 0; u < cfg.n_users; ++u)
      ds.user_ids[u] = static_cast<std::int64_t>(u + 1);
    ds.triples.reserve(raw.size());
    for (const RawRating& r : raw)
      ds.triples.push_back(Rating{static_cast<std::uint32_t>(r.user),
                                  item_map[r.item], r.value});
  }
  return out;
}

void write_synth(const SynthData& data, const std::string& ratings_path,
                 const std::string& movies_path) {
  write_ratings_csv(data.ratings, ratings_path);
  write_movies_csv(data.movies, movies_path);
}

}  // namespace cclab

#include "cclab/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>
#include <unordered_map>
#include <utility>

#include "cclab/errors.hpp"
#include "cclab/rng.hpp"

namespace cclab {
namespace {

// Splits one CSV record into fields.  Quoted fields may contain commas and
// doubled quotes ("" -> ").
std::vector<std::string> split_csv(const std::string& line,
                                   const std::string& file, std::size_t ln) {
  std::vector<std::string> fields;
  std::string cur;
  std::size_t i = 0;
  const std::size_t n = line.size();
  while (true) {
    cur.clear();
    if (i < n && line[i] == '"') {
      ++i;
      bool closed = false;
      while (i < n) {
        if (line[i] == '"') {
          if (i + 1 < n && line[i + 1] == '"') {
            cur.push_back('"');
            i += 2;
          } else {
            ++i;
            closed = true;
            break;
          }
        } else {
          cur.push_back(line[i]);
          ++i;
        }
      }
      if (!closed) throw ParseError(file, ln, "unterminated quoted field");
      if (i < n && line[i] != ',')
        throw ParseError(file, ln, "garbage after closing quote");
    } else {
      while (i < n && line[i] != ',') {
        cur.push_back(line[i]);
        ++i;
      }
    }
    fields.push_back(cur);
    if (i >= n) break;
    ++i;  // skip comma; a trailing comma yields a final empty field
    if (i == n) {
      fields.emplace_back();
      break;
    }
  }
  return fields;
}

std::int64_t parse_int(const std::string& s, const std::string& file,
                       std::size_t ln, const char* what) {
  std::int64_t v = 0;
  const char* b = s.data();
  const char* e = b + s.size();
  auto [p, ec] = std::from_chars(b, e, v);
  if (ec != std::errc{} || p != e)
    throw ParseError(file, ln, std::string("invalid ") + what + ": '" + s + "'");
  return v;
}

double parse_double(const std::string& s, const std::string& file,
                    std::size_t ln, const char* what) {
  double v = 0;
  const char* b = s.data();
  const char* e = b + s.size();
  auto [p, ec] = std::from_chars(b, e, v);
  if (ec != std::errc{} || p != e)
    throw ParseError(file, ln, std::string("invalid ") + what + ": '" + s + "'");
  return v;
}

// Reads all lines, stripping a trailing '\r' (CRLF input).
std::vector<std::string> read_lines(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open file: " + path);
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(line);
  }
  return lines;
}

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += "\"\"";
    else out.push_back(c);
  }
  out += "\"";
  return out;
}

}  // namespace

std::vector<std::uint32_t> RatingsDataset::user_counts() const {
  std::vector<std::uint32_t> counts(n_users(), 0);
  for (const Rating& r : triples) ++counts[r.user];
  return counts;
}

std::vector<std::uint32_t> RatingsDataset::item_counts() const {
  std::vector<std::uint32_t> counts(n_items(), 0);
  for (const Rating& r : triples) ++counts[r.item];
  return counts;
}

LoadedData load_movielens(const std::string& ratings_path,
                          const std::string& movies_path) {
  LoadedData out;

  // movies.csv ----------------------------------------------------------
  {
    std::vector<std::string> lines = read_lines(movies_path);
    if (lines.empty()) throw ParseError(movies_path, 1, "empty file");
    std::set<std::int64_t> seen_ids;
    for (std::size_t ln = 2; ln <= lines.size(); ++ln) {
      const std::string& line = lines[ln - 1];
      if (line.empty()) continue;
      std::vector<std::string> f = split_csv(line, movies_path, ln);
      if (f.size() != 3)
        throw ParseError(movies_path, ln,
                         "expected 3 fields (movieId,title,genres), got " +
                             std::to_string(f.size()));
      MovieRecord rec;
      rec.movie_id = parse_int(f[0], movies_path, ln, "movieId");
      rec.title = f[1];
      std::size_t start = 0;
      const std::string& g = f[2];
      while (true) {
        std::size_t bar = g.find('|', start);
        std::string tok = g.substr(start, bar == std::string::npos
                                              ? std::string::npos
                                              : bar - start);
        if (tok.empty()) throw ParseError(movies_path, ln, "empty genre token");
        rec.genres.push_back(std::move(tok));
        if (bar == std::string::npos) break;
        start = bar + 1;
      }
      if (!seen_ids.insert(rec.movie_id).second)
        throw std::invalid_argument("duplicate movieId " +
                                    std::to_string(rec.movie_id) + " in " +
                                    movies_path);
      out.movies.push_back(std::move(rec));
    }
  }

  // ratings.csv ---------------------------------------------------------
  struct RawRating {
    std::int64_t user, item;
    double value;
  };
  std::vector<RawRating> raw;
  {
    std::vector<std::string> lines = read_lines(ratings_path);
    if (lines.empty()) throw ParseError(ratings_path, 1, "empty file");
    for (std::size_t ln = 2; ln <= lines.size(); ++ln) {
      const std::string& line = lines[ln - 1];
      if (line.empty()) continue;
      std::vector<std::string> f = split_csv(line, ratings_path, ln);
      if (f.size() != 4)
        throw ParseError(
            ratings_path, ln,
            "expected 4 fields (userId,movieId,rating,timestamp), got " +
                std::to_string(f.size()));
      RawRating r;
      r.user = parse_int(f[0], ratings_path, ln, "userId");
      r.item = parse_int(f[1], ratings_path, ln, "movieId");
      r.value = parse_double(f[2], ratings_path, ln, "rating");
      parse_int(f[3], ratings_path, ln, "timestamp");  // validated, unused
      if (!(r.value >= 0.5 && r.value <= 5.0))
        throw std::invalid_argument("rating out of range [0.5, 5] at " +
                                    ratings_path + ":" + std::to_string(ln));
      raw.push_back(r);
    }
  }

  // Dense index spaces, ascending by original id.
  std::set<std::int64_t> user_set, item_set;
  for (const RawRating& r : raw) {
    user_set.insert(r.user);
    item_set.insert(r.item);
  }
  RatingsDataset& ds = out.ratings;
  ds.user_ids.assign(user_set.begin(), user_set.end());
  ds.item_ids.assign(item_set.begin(), item_set.end());
  std::unordered_map<std::int64_t, std::uint32_t> user_idx, item_idx;
  for (std::uint32_t i = 0; i < ds.user_ids.size(); ++i)
    user_idx[ds.user_ids[i]] = i;
  for (std::uint32_t i = 0; i < ds.item_ids.size(); ++i)
    item_idx[ds.item_ids[i]] = i;

  std::set<std::pair<std::uint32_t, std::uint32_t>> seen_pairs;
  ds.triples.reserve(raw.size());
  for (const RawRating& r : raw) {
    Rating t{user_idx.at(r.user), item_idx.at(r.item), r.value};
    if (!seen_pairs.insert({t.user, t.item}).second)
      throw std::invalid_argument(
          "duplicate rating for userId " + std::to_string(r.user) +
          ", movieId " + std::to_string(r.item));
    ds.triples.push_back(t);
  }

  // Every rated item needs metadata.
  std::set<std::int64_t> movie_ids;
  for (const MovieRecord& m : out.movies) movie_ids.insert(m.movie_id);
  for (std::int64_t id : ds.item_ids)
    if (!movie_ids.count(id))
      throw std::invalid_argument("rated movieId " + std::to_string(id) +
                                  " missing from " + movies_path);
  return out;
}

void write_ratings_csv(const RatingsDataset& data, const std::string& path) {
  std::ofstream outf(path, std::ios::binary);
  if (!outf) throw IoError("cannot open file for writing: " + path);
  outf << "userId,movieId,rating,timestamp\n";
  char buf[64];
  for (const Rating& r : data.triples) {
    std::snprintf(buf, sizeof buf, "%.17g", r.value);
    outf << data.user_ids[r.user] << ',' << data.item_ids[r.item] << ',' << buf
         << ",0\n";
  }
  if (!outf) throw IoError("write failed: " + path);
}

void write_movies_csv(const std::vector<MovieRecord>& movies,
                      const std::string& path) {
  std::ofstream outf(path, std::ios::binary);
  if (!outf) throw IoError("cannot open file for writing: " + path);
  outf << "movieId,title,genres\n";
  for (const MovieRecord& m : movies) {
    std::string genres;
    for (std::size_t i = 0; i < m.genres.size(); ++i) {
      if (i) genres += '|';
      genres += m.genres[i];
    }
    outf << m.movie_id << ',' << csv_quote(m.title) << ',' << csv_quote(genres)
         << '\n';
  }
  if (!outf) throw IoError("write failed: " + path);
}

SplitAssignment split_half(const RatingsDataset& data, std::uint64_t seed) {
  const std::size_t n = data.triples.size();
  if (n < 2)
    throw std::invalid_argument("split_half needs at least 2 ratings");
  std::vector<std::uint32_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0u);
  Xoshiro256ss rng(seed);
  for (std::size_t i = n - 1; i > 0; --i) {
    std::uint64_t j = rng.next_below(i + 1);
    std::swap(perm[i], perm[j]);
  }
  SplitAssignment split;
  split.seed = seed;
  const std::size_t half = n / 2;
  split.train_idx.assign(perm.begin(), perm.begin() + half);
  split.test_idx.assign(perm.begin() + half, perm.end());
  std::sort(split.train_idx.begin(), split.train_idx.end());
  std::sort(split.test_idx.begin(), split.test_idx.end());
  return split;
}

RatingsDataset subset(const RatingsDataset& data,
                      std::span<const std::uint32_t> idx) {
  RatingsDataset out;
  out.user_ids = data.user_ids;
  out.item_ids = data.item_ids;
  out.triples.reserve(idx.size());
  for (std::uint32_t i : idx) {
    if (i >= data.triples.size())
      throw std::out_of_range("subset index out of range");
    out.triples.push_back(data.triples[i]);
  }
  return out;
}

GenreAssignment assign_primary_genre(const std::vector<MovieRecord>& movies,
                                     const RatingsDataset& data) {
  // Topic universe: every genre token, sorted lexicographically.
  std::set<std::string> names;
  for (const MovieRecord& m : movies)
    for (const std::string& g : m.genres) names.insert(g);
  GenreAssignment out;
  out.topic_names.assign(names.begin(), names.end());
  std::map<std::string, std::int32_t> topic_idx;
  for (std::int32_t i = 0; i < static_cast<std::int32_t>(out.topic_names.size());
       ++i)
    topic_idx[out.topic_names[i]] = i;

  std::unordered_map<std::int64_t, const MovieRecord*> by_id;
  for (const MovieRecord& m : movies) by_id[m.movie_id] = &m;

  // Genre popularity: total ratings received by movies listing the genre.
  std::vector<std::uint32_t> item_count = data.item_counts();
  std::vector<std::uint64_t> genre_pop(out.topic_names.size(), 0);
  for (std::size_t a = 0; a < data.n_items(); ++a) {
    auto it = by_id.find(data.item_ids[a]);
    if (it == by_id.end())
      throw std::invalid_argument("rated movieId " +
                                  std::to_string(data.item_ids[a]) +
                                  " has no metadata");
    for (const std::string& g : it->second->genres)
      genre_pop[topic_idx.at(g)] += item_count[a];
  }

  out.topic_of_item.resize(data.n_items());
  for (std::size_t a = 0; a < data.n_items(); ++a) {
    const MovieRecord& m = *by_id.at(data.item_ids[a]);
    std::int32_t best = topic_idx.at(m.genres.front());
    for (const std::string& g : m.genres) {
      std::int32_t t = topic_idx.at(g);
      // Higher popularity wins; ties go to the lexicographically smallest
      // name, which is exactly the smallest topic id.
      if (genre_pop[t] > genre_pop[best] ||
          (genre_pop[t] == genre_pop[best] && t < best))
        best = t;
    }
    out.topic_of_item[a] = best;
  }
  return out;
}

const std::array<const char*, 5>& UserGroups::labels() {
  static const std::array<const char*, 5> kLabels = {
      "very low", "low", "medium", "high", "very high"};
  return kLabels;
}

UserGroups quintile_groups(const RatingsDataset& data) {
  const std::size_t n = data.n_users();
  if (n < 5)
    throw std::invalid_argument("quintile_groups needs at least 5 users");
  std::vector<std::uint32_t> counts = data.user_counts();
  std::vector<std::uint32_t> order(n);
  std::iota(order.begin(), order.end(), 0u);
  std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
    if (counts[a] != counts[b]) return counts[a] < counts[b];
    return a < b;  // dense index order == ascending original user id
  });
  UserGroups groups;
  groups.group_of_user.resize(n);
  for (std::size_t g = 0; g < 5; ++g) {
    std::size_t lo = g * n / 5;
    std::size_t hi = (g + 1) * n / 5;
    for (std::size_t k = lo; k < hi; ++k)
      groups.group_of_user[order[k]] = static_cast<std::uint8_t>(g);
  }
  return groups;
}

}  // namespace cclab

#include "cclab/experiments.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <numeric>
#include <span>
#include <stdexcept>
#include <utility>

#include "cclab/dataset.hpp"
#include "cclab/errors.hpp"
#include "cclab/rng.hpp"
#include "cclab/simulate.hpp"

namespace cclab {
namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

// Role-specific seeds derived from the master seed (same scheme as RNG
// substreams): 1 = train-half model, 2 = test-half model, 3 = random policy,
// 11/12 = synthetic-fit simulations.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t role) {
  std::uint64_t s = seed + kGolden * (role + 1);
  return splitmix64(s);
}

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

// Everything each data-backed experiment shares: the loaded catalog, genre
// topics, user groups, the half/half split, both factor models, and both
// attraction tables.
struct Pipeline {
  LoadedData data;
  GenreAssignment genres;
  UserGroups groups;
  RatingsDataset train, test;
  FactorModel mf_train, mf_test;
  AttractionTable attr_train, attr_test;
  std::uint64_t random_policy_seed = 0;
};

Pipeline build_pipeline(const ExperimentConfig& cfg) {
  if (cfg.ratings_path.empty() || cfg.movies_path.empty())
    throw std::invalid_argument(
        "config must set 'ratings' and 'movies' for this experiment");
  Pipeline pipe;
  pipe.data = load_movielens(cfg.ratings_path, cfg.movies_path);
  pipe.genres = assign_primary_genre(pipe.data.movies, pipe.data.ratings);
  pipe.groups = quintile_groups(pipe.data.ratings);
  SplitAssignment split = split_half(pipe.data.ratings, cfg.seed);
  pipe.train = subset(pipe.data.ratings, split.train_idx);
  pipe.test = subset(pipe.data.ratings, split.test_idx);
  MfHyperParams hp = cfg.hyper;
  hp.seed = derive_seed(cfg.seed, 1);
  pipe.mf_train = train_mf(pipe.train, hp);
  hp.seed = derive_seed(cfg.seed, 2);
  pipe.mf_test = train_mf(pipe.test, hp);
  pipe.attr_train = softmax_attractions(pipe.mf_train);
  pipe.attr_test = softmax_attractions(pipe.mf_test);
  pipe.random_policy_seed = derive_seed(cfg.seed, 3);
  return pipe;
}

std::vector<ScoredItem> scored_items(std::span<const std::uint32_t> pool,
                                     const GenreAssignment& genres,
                                     std::span<const double> attr) {
  std::vector<ScoredItem> out;
  out.reserve(pool.size());
  for (std::uint32_t idx : pool)
    out.push_back(ScoredItem{static_cast<std::int64_t>(idx),
                             genres.topic_of_item[idx], attr[idx]});
  return out;
}

// The same placement with attractions re-read from `attr` (for scoring a
// train-built layout with test attractions).
AttractionMatrix with_attractions(const AttractionMatrix& layout,
                                  std::span<const double> attr) {
  AttractionMatrix out;
  out.item_ids = layout.item_ids;
  out.rows.resize(layout.item_ids.size());
  for (std::size_t i = 0; i < layout.item_ids.size(); ++i) {
    out.rows[i].reserve(layout.item_ids[i].size());
    for (std::int64_t id : layout.item_ids[i])
      out.rows[i].push_back(attr[static_cast<std::size_t>(id)]);
  }
  return out;
}

// Per-position click probabilities of a plain sequential list.
std::vector<double> tcm_click_vector(std::span<const double> p,
                                     const TerminationProfile& term) {
  std::vector<double> out(p.size());
  double surv = 1.0;
  for (std::size_t k = 0; k < p.size(); ++k) {
    out[k] = surv * p[k];
    surv *= (1.0 - term.at(k)) * (1.0 - p[k]);
  }
  return out;
}

// Mean accumulator over the 5 quintile groups plus "overall".
struct GroupMeans {
  std::array<double, 6> sum{};   // 0..4 = quintiles, 5 = overall
  std::array<double, 6> count{};

  void add(std::uint8_t group, double v) {
    sum[group] += v;
    count[group] += 1.0;
    sum[5] += v;
    count[5] += 1.0;
  }
  double mean(std::size_t g) const { return sum[g] / count[g]; }
};

double pct_drop(double base, double variant) {
  return (base - variant) / base * 100.0;
}

Json fit_to_json(const FitResult& fit) {
  Json j = Json::object();
  j.set("model", fit.model == ClickModel::TCM ? "tcm" : "ccm");
  j.set("p0", fit.params.p0);
  j.set("gamma", fit.params.gamma);
  j.set("pq", fit.params.pq);
  j.set("delta", fit.delta);
  j.set("resolution", fit.resolution);
  return j;
}

Json triple_to_json(const ParamTriple& t) {
  Json j = Json::object();
  j.set("p0", t.p0);
  j.set("gamma", t.gamma);
  j.set("pq", t.pq);
  return j;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open file for writing: " + path);
  out << content;
  if (!out) throw IoError("write failed: " + path);
}

}  // namespace

ExperimentConfig ExperimentConfig::from_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open config file: " + path);
  ExperimentConfig cfg;
  std::string line;
  std::size_t ln = 0;
  auto parse_u64 = [&](const std::string& v, const char* key) {
    std::uint64_t x = 0;
    auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
    if (ec != std::errc{} || p != v.data() + v.size())
      throw ParseError(path, ln,
                       std::string("invalid integer for ") + key + ": " + v);
    return x;
  };
  auto parse_f64 = [&](const std::string& v, const char* key) {
    double x = 0;
    auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
    if (ec != std::errc{} || p != v.data() + v.size())
      throw ParseError(path, ln,
                       std::string("invalid number for ") + key + ": " + v);
    return x;
  };
  while (std::getline(in, line)) {
    ++ln;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::string s = trim(line);
    if (s.empty() || s[0] == '#') continue;
    std::size_t eq = s.find('=');
    if (eq == std::string::npos)
      throw ParseError(path, ln, "expected key = value");
    std::string key = trim(s.substr(0, eq));
    std::string val = trim(s.substr(eq + 1));
    if (key.empty()) throw ParseError(path, ln, "empty key");
    if (key == "ratings") cfg.ratings_path = val;
    else if (key == "movies") cfg.movies_path = val;
    else if (key == "seed") cfg.seed = parse_u64(val, "seed");
    else if (key == "mf_d") cfg.hyper.d = parse_u64(val, "mf_d");
    else if (key == "mf_epochs") cfg.hyper.epochs = parse_u64(val, "mf_epochs");
    else if (key == "mf_lr") cfg.hyper.learning_rate = parse_f64(val, "mf_lr");
    else if (key == "mf_reg")
      cfg.hyper.regularization = parse_f64(val, "mf_reg");
    else if (key == "mf_init") cfg.hyper.init_scale = parse_f64(val, "mf_init");
    else if (key == "pq") cfg.pq = parse_f64(val, "pq");
    else if (key == "col_threshold")
      cfg.col_threshold = parse_u64(val, "col_threshold");
    else if (key == "pq_near") cfg.pq_near = parse_f64(val, "pq_near");
    else if (key == "pq_far") cfg.pq_far = parse_f64(val, "pq_far");
    else if (key == "sessions") cfg.sessions = parse_u64(val, "sessions");
    else if (key == "resolution") cfg.resolution = parse_f64(val, "resolution");
    else if (key == "pool") {
      if (val == "top100") cfg.pool = ItemPool::Top100;
      else if (val == "top1000") cfg.pool = ItemPool::Top1000;
      else if (val == "all") cfg.pool = ItemPool::All;
      else if (val == "each") cfg.pool = std::nullopt;
      else throw ParseError(path, ln, "invalid pool: " + val);
    } else {
      throw ParseError(path, ln, "unknown config key: " + key);
    }
  }
  cfg.validate();
  return cfg;
}

void ExperimentConfig::validate() const {
  hyper.validate();
  auto prob = [](double v, const char* name) {
    if (!(v >= 0.0 && v <= 1.0))
      throw std::invalid_argument(std::string(name) + " must lie in [0, 1]");
  };
  prob(pq, "pq");
  prob(pq_near, "pq_near");
  prob(pq_far, "pq_far");
  if (col_threshold < 1)
    throw std::invalid_argument("col_threshold must be >= 1");
  if (sessions < 1) throw std::invalid_argument("sessions must be >= 1");
  if (!(resolution > 0.0 && resolution <= 1.0))
    throw std::invalid_argument("resolution must lie in (0, 1]");
}

GeneralizationReport exp_generalization(const ExperimentConfig& cfg) {
  Pipeline pipe = build_pipeline(cfg);
  const TerminationProfile term = TerminationProfile::uniform(cfg.pq);
  std::vector<std::uint32_t> pool = select_item_pool(pipe.train, ItemPool::All);

  GroupMeans train_means, test_means;
  for (std::size_t u = 0; u < pipe.data.ratings.n_users(); ++u) {
    const std::uint8_t g = pipe.groups.group_of_user[u];
    std::vector<ScoredItem> items_train =
        scored_items(pool, pipe.genres, pipe.attr_train.row(u));
    AttractionMatrix layout_train = ccm_optimal_matrix(items_train, {});
    train_means.add(
        g, ccm_list_prob(with_attractions(layout_train, pipe.attr_test.row(u)),
                         term));
    std::vector<ScoredItem> items_test =
        scored_items(pool, pipe.genres, pipe.attr_test.row(u));
    AttractionMatrix layout_test = ccm_optimal_matrix(items_test, {});
    test_means.add(g, ccm_list_prob(layout_test, term));
  }

  GeneralizationReport report;
  auto fill = [&](GroupGap& gap, std::size_t g, std::string label) {
    gap.label = std::move(label);
    gap.train_layout = train_means.mean(g);
    gap.test_layout = test_means.mean(g);
    gap.gap_pct = pct_drop(gap.test_layout, gap.train_layout);
  };
  fill(report.overall, 5, "overall");
  report.groups.resize(5);
  for (std::size_t g = 0; g < 5; ++g)
    fill(report.groups[g], g, UserGroups::labels()[g]);
  return report;
}

PersonalizationReport exp_personalization(const ExperimentConfig& cfg) {
  Pipeline pipe = build_pipeline(cfg);
  const TerminationProfile term = TerminationProfile::uniform(cfg.pq);
  std::vector<std::uint32_t> pool = select_item_pool(pipe.train, ItemPool::All);

  // Non-personalized policies share one layout across users.
  std::vector<double> popular_attr = softmax(popular_ratings(pipe.mf_train));
  AttractionMatrix popular_layout = ccm_optimal_matrix(
      scored_items(pool, pipe.genres, popular_attr), {});
  std::vector<double> random_attr = softmax(random_ratings(
      pipe.data.ratings.n_items(), pipe.random_policy_seed));
  AttractionMatrix random_layout =
      ccm_optimal_matrix(scored_items(pool, pipe.genres, random_attr), {});

  GroupMeans pers, pop, rnd;
  for (std::size_t u = 0; u < pipe.data.ratings.n_users(); ++u) {
    const std::uint8_t g = pipe.groups.group_of_user[u];
    std::span<const double> test_row = pipe.attr_test.row(u);
    AttractionMatrix layout = ccm_optimal_matrix(
        scored_items(pool, pipe.genres, pipe.attr_train.row(u)), {});
    pers.add(g, ccm_list_prob(with_attractions(layout, test_row), term));
    pop.add(g, ccm_list_prob(with_attractions(popular_layout, test_row), term));
    rnd.add(g, ccm_list_prob(with_attractions(random_layout, test_row), term));
  }

  PersonalizationReport report;
  auto fill = [&](PolicyValues& v, std::size_t g, std::string label) {
    v.label = std::move(label);
    v.personalized = pers.mean(g);
    v.popular = pop.mean(g);
    v.random = rnd.mean(g);
    v.popular_drop_pct = pct_drop(v.personalized, v.popular);
    v.random_drop_pct = pct_drop(v.personalized, v.random);
  };
  fill(report.overall, 5, "overall");
  report.groups.resize(5);
  for (std::size_t g = 0; g < 5; ++g)
    fill(report.groups[g], g, UserGroups::labels()[g]);
  return report;
}

ComparisonReport exp_model_comparison(const ExperimentConfig& cfg,
                                      bool percolumn) {
  Pipeline pipe = build_pipeline(cfg);
  // Carousels may pay a column-dependent paging cost; flat lists have no
  // columns to page through and always run at the uniform level.
  const TerminationProfile grid_term =
      percolumn ? TerminationProfile::per_column(cfg.col_threshold,
                                                 cfg.pq_near, cfg.pq_far)
                : TerminationProfile::uniform(cfg.pq);
  const TerminationProfile list_term = TerminationProfile::uniform(cfg.pq);

  std::vector<ItemPool> pools;
  if (cfg.pool) pools.push_back(*cfg.pool);
  else pools = {ItemPool::Top100, ItemPool::Top1000, ItemPool::All};

  ComparisonReport report;
  report.profile = percolumn ? "percolumn" : "uniform";
  const std::size_t n_users = pipe.data.ratings.n_users();
  for (ItemPool pool : pools) {
    std::vector<std::uint32_t> pool_idx = select_item_pool(pipe.train, pool);
    double sum_ccm = 0.0, sum_nl = 0.0, sum_tcm = 0.0;
    for (std::size_t u = 0; u < n_users; ++u) {
      std::span<const double> test_row = pipe.attr_test.row(u);
      std::vector<ScoredItem> items =
          scored_items(pool_idx, pipe.genres, pipe.attr_train.row(u));
      AttractionMatrix grid = ccm_optimal_matrix(items, {});
      AttractionMatrix grid_test = with_attractions(grid, test_row);
      sum_ccm += ccm_list_prob(grid_test, grid_term);
      AttractionMatrix flat_test = flatten_row_major(grid_test);
      sum_nl += tcm_list_prob(flat_test.rows[0], list_term);
      AttractionMatrix list = tcm_optimal_list(items, pool_idx.size());
      AttractionMatrix list_test = with_attractions(list, test_row);
      sum_tcm += tcm_list_prob(list_test.rows[0], list_term);
    }
    PoolModelValues v;
    v.pool = item_pool_name(pool);
    v.ccm = sum_ccm / static_cast<double>(n_users);
    v.ccm_nl = sum_nl / static_cast<double>(n_users);
    v.tcm = sum_tcm / static_cast<double>(n_users);
    v.tcm_drop_pct = pct_drop(v.ccm, v.tcm);
    v.ccm_nl_drop_pct = pct_drop(v.ccm, v.ccm_nl);
    report.pools.push_back(std::move(v));
  }
  return report;
}

std::vector<Heatmap> exp_heatmaps(const ExperimentConfig& cfg) {
  Pipeline pipe = build_pipeline(cfg);
  const TerminationProfile term = TerminationProfile::uniform(cfg.pq);
  std::vector<std::uint32_t> pool = select_item_pool(pipe.train, ItemPool::All);
  const std::size_t n_users = pipe.data.ratings.n_users();

  constexpr std::size_t kDim = 10;
  std::array<std::array<double, kDim>, kDim> acc_ccm{}, acc_nl{}, acc_tcm{};
  for (std::size_t u = 0; u < n_users; ++u) {
    std::span<const double> test_row = pipe.attr_test.row(u);
    std::vector<ScoredItem> items =
        scored_items(pool, pipe.genres, pipe.attr_train.row(u));
    AttractionMatrix grid = ccm_optimal_matrix(items, {});
    AttractionMatrix grid_test = with_attractions(grid, test_row);
    ClickProbMatrix probs = ccm_click_matrix(grid_test, term);
    for (std::size_t i = 0; i < kDim && i < probs.values.size(); ++i)
      for (std::size_t j = 0; j < kDim && j < probs.values[i].size(); ++j)
        acc_ccm[i][j] += probs.values[i][j];

    AttractionMatrix flat_test = flatten_row_major(grid_test);
    std::vector<double> nl = tcm_click_vector(flat_test.rows[0], term);
    for (std::size_t k = 0; k < kDim * kDim && k < nl.size(); ++k)
      acc_nl[k / kDim][k % kDim] += nl[k];

    AttractionMatrix list = tcm_optimal_list(items, pool.size());
    AttractionMatrix list_test = with_attractions(list, test_row);
    std::vector<double> tc = tcm_click_vector(list_test.rows[0], term);
    for (std::size_t k = 0; k < kDim * kDim && k < tc.size(); ++k)
      acc_tcm[k / kDim][k % kDim] += tc[k];
  }

  auto finish = [&](const std::array<std::array<double, kDim>, kDim>& acc,
                    std::string label) {
    Heatmap hm;
    hm.model = std::move(label);
    hm.grid.assign(kDim, std::vector<double>(kDim));
    for (std::size_t i = 0; i < kDim; ++i)
      for (std::size_t j = 0; j < kDim; ++j) {
        const double mean = acc[i][j] / static_cast<double>(n_users);
        hm.grid[i][j] = mean > 0.0
                            ? std::log(mean)
                            : std::numeric_limits<double>::quiet_NaN();
      }
    return hm;
  };
  std::vector<Heatmap> out;
  out.push_back(finish(acc_ccm, "ccm"));
  out.push_back(finish(acc_nl, "ccm_nl"));
  out.push_back(finish(acc_tcm, "tcm"));
  return out;
}

void write_heatmap_csv(const Heatmap& hm, const std::string& path) {
  std::string content;
  char buf[64];
  for (const auto& row : hm.grid) {
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (j) content.push_back(',');
      if (row[j] != row[j]) {
        content += "NA";
      } else {
        std::snprintf(buf, sizeof buf, "%.17g", row[j]);
        content += buf;
      }
    }
    content.push_back('\n');
  }
  write_text_file(path, content);
}

FitSyntheticReport exp_fit_synthetic(const ExperimentConfig& cfg) {
  constexpr std::size_t kRows = 5, kCols = 4;
  const ParamTriple list_truth{0.17, 0.92, 0.02};
  const ParamTriple grid_truth{0.11, 0.84, 0.01};

  // Reshape a 1 x (kRows*kCols) frequency row into kRows x kCols.
  auto reshape = [&](const ClickProbMatrix& flat) {
    ClickProbMatrix out;
    out.values.assign(kRows, std::vector<double>(kCols));
    for (std::size_t c = 0; c < kRows * kCols; ++c)
      out.values[c / kCols][c % kCols] = flat.values[0][c];
    return out;
  };

  // Attractions matching the parametric surfaces: position t of the list
  // has attraction p0 * gamma^t; grid cell (i, j) has p0 * gamma^(i+j).
  AttractionMatrix list_attr;
  list_attr.rows.resize(1);
  {
    double a = list_truth.p0;
    for (std::size_t t = 0; t < kRows * kCols; ++t) {
      list_attr.rows[0].push_back(a);
      a *= list_truth.gamma;
    }
  }
  AttractionMatrix grid_attr;
  {
    double row_start = grid_truth.p0;
    for (std::size_t i = 0; i < kRows; ++i) {
      std::vector<double> row;
      double a = row_start;
      for (std::size_t j = 0; j < kCols; ++j) {
        row.push_back(a);
        a *= grid_truth.gamma;
      }
      grid_attr.rows.push_back(std::move(row));
      row_start *= grid_truth.gamma;
    }
  }

  struct TargetSpec {
    std::string name;
    std::string generator;
    ParamTriple truth;
    ClickProbMatrix target;
  };
  std::vector<TargetSpec> targets;
  targets.push_back({"list_exact", "tcm", list_truth,
                     mu_tcm(kRows, kCols, list_truth)});
  {
    EmpiricalClicks clicks = empirical_click_matrix(
        list_attr, TerminationProfile::uniform(list_truth.pq), ClickModel::TCM,
        cfg.sessions, derive_seed(cfg.seed, 11));
    targets.push_back({"list_simulated", "tcm", list_truth,
                       reshape(empirical_frequencies(clicks))});
  }
  targets.push_back({"carousel_exact", "ccm", grid_truth,
                     mu_ccm(kRows, kCols, grid_truth)});
  {
    EmpiricalClicks clicks = empirical_click_matrix(
        grid_attr, TerminationProfile::uniform(grid_truth.pq), ClickModel::CCM,
        cfg.sessions, derive_seed(cfg.seed, 12));
    targets.push_back({"carousel_simulated", "ccm", grid_truth,
                       empirical_frequencies(clicks)});
  }

  FitSyntheticReport report;
  for (TargetSpec& spec : targets) {
    SyntheticFitCase c;
    c.target = spec.name;
    c.generator = spec.generator;
    c.truth = spec.truth;
    c.tcm_fit = grid_fit(spec.target, ClickModel::TCM, cfg.resolution);
    c.ccm_fit = grid_fit(spec.target, ClickModel::CCM, cfg.resolution);
    const double correct =
        spec.generator == "tcm" ? c.tcm_fit.delta : c.ccm_fit.delta;
    const double cross =
        spec.generator == "tcm" ? c.ccm_fit.delta : c.tcm_fit.delta;
    c.correct_model_no_worse = correct <= cross;
    report.cases.push_back(std::move(c));
  }
  return report;
}

Json to_json(const ExperimentConfig& cfg) {
  Json mf = Json::object();
  mf.set("d", cfg.hyper.d);
  mf.set("epochs", cfg.hyper.epochs);
  mf.set("learning_rate", cfg.hyper.learning_rate);
  mf.set("regularization", cfg.hyper.regularization);
  mf.set("init_scale", cfg.hyper.init_scale);
  Json j = Json::object();
  j.set("ratings", cfg.ratings_path);
  j.set("movies", cfg.movies_path);
  j.set("seed", cfg.seed);
  j.set("mf", std::move(mf));
  j.set("pq", cfg.pq);
  j.set("col_threshold", cfg.col_threshold);
  j.set("pq_near", cfg.pq_near);
  j.set("pq_far", cfg.pq_far);
  j.set("sessions", cfg.sessions);
  j.set("resolution", cfg.resolution);
  return j;
}

namespace {

Json gap_to_json(const GroupGap& g) {
  Json j = Json::object();
  j.set("label", g.label);
  j.set("train_layout", g.train_layout);
  j.set("test_layout", g.test_layout);
  j.set("gap_pct", g.gap_pct);
  return j;
}

Json policy_to_json(const PolicyValues& v) {
  Json j = Json::object();
  j.set("label", v.label);
  j.set("personalized", v.personalized);
  j.set("popular", v.popular);
  j.set("random", v.random);
  j.set("popular_drop_pct", v.popular_drop_pct);
  j.set("random_drop_pct", v.random_drop_pct);
  return j;
}

}  // namespace

Json to_json(const GeneralizationReport& r, const ExperimentConfig& cfg) {
  Json j = Json::object();
  j.set("experiment", "generalization");
  j.set("config", to_json(cfg));
  j.set("overall", gap_to_json(r.overall));
  Json groups = Json::array();
  for (const GroupGap& g : r.groups) groups.push(gap_to_json(g));
  j.set("groups", std::move(groups));
  return j;
}

Json to_json(const PersonalizationReport& r, const ExperimentConfig& cfg) {
  Json j = Json::object();
  j.set("experiment", "personalization");
  j.set("config", to_json(cfg));
  j.set("overall", policy_to_json(r.overall));
  Json groups = Json::array();
  for (const PolicyValues& g : r.groups) groups.push(policy_to_json(g));
  j.set("groups", std::move(groups));
  return j;
}

Json to_json(const ComparisonReport& r, const ExperimentConfig& cfg) {
  Json j = Json::object();
  j.set("experiment", r.profile == "percolumn" ? "realistic" : "comparison");
  j.set("config", to_json(cfg));
  j.set("profile", r.profile);
  Json pools = Json::array();
  for (const PoolModelValues& v : r.pools) {
    Json p = Json::object();
    p.set("pool", v.pool);
    p.set("ccm", v.ccm);
    p.set("ccm_nl", v.ccm_nl);
    p.set("tcm", v.tcm);
    p.set("tcm_drop_pct", v.tcm_drop_pct);
    p.set("ccm_nl_drop_pct", v.ccm_nl_drop_pct);
    pools.push(std::move(p));
  }
  j.set("pools", std::move(pools));
  return j;
}

Json to_json(const FitSyntheticReport& r, const ExperimentConfig& cfg) {
  Json j = Json::object();
  j.set("experiment", "fit-synthetic");
  j.set("config", to_json(cfg));
  Json cases = Json::array();
  for (const SyntheticFitCase& c : r.cases) {
    Json e = Json::object();
    e.set("target", c.target);
    e.set("generator", c.generator);
    e.set("truth", triple_to_json(c.truth));
    e.set("tcm_fit", fit_to_json(c.tcm_fit));
    e.set("ccm_fit", fit_to_json(c.ccm_fit));
    e.set("correct_model_no_worse", c.correct_model_no_worse);
    cases.push(std::move(e));
  }
  j.set("cases", std::move(cases));
  return j;
}

std::vector<std::string> run_experiment(const std::string& name,
                                        const ExperimentConfig& cfg,
                                        const std::string& out_dir) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw IoError("cannot create output directory: " + out_dir);
  auto path_of = [&](const std::string& file) {
    return (std::filesystem::path(out_dir) / file).string();
  };
  std::vector<std::string> written;
  if (name == "generalization") {
    std::string p = path_of("generalization.json");
    write_text_file(p, to_json(exp_generalization(cfg), cfg).dump());
    written.push_back(p);
  } else if (name == "personalization") {
    std::string p = path_of("personalization.json");
    write_text_file(p, to_json(exp_personalization(cfg), cfg).dump());
    written.push_back(p);
  } else if (name == "comparison" || name == "realistic") {
    const bool percolumn = name == "realistic";
    std::string p = path_of(name + ".json");
    write_text_file(p, to_json(exp_model_comparison(cfg, percolumn), cfg).dump());
    written.push_back(p);
  } else if (name == "heatmaps") {
    std::vector<Heatmap> maps = exp_heatmaps(cfg);
    Json index = Json::object();
    index.set("experiment", "heatmaps");
    index.set("config", to_json(cfg));
    Json models = Json::array();
    Json files = Json::object();
    for (const Heatmap& hm : maps) {
      const std::string file = "heatmap_" + hm.model + ".csv";
      std::string p = path_of(file);
      write_heatmap_csv(hm, p);
      written.push_back(p);
      models.push(hm.model);
      files.set(hm.model, file);
    }
    index.set("models", std::move(models));
    index.set("files", std::move(files));
    std::string p = path_of("heatmaps.json");
    write_text_file(p, index.dump());
    written.push_back(p);
  } else if (name == "fit-synthetic") {
    std::string p = path_of("fit_synthetic.json");
    write_text_file(p, to_json(exp_fit_synthetic(cfg), cfg).dump());
    written.push_back(p);
  } else {
    throw std::invalid_argument("unknown experiment: " + name);
  }
  return written;
}

}  // namespace cclab

// cclab — browsing-model toolkit CLI.
//
// Subcommands: load, fit, simulate, layout, experiment, synth.
// Exit codes: 0 success, 1 validation/usage error, 2 I/O error.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <system_error>
#include <vector>

#include "CLI11.hpp"
#include "cclab/dataset.hpp"
#include "cclab/errors.hpp"
#include "cclab/experiments.hpp"
#include "cclab/fitting.hpp"
#include "cclab/json_writer.hpp"
#include "cclab/layout.hpp"
#include "cclab/models.hpp"
#include "cclab/recsys.hpp"
#include "cclab/simulate.hpp"
#include "cclab/synth.hpp"

namespace {

using namespace cclab;

// Ragged numeric CSV (no header): one row per line, comma-separated doubles.
std::vector<std::vector<double>> read_matrix_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open file: " + path);
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t ln = 0;
  while (std::getline(in, line)) {
    ++ln;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<double> row;
    std::size_t start = 0;
    while (true) {
      std::size_t comma = line.find(',', start);
      std::string tok = line.substr(
          start, comma == std::string::npos ? std::string::npos : comma - start);
      try {
        std::size_t used = 0;
        double v = std::stod(tok, &used);
        if (used != tok.size()) throw std::invalid_argument(tok);
        row.push_back(v);
      } catch (const std::exception&) {
        throw ParseError(path, ln, "invalid number: '" + tok + "'");
      }
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw ParseError(path, 1, "empty matrix file");
  return rows;
}

void write_matrix_csv(const std::vector<std::vector<double>>& rows,
                      const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open file for writing: " + path);
  char buf[64];
  for (const auto& row : rows) {
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (j) out << ',';
      std::snprintf(buf, sizeof buf, "%.17g", row[j]);
      out << buf;
    }
    out << '\n';
  }
  if (!out) throw IoError("write failed: " + path);
}

ClickModel parse_model(const std::string& name, bool allow_cm) {
  if (name == "tcm") return ClickModel::TCM;
  if (name == "ccm") return ClickModel::CCM;
  if (name == "cm" && allow_cm) return ClickModel::CM;
  throw std::invalid_argument("unknown model: " + name);
}

ItemPool parse_pool(const std::string& name) {
  if (name == "top100") return ItemPool::Top100;
  if (name == "top1000") return ItemPool::Top1000;
  if (name == "all") return ItemPool::All;
  throw std::invalid_argument("unknown pool: " + name);
}

int run(int argc, char** argv) {
  CLI::App app{"browsing-model toolkit: closed forms, simulation, layout "
               "optimization, fitting, and experiment pipelines"};
  app.require_subcommand(1);

  // ---- load -------------------------------------------------------------
  auto* load_cmd = app.add_subcommand("load", "validate a ratings/movies pair "
                                              "and print summary counts");
  std::string ratings_path, movies_path;
  load_cmd->add_option("--ratings", ratings_path, "ratings.csv path")
      ->required();
  load_cmd->add_option("--movies", movies_path, "movies.csv path")->required();

  // ---- fit --------------------------------------------------------------
  auto* fit_cmd = app.add_subcommand(
      "fit", "grid-search a parametric click surface against a click matrix");
  std::string fit_input, fit_model = "tcm", fit_out;
  double fit_resolution = 0.01;
  fit_cmd->add_option("--input", fit_input, "click-probability CSV (rectangular)")
      ->required();
  fit_cmd->add_option("--model", fit_model, "tcm | ccm");
  fit_cmd->add_option("--resolution", fit_resolution, "grid step (default 0.01)");
  fit_cmd->add_option("--out", fit_out, "output JSON path")->required();

  // ---- simulate ----------------------------------------------------------
  auto* sim_cmd = app.add_subcommand(
      "simulate", "Monte-Carlo sessions over an attraction layout");
  std::string sim_layout, sim_model = "ccm", sim_out, sim_profile = "uniform";
  double sim_pq = 0.01, sim_pq_far = 0.1;
  std::size_t sim_threshold = 10;
  std::uint64_t sim_sessions = 1000000, sim_seed = 1;
  sim_cmd->add_option("--layout", sim_layout, "attraction CSV (ragged rows)")
      ->required();
  sim_cmd->add_option("--model", sim_model, "cm | tcm | ccm");
  sim_cmd->add_option("--pq", sim_pq, "abandonment probability (uniform / near)");
  sim_cmd->add_option("--profile", sim_profile, "uniform | percolumn");
  sim_cmd->add_option("--pq-far", sim_pq_far, "percolumn: far-column level");
  sim_cmd->add_option("--col-threshold", sim_threshold,
                      "percolumn: first far column (1-based count of near columns)");
  sim_cmd->add_option("--sessions", sim_sessions, "session count");
  sim_cmd->add_option("--seed", sim_seed, "RNG seed");
  sim_cmd->add_option("--out", sim_out, "output frequency CSV")->required();

  // ---- layout -------------------------------------------------------------
  auto* layout_cmd = app.add_subcommand(
      "layout", "build an optimized layout from a trained rating model");
  std::string lay_ratings, lay_movies, lay_pool = "all",
              lay_policy = "personalized", lay_out, lay_ids_out;
  std::int64_t lay_user = -1;
  std::uint64_t lay_seed = 1;
  std::string lay_model = "ccm";
  layout_cmd->add_option("--ratings", lay_ratings, "ratings.csv path")
      ->required();
  layout_cmd->add_option("--movies", lay_movies, "movies.csv path")->required();
  layout_cmd->add_option("--pool", lay_pool, "top100 | top1000 | all");
  layout_cmd->add_option("--model", lay_model,
                         "ccm (carousel grid) | tcm (flat list)");
  layout_cmd->add_option("--policy", lay_policy,
                         "personalized | popular | random");
  layout_cmd->add_option("--user", lay_user,
                         "original user id (personalized policy)");
  layout_cmd->add_option("--seed", lay_seed, "MF / random-policy seed");
  layout_cmd->add_option("--out", lay_out, "attraction CSV output")->required();
  layout_cmd->add_option("--ids-out", lay_ids_out,
                         "optional CSV of placed original item ids");

  // ---- experiment ----------------------------------------------------------
  auto* exp_cmd = app.add_subcommand(
      "experiment", "run a full pipeline and write report files");
  std::string exp_name, exp_config, exp_out;
  exp_cmd
      ->add_option("name", exp_name,
                   "generalization | personalization | comparison | realistic "
                   "| heatmaps | fit-synthetic")
      ->required();
  exp_cmd->add_option("--config", exp_config, "key=value config file")
      ->required();
  exp_cmd->add_option("--out", exp_out, "output directory")->required();

  // ---- synth ----------------------------------------------------------------
  auto* synth_cmd = app.add_subcommand(
      "synth", "generate a seeded synthetic ratings/movies catalog");
  std::string synth_dir;
  SynthConfig synth_cfg;
  synth_cmd->add_option("--out-dir", synth_dir, "output directory")->required();
  synth_cmd->add_option("--users", synth_cfg.n_users, "user count (default 610)");
  synth_cmd->add_option("--items", synth_cfg.n_items,
                        "item count (default 9000)");
  synth_cmd->add_option("--seed", synth_cfg.seed, "generator seed (default 7)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);  // prints the help or the usage error
    return code == 0 ? 0 : 1;      // non-help parse failures are exit 1
  }

  if (*load_cmd) {
    LoadedData data = load_movielens(ratings_path, movies_path);
    GenreAssignment genres = assign_primary_genre(data.movies, data.ratings);
    std::cout << "users=" << data.ratings.n_users()
              << " items=" << data.ratings.n_items()
              << " ratings=" << data.ratings.triples.size()
              << " movies=" << data.movies.size()
              << " topics=" << genres.topic_names.size() << "\n";
    return 0;
  }

  if (*fit_cmd) {
    ClickProbMatrix target;
    target.values = read_matrix_csv(fit_input);
    FitResult fit =
        grid_fit(target, parse_model(fit_model, false), fit_resolution);
    Json j = Json::object();
    j.set("model", fit.model == ClickModel::TCM ? "tcm" : "ccm");
    j.set("p0", fit.params.p0);
    j.set("gamma", fit.params.gamma);
    j.set("pq", fit.params.pq);
    j.set("delta", fit.delta);
    j.set("resolution", fit.resolution);
    std::ofstream out(fit_out, std::ios::binary);
    if (!out) throw IoError("cannot open file for writing: " + fit_out);
    out << j.dump();
    std::cout << "fit " << fit_model << ": p0=" << fit.params.p0
              << " gamma=" << fit.params.gamma << " pq=" << fit.params.pq
              << " delta=" << fit.delta << "\n";
    return 0;
  }

  if (*sim_cmd) {
    AttractionMatrix layout;
    layout.rows = read_matrix_csv(sim_layout);
    TerminationProfile term =
        sim_profile == "percolumn"
            ? TerminationProfile::per_column(sim_threshold, sim_pq, sim_pq_far)
            : TerminationProfile::uniform(sim_pq);
    if (sim_profile != "percolumn" && sim_profile != "uniform")
      throw std::invalid_argument("unknown profile: " + sim_profile);
    EmpiricalClicks clicks =
        empirical_click_matrix(layout, term, parse_model(sim_model, true),
                               sim_sessions, sim_seed);
    write_matrix_csv(empirical_frequencies(clicks).values, sim_out);
    std::cout << "sessions=" << clicks.sessions
              << " clicks=" << clicks.total_clicks() << " wrote " << sim_out
              << "\n";
    return 0;
  }

  if (*layout_cmd) {
    LoadedData data = load_movielens(lay_ratings, lay_movies);
    GenreAssignment genres = assign_primary_genre(data.movies, data.ratings);
    MfHyperParams hp;
    hp.seed = lay_seed;
    FactorModel model = train_mf(data.ratings, hp);
    std::vector<double> attr;
    if (lay_policy == "personalized") {
      if (lay_user < 0)
        throw std::invalid_argument("--user is required for --policy personalized");
      const auto& ids = data.ratings.user_ids;
      auto it = std::lower_bound(ids.begin(), ids.end(), lay_user);
      if (it == ids.end() || *it != lay_user)
        throw std::invalid_argument("unknown user id: " +
                                    std::to_string(lay_user));
      const std::size_t u = static_cast<std::size_t>(it - ids.begin());
      std::vector<double> scores(data.ratings.n_items());
      for (std::size_t a = 0; a < scores.size(); ++a)
        scores[a] = model.predict(u, a);
      attr = softmax(scores);
    } else if (lay_policy == "popular") {
      attr = softmax(popular_ratings(model));
    } else if (lay_policy == "random") {
      attr = softmax(random_ratings(data.ratings.n_items(), lay_seed));
    } else {
      throw std::invalid_argument("unknown policy: " + lay_policy);
    }
    std::vector<std::uint32_t> pool =
        select_item_pool(data.ratings, parse_pool(lay_pool));
    std::vector<ScoredItem> items;
    items.reserve(pool.size());
    for (std::uint32_t idx : pool)
      items.push_back(ScoredItem{static_cast<std::int64_t>(idx),
                                 genres.topic_of_item[idx], attr[idx]});
    AttractionMatrix placed = lay_model == "tcm"
                                  ? tcm_optimal_list(items, items.size())
                                  : ccm_optimal_matrix(items, LayoutSpec{});
    if (lay_model != "tcm" && lay_model != "ccm")
      throw std::invalid_argument("layout --model must be tcm or ccm");
    write_matrix_csv(placed.rows, lay_out);
    if (!lay_ids_out.empty()) {
      std::ofstream out(lay_ids_out, std::ios::binary);
      if (!out) throw IoError("cannot open file for writing: " + lay_ids_out);
      for (const auto& row : placed.item_ids) {
        for (std::size_t j = 0; j < row.size(); ++j) {
          if (j) out << ',';
          // Dense index back to the original catalog id.
          out << data.ratings.item_ids[static_cast<std::size_t>(row[j])];
        }
        out << '\n';
      }
    }
    std::cout << "rows=" << placed.row_count()
              << " items=" << placed.total_items() << " wrote " << lay_out
              << "\n";
    return 0;
  }

  if (*exp_cmd) {
    ExperimentConfig cfg = ExperimentConfig::from_file(exp_config);
    auto t0 = std::chrono::steady_clock::now();
    std::vector<std::string> files = run_experiment(exp_name, cfg, exp_out);
    std::chrono::duration<double> dt = std::chrono::steady_clock::now() - t0;
    // Runtime goes to stdout only; report files stay byte-identical per config.
    std::cout << "experiment " << exp_name << " finished in " << dt.count()
              << " s\n";
    for (const std::string& f : files) std::cout << "wrote " << f << "\n";
    return 0;
  }

  if (*synth_cmd) {
    std::error_code ec;
    std::filesystem::create_directories(synth_dir, ec);
    if (ec) throw IoError("cannot create output directory: " + synth_dir);
    SynthData data = synth_catalog(synth_cfg);
    const std::string rpath =
        (std::filesystem::path(synth_dir) / "ratings.csv").string();
    const std::string mpath =
        (std::filesystem::path(synth_dir) / "movies.csv").string();
    write_synth(data, rpath, mpath);
    std::cout << "users=" << data.ratings.n_users()
              << " items=" << data.ratings.n_items()
              << " ratings=" << data.ratings.triples.size()
              << " movies=" << data.movies.size() << " wrote " << rpath
              << " and " << mpath << "\n";
    return 0;
  }

  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const cclab::IoError& e) {
    std::cerr << "I/O error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cclab/fitting.hpp"
#include "cclab/json_writer.hpp"
#include "cclab/layout.hpp"
#include "cclab/models.hpp"
#include "cclab/recsys.hpp"

namespace cclab {

// Flat key=value configuration shared by all experiments.  Recognized keys:
//   ratings, movies          data file paths
//   seed                     master seed (split + derived model seeds)
//   mf_d, mf_epochs, mf_lr, mf_reg, mf_init   factor-model hyperparameters
//   pq                       uniform abandonment level for evaluation
//   col_threshold, pq_near, pq_far            column-dependent profile
//   sessions, resolution     synthetic-fit experiment controls
//   pool                     top100 | top1000 | all | each (comparison only)
// Unknown keys are rejected with a ParseError naming the line.
struct ExperimentConfig {
  std::string ratings_path;
  std::string movies_path;
  std::uint64_t seed = 1;
  MfHyperParams hyper;  // hyper.seed is ignored; per-role seeds derive from `seed`
  double pq = 0.01;
  std::size_t col_threshold = 10;
  double pq_near = 0.01;
  double pq_far = 0.1;
  std::uint64_t sessions = 1000000;
  double resolution = 0.01;
  std::optional<ItemPool> pool;  // nullopt = every pool

  static ExperimentConfig from_file(const std::string& path);
  void validate() const;
};

// --- report structures ----------------------------------------------------

struct GroupGap {
  std::string label;
  double train_layout = 0.0;  // avg click prob, layout built from train attractions
  double test_layout = 0.0;   // avg click prob, layout built from test attractions
  double gap_pct = 0.0;       // (test - train) / test * 100
};

struct GeneralizationReport {
  GroupGap overall;
  std::vector<GroupGap> groups;  // quintiles, "very low" first
};

// Train-half layouts versus test-half layouts, both scored with test
// attractions under Uniform(pq).
GeneralizationReport exp_generalization(const ExperimentConfig& cfg);

struct PolicyValues {
  std::string label;
  double personalized = 0.0;
  double popular = 0.0;
  double random = 0.0;
  double popular_drop_pct = 0.0;  // (personalized - popular) / personalized * 100
  double random_drop_pct = 0.0;
};

struct PersonalizationReport {
  PolicyValues overall;
  std::vector<PolicyValues> groups;
};

// Personalized versus popularity and random layout policies, all scored with
// test attractions under Uniform(pq).
PersonalizationReport exp_personalization(const ExperimentConfig& cfg);

struct PoolModelValues {
  std::string pool;
  double ccm = 0.0;
  double ccm_nl = 0.0;  // the carousel layout flattened, scored as a list
  double tcm = 0.0;     // the optimal plain list over the pool
  double tcm_drop_pct = 0.0;     // (ccm - tcm) / ccm * 100
  double ccm_nl_drop_pct = 0.0;  // (ccm - ccm_nl) / ccm * 100
};

struct ComparisonReport {
  std::string profile;  // "uniform" or "percolumn"
  std::vector<PoolModelValues> pools;
};

// Carousel versus flat-list values per item pool.  With `percolumn`, the
// carousel is evaluated under the column-dependent profile
// PerColumn(col_threshold, pq_near, pq_far); flat lists, which have no
// column structure to page through, are always evaluated under
// Uniform(pq_near) == Uniform(pq).
ComparisonReport exp_model_comparison(const ExperimentConfig& cfg,
                                      bool percolumn);

struct Heatmap {
  std::string model;  // "ccm", "ccm_nl", "tcm"
  // 10x10 grid of log mean click probability (mean over users, absent cells
  // contributing 0); NaN marks cells absent for every user.
  std::vector<std::vector<double>> grid;
};

// First 10 rows x 10 columns of the per-user optimal layouts (trained
// attractions build the layout, test attractions score it).
std::vector<Heatmap> exp_heatmaps(const ExperimentConfig& cfg);

// 10 comma-separated values per line; NaN cells serialize as "NA".
void write_heatmap_csv(const Heatmap& hm, const std::string& path);

struct SyntheticFitCase {
  std::string target;     // e.g. "list_exact", "carousel_simulated"
  std::string generator;  // "tcm" or "ccm"
  ParamTriple truth;
  FitResult tcm_fit;
  FitResult ccm_fit;
  bool correct_model_no_worse = false;  // delta(correct) <= delta(other)
};

struct FitSyntheticReport {
  std::vector<SyntheticFitCase> cases;
};

// Fits both parametric surfaces to exact and simulated 5x4 targets produced
// from known on-grid parameter triples.
FitSyntheticReport exp_fit_synthetic(const ExperimentConfig& cfg);

// --- serialization ----------------------------------------------------------

Json to_json(const ExperimentConfig& cfg);
Json to_json(const GeneralizationReport& r, const ExperimentConfig& cfg);
Json to_json(const PersonalizationReport& r, const ExperimentConfig& cfg);
Json to_json(const ComparisonReport& r, const ExperimentConfig& cfg);
Json to_json(const FitSyntheticReport& r, const ExperimentConfig& cfg);

// Runs one experiment by name ("generalization", "personalization",
// "comparison", "realistic", "heatmaps", "fit-synthetic"), writes its report
// files into out_dir (created if needed), and returns the written paths.
// Reports contain no timing, so repeat runs with one config are
// byte-identical.  Throws std::invalid_argument for an unknown name.
std::vector<std::string> run_experiment(const std::string& name,
                                        const ExperimentConfig& cfg,
                                        const std::string& out_dir);

}  // namespace cclab

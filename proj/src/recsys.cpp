#include "cclab/recsys.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "cclab/errors.hpp"
#include "cclab/kernels.hpp"
#include "cclab/rng.hpp"

namespace cclab {
namespace {

constexpr const char* kCheckpointMagic = "cclab-mf-v1";

double parse_number(std::istringstream& in, const std::string& path,
                    const char* what) {
  std::string tok;
  if (!(in >> tok))
    throw ParseError(path, 0, std::string("missing value for ") + what);
  double v = 0;
  auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc{} || p != tok.data() + tok.size())
    throw ParseError(path, 0,
                     std::string("invalid number for ") + what + ": " + tok);
  return v;
}

}  // namespace

void MfHyperParams::validate() const {
  if (d == 0) throw std::invalid_argument("latent dimension must be >= 1");
  if (epochs == 0) throw std::invalid_argument("epochs must be >= 1");
  if (!(learning_rate > 0.0))
    throw std::invalid_argument("learning rate must be > 0");
  if (!(regularization >= 0.0))
    throw std::invalid_argument("regularization must be >= 0");
  if (!(init_scale >= 0.0))
    throw std::invalid_argument("init scale must be >= 0");
}

std::span<const double> FactorModel::user_row(std::size_t u) const {
  return {user_factors.data() + u * d, d};
}

std::span<const double> FactorModel::item_row(std::size_t a) const {
  return {item_factors.data() + a * d, d};
}

double FactorModel::predict(std::size_t u, std::size_t a) const {
  return global_mean + user_bias[u] + item_bias[a] +
         kernels::dot(user_row(u), item_row(a));
}

FactorModel train_mf(const RatingsDataset& data, const MfHyperParams& hp) {
  hp.validate();
  const std::size_t n = data.triples.size();
  if (n == 0) throw std::invalid_argument("train_mf needs at least 1 rating");

  FactorModel model;
  model.d = hp.d;
  model.seed = hp.seed;
  model.user_bias.assign(data.n_users(), 0.0);
  model.item_bias.assign(data.n_items(), 0.0);
  model.user_factors.resize(data.n_users() * hp.d);
  model.item_factors.resize(data.n_items() * hp.d);

  double sum = 0.0;
  for (const Rating& r : data.triples) sum += r.value;
  model.global_mean = sum / static_cast<double>(n);

  // Factor init: one dedicated substream, user rows then item rows.
  {
    Xoshiro256ss rng = Xoshiro256ss::substream(hp.seed, 0);
    for (double& v : model.user_factors) v = rng.normal(0.0, hp.init_scale);
    for (double& v : model.item_factors) v = rng.normal(0.0, hp.init_scale);
  }

  std::vector<std::uint32_t> order(n);
  std::iota(order.begin(), order.end(), 0u);
  const double lr = hp.learning_rate;
  const double reg = hp.regularization;
  for (std::size_t epoch = 0; epoch < hp.epochs; ++epoch) {
    Xoshiro256ss rng = Xoshiro256ss::substream(hp.seed, 1 + epoch);
    for (std::size_t i = n - 1; i > 0; --i) {
      std::uint64_t j = rng.next_below(i + 1);
      std::swap(order[i], order[j]);
    }
    double sse = 0.0;
    for (std::uint32_t idx : order) {
      const Rating& r = data.triples[idx];
      const double err = r.value - model.predict(r.user, r.item);
      sse += err * err;  // pre-update residual
      model.user_bias[r.user] += lr * (err - reg * model.user_bias[r.user]);
      model.item_bias[r.item] += lr * (err - reg * model.item_bias[r.item]);
      kernels::sgd_pair_update(
          {model.user_factors.data() + r.user * hp.d, hp.d},
          {model.item_factors.data() + r.item * hp.d, hp.d}, lr, err, reg);
    }
    model.epoch_rmse.push_back(std::sqrt(sse / static_cast<double>(n)));
  }

  // Users/items unseen in this dataset predict exactly the global mean.
  {
    std::vector<char> user_seen(data.n_users(), 0), item_seen(data.n_items(), 0);
    for (const Rating& r : data.triples) {
      user_seen[r.user] = 1;
      item_seen[r.item] = 1;
    }
    for (std::size_t u = 0; u < data.n_users(); ++u)
      if (!user_seen[u])
        std::fill_n(model.user_factors.begin() +
                        static_cast<std::ptrdiff_t>(u * hp.d),
                    hp.d, 0.0);
    for (std::size_t a = 0; a < data.n_items(); ++a)
      if (!item_seen[a])
        std::fill_n(model.item_factors.begin() +
                        static_cast<std::ptrdiff_t>(a * hp.d),
                    hp.d, 0.0);
  }

  double sse = 0.0;
  for (const Rating& r : data.triples) {
    const double err = r.value - model.predict(r.user, r.item);
    sse += err * err;
  }
  model.train_rmse = std::sqrt(sse / static_cast<double>(n));
  return model;
}

void save_factor_model(const FactorModel& model, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open file for writing: " + path);
  char buf[64];
  auto num = [&](double v) {
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return std::string(buf);
  };
  out << kCheckpointMagic << '\n';
  out << "d " << model.d << '\n';
  out << "seed " << model.seed << '\n';
  out << "n_users " << model.n_users() << '\n';
  out << "n_items " << model.n_items() << '\n';
  out << "global_mean " << num(model.global_mean) << '\n';
  out << "train_rmse " << num(model.train_rmse) << '\n';
  out << "epoch_rmse " << model.epoch_rmse.size();
  for (double v : model.epoch_rmse) out << ' ' << num(v);
  out << '\n';
  auto dump = [&](const char* tag, const std::vector<double>& vec) {
    out << tag;
    for (double v : vec) out << ' ' << num(v);
    out << '\n';
  };
  dump("user_bias", model.user_bias);
  dump("item_bias", model.item_bias);
  dump("user_factors", model.user_factors);
  dump("item_factors", model.item_factors);
  if (!out) throw IoError("write failed: " + path);
}

FactorModel load_factor_model(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open file: " + path);
  std::stringstream all;
  all << in.rdbuf();
  std::istringstream is(all.str());

  std::string tok;
  if (!(is >> tok) || tok != kCheckpointMagic)
    throw ParseError(path, 1, "not a factor-model checkpoint");
  FactorModel model;
  auto expect = [&](const char* tag) {
    if (!(is >> tok) || tok != tag)
      throw ParseError(path, 0, std::string("expected field '") + tag + "'");
  };
  std::uint64_t d = 0, seed = 0, n_users = 0, n_items = 0, n_epochs = 0;
  expect("d");
  if (!(is >> d) || d == 0) throw ParseError(path, 0, "invalid d");
  expect("seed");
  if (!(is >> seed)) throw ParseError(path, 0, "invalid seed");
  expect("n_users");
  if (!(is >> n_users)) throw ParseError(path, 0, "invalid n_users");
  expect("n_items");
  if (!(is >> n_items)) throw ParseError(path, 0, "invalid n_items");
  model.d = d;
  model.seed = seed;
  expect("global_mean");
  model.global_mean = parse_number(is, path, "global_mean");
  expect("train_rmse");
  model.train_rmse = parse_number(is, path, "train_rmse");
  expect("epoch_rmse");
  if (!(is >> n_epochs)) throw ParseError(path, 0, "invalid epoch count");
  model.epoch_rmse.resize(n_epochs);
  for (double& v : model.epoch_rmse) v = parse_number(is, path, "epoch_rmse");
  auto slurp = [&](const char* tag, std::vector<double>& vec, std::size_t n) {
    expect(tag);
    vec.resize(n);
    for (double& v : vec) v = parse_number(is, path, tag);
  };
  slurp("user_bias", model.user_bias, n_users);
  slurp("item_bias", model.item_bias, n_items);
  slurp("user_factors", model.user_factors, n_users * d);
  slurp("item_factors", model.item_factors, n_items * d);
  if (is >> tok) throw ParseError(path, 0, "trailing content: " + tok);
  return model;
}

std::span<const double> AttractionTable::row(std::size_t u) const {
  return {probs.data() + u * items, items};
}

std::vector<double> softmax(std::span<const double> scores) {
  if (scores.empty()) throw std::invalid_argument("softmax of empty vector");
  std::vector<double> out(scores.size());
  const double shift = kernels::max_value(scores);
  kernels::exp_shift(scores, shift, out);
  const double total = kernels::reduce_add(out);
  kernels::scale(out, 1.0 / total);
  return out;
}

AttractionTable softmax_attractions(const FactorModel& model) {
  const std::size_t n_users = model.n_users();
  const std::size_t n_items = model.n_items();
  if (n_users == 0 || n_items == 0)
    throw std::invalid_argument("softmax_attractions needs users and items");
  AttractionTable table;
  table.items = n_items;
  table.probs.resize(n_users * n_items);
  std::vector<double> scores(n_items);
  for (std::size_t u = 0; u < n_users; ++u) {
    for (std::size_t a = 0; a < n_items; ++a) scores[a] = model.predict(u, a);
    std::span<double> row{table.probs.data() + u * n_items, n_items};
    const double shift = kernels::max_value(scores);
    kernels::exp_shift(scores, shift, row);
    const double total = kernels::reduce_add(row);
    kernels::scale(row, 1.0 / total);
  }
  return table;
}

std::vector<double> popular_ratings(const FactorModel& model) {
  const std::size_t n_users = model.n_users();
  const std::size_t n_items = model.n_items();
  if (n_users == 0 || n_items == 0)
    throw std::invalid_argument("popular_ratings needs users and items");
  std::vector<double> acc(n_items, 0.0);
  for (std::size_t u = 0; u < n_users; ++u)
    for (std::size_t a = 0; a < n_items; ++a) acc[a] += model.predict(u, a);
  for (double& v : acc) v /= static_cast<double>(n_users);
  return acc;
}

std::vector<double> random_ratings(std::size_t n_items, std::uint64_t seed) {
  if (n_items == 0) throw std::invalid_argument("random_ratings needs items");
  Xoshiro256ss rng(seed);
  std::vector<double> out(n_items);
  for (double& v : out) v = rng.uniform(1.0, 5.0);
  return out;
}

}  // namespace cclab

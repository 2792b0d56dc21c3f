#include "trainer.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include <json.hpp>

#include "adam.hpp"
#include "errors.hpp"
#include "nn.hpp"
#include "rng.hpp"
#include "tokenizer.hpp"

namespace sarc {

void TrainConfig::validate() const {
  if (lr <= 0.0) {
    raise(ErrorCode::kConfig, "train config: learning rate must be positive");
  }
  if (batch_size == 0) {
    raise(ErrorCode::kConfig, "train config: batch size must be positive");
  }
  if (max_epochs == 0) {
    raise(ErrorCode::kConfig, "train config: max_epochs must be positive");
  }
  if (patience == 0) {
    raise(ErrorCode::kConfig, "train config: patience must be at least 1");
  }
  if (l2_lambda < 0.0) {
    raise(ErrorCode::kConfig, "train config: l2_lambda must be nonnegative");
  }
  if (dropout >= 1.0) {
    raise(ErrorCode::kConfig, "train config: dropout must be below 1");
  }
}

std::string TrainHistory::to_json_string() const {
  nlohmann::json arr = nlohmann::json::array();
  for (const EpochRecord& e : epochs) {
    arr.push_back({{"epoch", e.epoch},
                   {"train_loss", e.train_loss},
                   {"holdout_loss", e.holdout_loss}});
  }
  nlohmann::json out{{"epochs", arr},
                     {"stopped_epoch", stopped_epoch},
                     {"best_holdout_loss", best_holdout_loss}};
  return out.dump();
}

std::vector<Example> encode_examples(std::span<const CommentRecord> records,
                                     const WordVectorTable& vectors) {
  std::vector<Example> examples;
  examples.reserve(records.size());
  for (const CommentRecord& rec : records) {
    Example ex;
    std::vector<std::string> tokens = tokenize(rec.text);
    ex.rows = rows_of(encode_tokens(tokens, vectors));
    ex.author = rec.author;
    ex.label = rec.label;
    examples.push_back(std::move(ex));
  }
  return examples;
}

Graph::NodeId batch_loss_node(Graph& g, const ModelConfig& config,
                              ModelParams& params,
                              std::span<const Example> batch,
                              const AuthorStatsTable& stats, double l2_lambda,
                              bool train, Rng& rng) {
  if (batch.empty()) {
    raise(ErrorCode::kEmptyInput, "batch_loss: empty batch");
  }
  std::vector<Graph::NodeId> losses;
  losses.reserve(batch.size());
  for (const Example& ex : batch) {
    Graph::NodeId p =
        forward_node(g, config, params, ex.rows, ex.author, stats, train, rng);
    losses.push_back(g.bce(p, ex.label));
  }
  Graph::NodeId total = g.mean(losses);
  if (l2_lambda > 0.0) {
    for (LinearParams& layer : params.head) {
      total = g.add(total, g.scale(g.sum_squares(g.param(layer.w)), l2_lambda));
    }
  }
  return total;
}

double batch_loss(const ModelConfig& config, const ModelParams& params,
                  std::span<const Example> batch, const AuthorStatsTable& stats,
                  double l2_lambda) {
  if (batch.empty()) {
    raise(ErrorCode::kEmptyInput, "batch_loss: empty batch");
  }
  double acc = 0.0;
  for (const Example& ex : batch) {
    double p = forward_eval(config, params, ex.rows, ex.author, stats);
    acc += bce_loss(p, ex.label);
  }
  acc /= static_cast<double>(batch.size());
  if (l2_lambda > 0.0) {
    for (const LinearParams& layer : params.head) {
      double ss = 0.0;
      for (double w : layer.w.values) ss += w * w;
      acc += l2_lambda * ss;
    }
  }
  return acc;
}

namespace {

double holdout_bce(const ModelConfig& config, const ModelParams& params,
                   std::span<const Example> holdout,
                   const AuthorStatsTable& stats) {
  double acc = 0.0;
  for (const Example& ex : holdout) {
    double p = forward_eval(config, params, ex.rows, ex.author, stats);
    acc += bce_loss(p, ex.label);
  }
  return acc / static_cast<double>(holdout.size());
}

}  // namespace

TrainResult train(const ModelConfig& model_config,
                  const TrainConfig& train_config,
                  std::span<const CommentRecord> train_set,
                  std::span<const CommentRecord> holdout_set,
                  const AuthorStatsTable& stats,
                  const WordVectorTable& vectors) {
  train_config.validate();
  if (train_set.empty()) {
    raise(ErrorCode::kEmptyInput, "train: empty training set");
  }
  if (holdout_set.empty()) {
    raise(ErrorCode::kEmptyInput, "train: empty holdout set");
  }
  ModelConfig config = model_config;
  if (train_config.dropout >= 0.0) {
    config.dropout = train_config.dropout;
  }
  config.validate();

  Rng init_rng(derive_seed(train_config.seed, 0));
  std::vector<std::string> authors = distinct_authors(train_set);
  ModelParams params = init_model(config, vectors.dim(), authors, init_rng);

  std::vector<Example> train_ex = encode_examples(train_set, vectors);
  std::vector<Example> holdout_ex = encode_examples(holdout_set, vectors);

  std::vector<Tensor*> tensors;
  params.visit([&](const std::string&, Tensor& t) { tensors.push_back(&t); });
  std::vector<AdamState> states;
  states.reserve(tensors.size());
  for (Tensor* t : tensors) states.push_back(AdamState::for_param(*t));
  AdamHyper hyper;
  hyper.lr = train_config.lr;

  TrainHistory history;
  ModelParams best_params = params;
  size_t bad_evals = 0;

  std::vector<size_t> order(train_ex.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::vector<Example> batch;
  Graph g;

  for (size_t epoch = 1; epoch <= train_config.max_epochs; ++epoch) {
    Rng shuffle_rng(derive_seed(train_config.seed, 2 * epoch));
    Rng dropout_rng(derive_seed(train_config.seed, 2 * epoch + 1));
    shuffle_rng.shuffle(order);

    double loss_sum = 0.0;
    for (size_t start = 0; start < order.size();
         start += train_config.batch_size) {
      size_t end = std::min(order.size(), start + train_config.batch_size);
      batch.clear();
      for (size_t i = start; i < end; ++i) batch.push_back(train_ex[order[i]]);

      g.clear();
      Graph::NodeId loss =
          batch_loss_node(g, config, params, batch, stats,
                          train_config.l2_lambda, /*train=*/true, dropout_rng);
      double loss_value = g.scalar(loss);
      if (!std::isfinite(loss_value)) {
        raise(ErrorCode::kNumeric, "train: non-finite batch loss at epoch ",
              epoch);
      }
      g.backward(loss);
      for (size_t t = 0; t < tensors.size(); ++t) {
        if (!tensors[t]->has_grad()) tensors[t]->ensure_grad();
        adam_step(*tensors[t], tensors[t]->grad, states[t], hyper);
        tensors[t]->zero_grad();
      }
      loss_sum += loss_value * static_cast<double>(batch.size());
    }

    EpochRecord record;
    record.epoch = epoch;
    record.train_loss = loss_sum / static_cast<double>(train_ex.size());
    record.holdout_loss = holdout_bce(config, params, holdout_ex, stats);
    history.epochs.push_back(record);
    history.stopped_epoch = epoch;

    if (record.holdout_loss < history.best_holdout_loss) {
      history.best_holdout_loss = record.holdout_loss;
      best_params = params;
      bad_evals = 0;
    } else {
      bad_evals += 1;
      if (bad_evals >= train_config.patience) break;
    }
  }

  return TrainResult{std::move(best_params), std::move(history)};
}

std::vector<CommentRecord> remap_rare_authors(
    std::span<const CommentRecord> records, const AuthorStatsTable& stats,
    uint32_t threshold) {
  std::vector<CommentRecord> out(records.begin(), records.end());
  if (threshold == 0) return out;
  for (CommentRecord& rec : out) {
    if (stats.lookup(rec.author).total() < threshold) {
      rec.author = kUnkAuthor;
    }
  }
  return out;
}

std::vector<std::string> distinct_authors(
    std::span<const CommentRecord> records) {
  std::set<std::string> authors;
  for (const CommentRecord& rec : records) authors.insert(rec.author);
  return {authors.begin(), authors.end()};
}

}  // namespace sarc

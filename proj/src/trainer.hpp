#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "graph.hpp"
#include "model.hpp"
#include "records.hpp"
#include "wordvec.hpp"

namespace sarc {

struct TrainConfig {
  double lr = 1e-3;
  size_t batch_size = 32;
  size_t max_epochs = 50;
  size_t patience = 5;
  // <0 keeps the model config's dropout rate; otherwise overrides it so the
  // hyperparameter search can sample it.
  double dropout = -1.0;
  double l2_lambda = 0.0;
  uint64_t seed = 0;
  // 0 = off. When set, authors with fewer training comments than the
  // threshold should be remapped to kUnkAuthor (see remap_rare_authors);
  // the paper's variant uses 5.
  uint32_t rare_author_threshold = 0;

  void validate() const;
};

struct EpochRecord {
  size_t epoch = 0;
  double train_loss = 0.0;
  double holdout_loss = 0.0;
};

struct TrainHistory {
  std::vector<EpochRecord> epochs;
  size_t stopped_epoch = 0;
  double best_holdout_loss = std::numeric_limits<double>::infinity();

  std::string to_json_string() const;
};

struct TrainResult {
  ModelParams params;
  TrainHistory history;
};

// One training example with its text already mapped to word-vector rows.
// The views point into the word-vector table, which must outlive them.
struct Example {
  EncodedRows rows;
  std::string author;
  int label = 0;
};

std::vector<Example> encode_examples(std::span<const CommentRecord> records,
                                     const WordVectorTable& vectors);

// Batch objective: mean BCE over the batch plus l2_lambda times the summed
// squared entries of the head weight matrices (head biases, GRU weights, and
// author embeddings carry no penalty).
Graph::NodeId batch_loss_node(Graph& g, const ModelConfig& config,
                              ModelParams& params,
                              std::span<const Example> batch,
                              const AuthorStatsTable& stats, double l2_lambda,
                              bool train, Rng& rng);
// Eval-mode evaluation of the same objective (dropout off, no gradients).
double batch_loss(const ModelConfig& config, const ModelParams& params,
                  std::span<const Example> batch, const AuthorStatsTable& stats,
                  double l2_lambda);

// Minibatch Adam with per-epoch reshuffling and early stopping on the holdout
// loss (plain mean BCE). Returns the parameters with the best recorded
// holdout loss. Fully determined by train_config.seed.
TrainResult train(const ModelConfig& model_config,
                  const TrainConfig& train_config,
                  std::span<const CommentRecord> train_set,
                  std::span<const CommentRecord> holdout_set,
                  const AuthorStatsTable& stats,
                  const WordVectorTable& vectors);

// Replaces authors whose total training count is strictly below the threshold
// with kUnkAuthor. threshold 0 is the identity.
std::vector<CommentRecord> remap_rare_authors(
    std::span<const CommentRecord> records, const AuthorStatsTable& stats,
    uint32_t threshold);

std::vector<std::string> distinct_authors(std::span<const CommentRecord> records);

}  // namespace sarc

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "records.hpp"
#include "trainer.hpp"
#include "wordvec.hpp"

namespace sarc {

// Sampling ranges for the randomized hyperparameter search: log-uniform for
// the learning rate and L2 strength, categorical for the architecture and
// batch size, uniform for dropout.
struct HyperRange {
  double lr_lo = 1e-4, lr_hi = 1e-1;
  double l2_lo = 1e-6, l2_hi = 1e-2;
  std::vector<size_t> hidden{8, 16, 32};
  std::vector<int> head_layers{1, 2};
  std::vector<size_t> head_hidden{16, 32, 64};
  std::vector<size_t> batch_size{16, 32, 64};
  double dropout_lo = 0.0, dropout_hi = 0.6;

  void validate() const;
};

struct SearchTrial {
  ModelConfig model_config;
  TrainConfig train_config;
  double holdout_f1 = 0.0;
};

// Samples `budget` configurations, trains each with early stopping on a
// stopping holdout, scores each by macro-F1 on a separate evaluation holdout
// (both split from `data`), and returns the trials ranked best first.
std::vector<SearchTrial> random_search(const HyperRange& range, size_t budget,
                                       std::span<const CommentRecord> data,
                                       const WordVectorTable& vectors,
                                       const ModelConfig& base_model,
                                       const TrainConfig& base_train,
                                       uint64_t seed,
                                       double holdout_fraction = 0.05);

// The sampling step alone, exposed for tests and the CLI's dry-run listing.
std::pair<ModelConfig, TrainConfig> sample_config(const HyperRange& range,
                                                  const ModelConfig& base_model,
                                                  const TrainConfig& base_train,
                                                  Rng& rng);

}  // namespace sarc

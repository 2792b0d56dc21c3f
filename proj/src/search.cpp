#include "search.hpp"

#include <algorithm>
#include <cmath>

#include "errors.hpp"
#include "metrics.hpp"
#include "rng.hpp"

namespace sarc {

void HyperRange::validate() const {
  auto log_range_ok = [](double lo, double hi) {
    return lo > 0.0 && hi >= lo;
  };
  if (!log_range_ok(lr_lo, lr_hi) || !log_range_ok(l2_lo, l2_hi)) {
    raise(ErrorCode::kConfig,
          "hyper range: log-uniform bounds must satisfy 0 < lo <= hi");
  }
  if (hidden.empty() || head_layers.empty() || head_hidden.empty() ||
      batch_size.empty()) {
    raise(ErrorCode::kConfig, "hyper range: categorical choices must be non-empty");
  }
  for (int hl : head_layers) {
    if (hl != 1 && hl != 2) {
      raise(ErrorCode::kConfig, "hyper range: head_layers choices must be 1 or 2");
    }
  }
  if (dropout_lo < 0.0 || dropout_hi >= 1.0 || dropout_hi < dropout_lo) {
    raise(ErrorCode::kConfig, "hyper range: dropout bounds must satisfy 0 <= lo <= hi < 1");
  }
}

namespace {

double log_uniform(double lo, double hi, Rng& rng) {
  return std::exp(rng.uniform(std::log(lo), std::log(hi)));
}

template <typename T>
T pick(const std::vector<T>& choices, Rng& rng) {
  return choices[rng.below(choices.size())];
}

}  // namespace

std::pair<ModelConfig, TrainConfig> sample_config(const HyperRange& range,
                                                  const ModelConfig& base_model,
                                                  const TrainConfig& base_train,
                                                  Rng& rng) {
  ModelConfig model = base_model;
  TrainConfig train = base_train;
  train.lr = log_uniform(range.lr_lo, range.lr_hi, rng);
  train.l2_lambda = log_uniform(range.l2_lo, range.l2_hi, rng);
  model.hidden = pick(range.hidden, rng);
  model.head_layers = pick(range.head_layers, rng);
  model.head_hidden = pick(range.head_hidden, rng);
  train.batch_size = pick(range.batch_size, rng);
  double dropout = rng.uniform(range.dropout_lo, range.dropout_hi);
  model.dropout = dropout;
  train.dropout = dropout;
  return {model, train};
}

std::vector<SearchTrial> random_search(const HyperRange& range, size_t budget,
                                       std::span<const CommentRecord> data,
                                       const WordVectorTable& vectors,
                                       const ModelConfig& base_model,
                                       const TrainConfig& base_train,
                                       uint64_t seed,
                                       double holdout_fraction) {
  range.validate();
  if (budget == 0) {
    raise(ErrorCode::kConfig, "random_search: budget must be at least 1");
  }

  // Tuning protocol: configurations early-stop on one holdout and are ranked
  // on a second, disjoint one.
  auto [pool, eval_holdout] =
      split_holdout(data, holdout_fraction, derive_seed(seed, 101));
  auto [train_set, stop_holdout] =
      split_holdout(pool, holdout_fraction, derive_seed(seed, 102));

  AuthorStatsTable stats = AuthorStatsTable::from_records(train_set);
  std::vector<Example> eval_ex = encode_examples(eval_holdout, vectors);
  std::vector<int> golds;
  golds.reserve(eval_ex.size());
  for (const Example& ex : eval_ex) golds.push_back(ex.label);

  Rng sample_rng(derive_seed(seed, 103));
  std::vector<SearchTrial> trials;
  trials.reserve(budget);
  for (size_t t = 0; t < budget; ++t) {
    SearchTrial trial;
    std::tie(trial.model_config, trial.train_config) =
        sample_config(range, base_model, base_train, sample_rng);
    trial.train_config.seed = derive_seed(seed, 200 + t);

    TrainResult result = train(trial.model_config, trial.train_config,
                               train_set, stop_holdout, stats, vectors);
    std::vector<int> preds;
    preds.reserve(eval_ex.size());
    for (const Example& ex : eval_ex) {
      double p = forward_eval(trial.model_config, result.params, ex.rows,
                              ex.author, stats);
      preds.push_back(predict_label(p));
    }
    trial.holdout_f1 = macro_f1(preds, golds);
    trials.push_back(std::move(trial));
  }

  std::stable_sort(trials.begin(), trials.end(),
                   [](const SearchTrial& a, const SearchTrial& b) {
                     return a.holdout_f1 > b.holdout_f1;
                   });
  return trials;
}

}  // namespace sarc

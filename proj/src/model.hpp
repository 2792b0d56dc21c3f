#pragma once

#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "graph.hpp"
#include "nn.hpp"
#include "records.hpp"
#include "tensor.hpp"

namespace sarc {
class Rng;

enum class Variant { kNoAuthor, kBayesPrior, kAuthorEmbed };
enum class CountTransform { kRaw, kLog1p };

std::string variant_name(Variant v);
Variant variant_from_name(const std::string& name);
std::string count_transform_name(CountTransform t);
CountTransform count_transform_from_name(const std::string& name);

struct ModelConfig {
  Variant variant = Variant::kNoAuthor;
  size_t hidden = 100;  // H per direction
  size_t author_dim = 15;
  int head_layers = 2;  // 1 or 2
  size_t head_hidden = 64;
  double dropout = 0.5;
  CountTransform count_transform = CountTransform::kLog1p;

  // 0 (text only), 2 (count prior), or author_dim (learned embedding).
  size_t feature_width() const;
  size_t head_input_width() const { return 2 * hidden + feature_width(); }
  void validate() const;
};

// Reserved author id produced by remap_rare_authors. It never receives an
// embedding row, so remapped examples train x_unk.
inline const std::string kUnkAuthor = "<UNK_AUTHOR>";

struct ModelParams {
  GruParams fwd, bwd;
  std::vector<LinearParams> head;
  std::map<std::string, Tensor> author_embeddings;
  Tensor x_unk;

  // Stable-order traversal of every trainable tensor (embedding rows sorted
  // by author id). Order defines the optimizer-state and checkpoint layout.
  void visit(const std::function<void(const std::string&, Tensor&)>& fn);
  size_t scalar_count();
};

// Xavier-initialized GRU and head weights, zero biases; author embeddings and
// x_unk uniform in (-0.1, 0.1). The embedding table holds exactly the given
// authors (training never adds rows); kUnkAuthor is skipped if present.
ModelParams init_model(const ModelConfig& config, size_t input_dim,
                       std::span<const std::string> authors, Rng& rng);

// Width-0, width-2, or width-author_dim feature per the variant.
std::vector<double> author_feature(const ModelConfig& config,
                                   const std::string& author,
                                   const AuthorStatsTable& stats,
                                   const ModelParams& params);

using EncodedRows = std::vector<std::span<const double>>;
EncodedRows rows_of(const Tensor& encoded);
EncodedRows rows_of(const std::vector<const std::vector<double>*>& ptrs);

// Eval-mode probability: pure function of (params, input).
double forward_eval(const ModelConfig& config, const ModelParams& params,
                    std::span<const std::span<const double>> encoded,
                    const std::string& author, const AuthorStatsTable& stats);

// Graph-building forward for training; gradients reach the GRU, the head,
// and (for the embedding variant) the looked-up author row or x_unk.
Graph::NodeId forward_node(Graph& g, const ModelConfig& config,
                           ModelParams& params,
                           std::span<const std::span<const double>> encoded,
                           const std::string& author,
                           const AuthorStatsTable& stats, bool train,
                           Rng& rng);

int predict_label(double p, double threshold = 0.5);

}  // namespace sarc

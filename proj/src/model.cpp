#include "model.hpp"

#include <cmath>

#include "errors.hpp"
#include "rng.hpp"

namespace sarc {

std::string variant_name(Variant v) {
  switch (v) {
    case Variant::kNoAuthor:
      return "noauthor";
    case Variant::kBayesPrior:
      return "bayes";
    case Variant::kAuthorEmbed:
      return "embed";
  }
  return "noauthor";
}

Variant variant_from_name(const std::string& name) {
  if (name == "noauthor") return Variant::kNoAuthor;
  if (name == "bayes") return Variant::kBayesPrior;
  if (name == "embed") return Variant::kAuthorEmbed;
  raise(ErrorCode::kConfig, "unknown variant '", name,
        "' (expected noauthor|bayes|embed)");
}

std::string count_transform_name(CountTransform t) {
  return t == CountTransform::kRaw ? "raw" : "log1p";
}

CountTransform count_transform_from_name(const std::string& name) {
  if (name == "raw") return CountTransform::kRaw;
  if (name == "log1p") return CountTransform::kLog1p;
  raise(ErrorCode::kConfig, "unknown count transform '", name,
        "' (expected raw|log1p)");
}

size_t ModelConfig::feature_width() const {
  switch (variant) {
    case Variant::kNoAuthor:
      return 0;
    case Variant::kBayesPrior:
      return 2;
    case Variant::kAuthorEmbed:
      return author_dim;
  }
  return 0;
}

void ModelConfig::validate() const {
  if (hidden == 0) {
    raise(ErrorCode::kConfig, "model config: hidden size must be positive");
  }
  if (head_layers != 1 && head_layers != 2) {
    raise(ErrorCode::kConfig, "model config: head_layers must be 1 or 2, got ",
          head_layers);
  }
  if (head_layers == 2 && head_hidden == 0) {
    raise(ErrorCode::kConfig,
          "model config: head_hidden must be positive with a two-layer head");
  }
  if (dropout < 0.0 || dropout >= 1.0) {
    raise(ErrorCode::kConfig, "model config: dropout must be in [0, 1), got ",
          dropout);
  }
  if (variant == Variant::kAuthorEmbed && author_dim == 0) {
    raise(ErrorCode::kConfig, "model config: author_dim must be positive");
  }
}

void ModelParams::visit(
    const std::function<void(const std::string&, Tensor&)>& fn) {
  auto gru = [&](const char* prefix, GruParams& p) {
    std::string s(prefix);
    fn(s + ".w_z", p.w_z);
    fn(s + ".w_r", p.w_r);
    fn(s + ".w_h", p.w_h);
    fn(s + ".u_z", p.u_z);
    fn(s + ".u_r", p.u_r);
    fn(s + ".u_h", p.u_h);
    fn(s + ".b_z", p.b_z);
    fn(s + ".b_r", p.b_r);
    fn(s + ".b_h", p.b_h);
  };
  gru("fwd", fwd);
  gru("bwd", bwd);
  for (size_t i = 0; i < head.size(); ++i) {
    std::string s = "head" + std::to_string(i);
    fn(s + ".w", head[i].w);
    fn(s + ".b", head[i].b);
  }
  for (auto& [author, row] : author_embeddings) {
    fn("embed." + author, row);
  }
  if (x_unk.numel() > 0) {
    fn("x_unk", x_unk);
  }
}

size_t ModelParams::scalar_count() {
  size_t n = 0;
  visit([&](const std::string&, Tensor& t) { n += t.numel(); });
  return n;
}

ModelParams init_model(const ModelConfig& config, size_t input_dim,
                       std::span<const std::string> authors, Rng& rng) {
  config.validate();
  if (input_dim == 0) {
    raise(ErrorCode::kConfig, "init_model: input dimension must be positive");
  }
  ModelParams params;
  params.fwd = GruParams::xavier(input_dim, config.hidden, rng);
  params.bwd = GruParams::xavier(input_dim, config.hidden, rng);
  size_t in_width = config.head_input_width();
  if (config.head_layers == 1) {
    params.head.push_back(LinearParams::xavier(in_width, 1, rng));
  } else {
    params.head.push_back(LinearParams::xavier(in_width, config.head_hidden, rng));
    params.head.push_back(LinearParams::xavier(config.head_hidden, 1, rng));
  }
  if (config.variant == Variant::kAuthorEmbed) {
    std::map<std::string, Tensor>& table = params.author_embeddings;
    // std::map iteration keeps the draw order independent of the caller's
    // author ordering.
    for (const std::string& author : authors) {
      if (author == kUnkAuthor) continue;
      table.try_emplace(author);
    }
    for (auto& [author, row] : table) {
      row = Tensor::uniform_vector(config.author_dim, 0.1, rng);
    }
    params.x_unk = Tensor::uniform_vector(config.author_dim, 0.1, rng);
  }
  return params;
}

namespace {

double apply_transform(CountTransform t, double count) {
  return t == CountTransform::kLog1p ? std::log1p(count) : count;
}

}  // namespace

std::vector<double> author_feature(const ModelConfig& config,
                                   const std::string& author,
                                   const AuthorStatsTable& stats,
                                   const ModelParams& params) {
  switch (config.variant) {
    case Variant::kNoAuthor:
      return {};
    case Variant::kBayesPrior: {
      AuthorStatsTable::Counts c = stats.lookup(author);
      return {apply_transform(config.count_transform, c.sarcastic),
              apply_transform(config.count_transform, c.not_sarcastic)};
    }
    case Variant::kAuthorEmbed: {
      auto it = params.author_embeddings.find(author);
      const Tensor& row =
          it == params.author_embeddings.end() ? params.x_unk : it->second;
      return row.values;
    }
  }
  return {};
}

EncodedRows rows_of(const Tensor& encoded) {
  EncodedRows rows;
  rows.reserve(encoded.rows());
  for (size_t r = 0; r < encoded.rows(); ++r) {
    rows.emplace_back(encoded.values.data() + r * encoded.cols(),
                      encoded.cols());
  }
  return rows;
}

EncodedRows rows_of(const std::vector<const std::vector<double>*>& ptrs) {
  EncodedRows rows;
  rows.reserve(ptrs.size());
  for (const auto* p : ptrs) rows.emplace_back(*p);
  return rows;
}

double forward_eval(const ModelConfig& config, const ModelParams& params,
                    std::span<const std::span<const double>> encoded,
                    const std::string& author, const AuthorStatsTable& stats) {
  std::vector<double> x = bigru_encode(encoded, params.fwd, params.bwd);
  std::vector<double> feature = author_feature(config, author, stats, params);
  x.insert(x.end(), feature.begin(), feature.end());
  if (config.head_layers == 2) {
    x = linear(x, params.head[0]);
    for (double& v : x) v = v > 0.0 ? v : 0.0;
    x = linear(x, params.head[1]);
  } else {
    x = linear(x, params.head[0]);
  }
  return sigmoid(x[0]);
}

Graph::NodeId forward_node(Graph& g, const ModelConfig& config,
                           ModelParams& params,
                           std::span<const std::span<const double>> encoded,
                           const std::string& author,
                           const AuthorStatsTable& stats, bool train,
                           Rng& rng) {
  std::vector<Graph::NodeId> xs;
  xs.reserve(encoded.size());
  for (const auto& row : encoded) xs.push_back(g.constant(row));
  Graph::NodeId x = bigru_encode_node(g, xs, params.fwd, params.bwd);

  if (config.variant == Variant::kBayesPrior) {
    std::vector<double> feature = author_feature(config, author, stats, params);
    x = g.concat({x, g.constant(feature)});
  } else if (config.variant == Variant::kAuthorEmbed) {
    auto it = params.author_embeddings.find(author);
    Tensor& row = it == params.author_embeddings.end() ? params.x_unk : it->second;
    x = g.concat({x, g.param(row)});
  }

  x = g.dropout(x, config.dropout, train, rng);
  x = linear_node(g, x, params.head[0]);
  if (config.head_layers == 2) {
    x = g.relu(x);
    x = g.dropout(x, config.dropout, train, rng);
    x = linear_node(g, x, params.head[1]);
  }
  return g.sigmoid(x);
}

int predict_label(double p, double threshold) {
  return p >= threshold ? 1 : 0;
}

}  // namespace sarc

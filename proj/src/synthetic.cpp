#include "synthetic.hpp"

#include <algorithm>
#include <cmath>

#include "errors.hpp"
#include "rng.hpp"

namespace sarc {

void SyntheticSpec::validate() const {
  if (propensities.empty() || propensities.size() != weights.size()) {
    raise(ErrorCode::kConfig,
          "synthetic spec: propensities and weights must be non-empty and "
          "equal-length");
  }
  for (double p : propensities) {
    if (p < 0.0 || p > 1.0) {
      raise(ErrorCode::kConfig, "synthetic spec: propensity ", p,
            " outside [0, 1]");
    }
  }
  double wsum = 0.0;
  for (double w : weights) {
    if (w < 0.0) {
      raise(ErrorCode::kConfig, "synthetic spec: negative mixture weight");
    }
    wsum += w;
  }
  if (std::fabs(wsum - 1.0) > 1e-9) {
    raise(ErrorCode::kConfig, "synthetic spec: mixture weights sum to ", wsum,
          ", expected 1");
  }
  if (n_authors > 0 && comments_per_author > 0 && vocabulary.empty()) {
    raise(ErrorCode::kConfig, "synthetic spec: empty filler vocabulary");
  }
  if (filler_min == 0 || filler_max < filler_min) {
    raise(ErrorCode::kConfig, "synthetic spec: bad filler length range [",
          filler_min, ", ", filler_max, "]");
  }
  if (interaction) {
    if (cue_token.empty()) {
      raise(ErrorCode::kConfig, "synthetic spec: interaction needs a cue token");
    }
    if (std::find(vocabulary.begin(), vocabulary.end(), cue_token) !=
        vocabulary.end()) {
      raise(ErrorCode::kConfig,
            "synthetic spec: cue token must not appear in the filler "
            "vocabulary");
    }
  }
}

std::vector<CommentRecord> generate_synthetic(const SyntheticSpec& spec) {
  spec.validate();
  std::vector<CommentRecord> records;
  records.reserve(spec.n_authors * spec.comments_per_author);
  Rng rng(spec.seed);

  for (size_t a = 0; a < spec.n_authors; ++a) {
    double u = rng.uniform();
    size_t type = 0;
    double acc = 0.0;
    for (size_t k = 0; k < spec.weights.size(); ++k) {
      acc += spec.weights[k];
      if (u < acc) {
        type = k;
        break;
      }
      type = k;
    }
    double propensity = spec.propensities[type];
    std::string author = "a" + std::to_string(a);

    for (size_t j = 0; j < spec.comments_per_author; ++j) {
      int label = rng.bernoulli(propensity) ? 1 : 0;
      size_t len =
          spec.filler_min + rng.below(spec.filler_max - spec.filler_min + 1);
      std::vector<std::string> tokens(len);
      for (auto& tok : tokens) {
        tok = spec.vocabulary[rng.below(spec.vocabulary.size())];
      }
      if (spec.interaction) {
        bool cue = (type % 2 == 0) ? (label == 1) : (label == 0);
        if (cue) {
          tokens.insert(tokens.begin() + rng.below(tokens.size() + 1),
                        spec.cue_token);
        }
      }
      std::string text;
      for (size_t t = 0; t < tokens.size(); ++t) {
        if (t) text += ' ';
        text += tokens[t];
      }
      CommentRecord rec;
      rec.id = author + "-c" + std::to_string(j);
      rec.text = std::move(text);
      rec.author = author;
      rec.subreddit = "synthetic";
      rec.label = label;
      records.push_back(std::move(rec));
    }
  }
  return records;
}

std::vector<std::string> filler_vocabulary(size_t n) {
  std::vector<std::string> vocab(n);
  for (size_t i = 0; i < n; ++i) vocab[i] = "w" + std::to_string(i);
  return vocab;
}

}  // namespace sarc

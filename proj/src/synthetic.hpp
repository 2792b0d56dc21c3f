#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "records.hpp"

namespace sarc {

// Seed-deterministic corpus generator for controlled experiments.
//
// Each author draws a mixture component (its "type"); each of their comments
// draws label ~ Bernoulli(propensities[type]) and a text of filler tokens.
// With the interaction flag set, the cue token is inserted when label==1 for
// even-typed authors and when label==0 for odd-typed ones, so the cue's
// meaning flips with the author type while per-author label marginals stay
// at the component propensity.
struct SyntheticSpec {
  size_t n_authors = 0;
  size_t comments_per_author = 0;
  std::vector<double> propensities;
  std::vector<double> weights;
  std::vector<std::string> vocabulary;
  std::string cue_token = "yeahright";
  bool interaction = false;
  size_t filler_min = 3;
  size_t filler_max = 8;
  uint64_t seed = 0;

  void validate() const;
};

std::vector<CommentRecord> generate_synthetic(const SyntheticSpec& spec);

// Convenience: a vocabulary of n distinct filler tokens w0..w{n-1}.
std::vector<std::string> filler_vocabulary(size_t n);

}  // namespace sarc

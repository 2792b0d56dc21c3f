#pragma once

#include <cstdint>
#include <span>

namespace sarc {

// Positive class = sarcastic (label 1).
struct ConfusionCounts {
  size_t tp = 0;
  size_t fp = 0;
  size_t fn = 0;
  size_t tn = 0;

  static ConfusionCounts from_labels(std::span<const int> predictions,
                                     std::span<const int> golds);
  size_t total() const { return tp + fp + fn + tn; }
};

struct MacroF1 {
  double macro = 0.0;
  double f1_positive = 0.0;
  double f1_negative = 0.0;
};

// Unweighted mean of the two per-class F1 scores. A class whose
// precision+recall denominator is zero scores 0.
MacroF1 macro_f1_detail(std::span<const int> predictions,
                        std::span<const int> golds);
double macro_f1(std::span<const int> predictions, std::span<const int> golds);

struct BootstrapCI {
  double mean = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  double level = 0.95;
  size_t resamples = 0;
};

// Percentile interval of resampled means (sample with replacement, size =
// |scores|); nearest-rank percentiles at (1-level)/2 and 1-(1-level)/2.
BootstrapCI bootstrap_ci(std::span<const double> scores,
                         size_t resamples = 10000, double level = 0.95,
                         uint64_t seed = 0);

}  // namespace sarc

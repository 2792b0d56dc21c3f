#include "metrics.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "errors.hpp"
#include "rng.hpp"

namespace sarc {

ConfusionCounts ConfusionCounts::from_labels(std::span<const int> predictions,
                                             std::span<const int> golds) {
  if (predictions.size() != golds.size()) {
    raise(ErrorCode::kDimension, "confusion counts: ", predictions.size(),
          " predictions vs ", golds.size(), " golds");
  }
  if (predictions.empty()) {
    raise(ErrorCode::kEmptyInput, "confusion counts: no labels");
  }
  ConfusionCounts c;
  for (size_t i = 0; i < predictions.size(); ++i) {
    if (golds[i] == 1) {
      (predictions[i] == 1 ? c.tp : c.fn) += 1;
    } else {
      (predictions[i] == 1 ? c.fp : c.tn) += 1;
    }
  }
  return c;
}

namespace {

double f1_from(size_t tp, size_t fp, size_t fn) {
  size_t denom = 2 * tp + fp + fn;
  if (denom == 0) return 0.0;
  return 2.0 * static_cast<double>(tp) / static_cast<double>(denom);
}

}  // namespace

MacroF1 macro_f1_detail(std::span<const int> predictions,
                        std::span<const int> golds) {
  ConfusionCounts c = ConfusionCounts::from_labels(predictions, golds);
  MacroF1 out;
  out.f1_positive = f1_from(c.tp, c.fp, c.fn);
  out.f1_negative = f1_from(c.tn, c.fn, c.fp);
  out.macro = 0.5 * (out.f1_positive + out.f1_negative);
  return out;
}

double macro_f1(std::span<const int> predictions, std::span<const int> golds) {
  return macro_f1_detail(predictions, golds).macro;
}

BootstrapCI bootstrap_ci(std::span<const double> scores, size_t resamples,
                         double level, uint64_t seed) {
  if (scores.empty()) {
    raise(ErrorCode::kEmptyInput, "bootstrap_ci: no scores");
  }
  if (resamples == 0) {
    raise(ErrorCode::kConfig, "bootstrap_ci: resamples must be positive");
  }
  if (level <= 0.0 || level >= 1.0) {
    raise(ErrorCode::kConfig, "bootstrap_ci: level must be in (0, 1), got ",
          level);
  }
  Rng rng(seed);
  std::vector<double> means(resamples);
  for (size_t r = 0; r < resamples; ++r) {
    double acc = 0.0;
    for (size_t i = 0; i < scores.size(); ++i) {
      acc += scores[rng.below(scores.size())];
    }
    means[r] = acc / static_cast<double>(scores.size());
  }
  std::sort(means.begin(), means.end());

  auto percentile = [&](double q) {
    double rank = std::ceil(q * static_cast<double>(resamples));
    size_t idx = rank < 1.0 ? 0 : static_cast<size_t>(rank) - 1;
    return means[std::min(idx, resamples - 1)];
  };

  BootstrapCI ci;
  double tail = (1.0 - level) / 2.0;
  ci.lower = percentile(tail);
  ci.upper = percentile(1.0 - tail);
  double acc = 0.0;
  for (double s : scores) acc += s;
  ci.mean = acc / static_cast<double>(scores.size());
  ci.level = level;
  ci.resamples = resamples;
  return ci;
}

}  // namespace sarc

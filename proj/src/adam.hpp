#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "tensor.hpp"

namespace sarc {

struct AdamHyper {
  double lr = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
};

// First/second moment buffers for one parameter tensor.
struct AdamState {
  std::vector<double> m;
  std::vector<double> v;
  uint64_t t = 0;

  static AdamState for_param(const Tensor& param);
};

// Standard bias-corrected Adam update, in place. grad must be the same length
// as param.values; state advances by exactly one step.
void adam_step(Tensor& param, std::span<const double> grad, AdamState& state,
               const AdamHyper& hyper);

}  // namespace sarc

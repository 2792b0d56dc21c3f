#pragma once

#include <functional>
#include <span>

#include "tensor.hpp"

namespace sarc {

// Compares engine gradients against central finite differences.
//
// loss(with_grad) evaluates the (deterministic) loss from the current values
// of the listed parameter tensors; when with_grad is true it must also
// accumulate d(loss)/d(param) into each tensor's grad buffer. Returns the
// maximum relative error over all parameter entries, with the relative error
// defined as |fd - engine| / max(|fd|, |engine|, 1e-8).
double grad_check(const std::function<double(bool with_grad)>& loss,
                  std::span<Tensor* const> params, double eps = 1e-5);

}  // namespace sarc

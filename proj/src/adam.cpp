#include "adam.hpp"

#include <cmath>

#include "errors.hpp"

namespace sarc {

AdamState AdamState::for_param(const Tensor& param) {
  AdamState s;
  s.m.assign(param.numel(), 0.0);
  s.v.assign(param.numel(), 0.0);
  return s;
}

void adam_step(Tensor& param, std::span<const double> grad, AdamState& state,
               const AdamHyper& hyper) {
  if (grad.size() != param.numel() || state.m.size() != param.numel()) {
    raise(ErrorCode::kDimension, "adam_step: size mismatch (param ",
          param.numel(), ", grad ", grad.size(), ", state ", state.m.size(),
          ")");
  }
  state.t += 1;
  double bc1 = 1.0 - std::pow(hyper.beta1, static_cast<double>(state.t));
  double bc2 = 1.0 - std::pow(hyper.beta2, static_cast<double>(state.t));
  for (size_t i = 0; i < grad.size(); ++i) {
    state.m[i] = hyper.beta1 * state.m[i] + (1.0 - hyper.beta1) * grad[i];
    state.v[i] = hyper.beta2 * state.v[i] + (1.0 - hyper.beta2) * grad[i] * grad[i];
    double m_hat = state.m[i] / bc1;
    double v_hat = state.v[i] / bc2;
    param.values[i] -= hyper.lr * m_hat / (std::sqrt(v_hat) + hyper.eps);
  }
}

}  // namespace sarc

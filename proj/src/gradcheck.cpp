#include "gradcheck.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace sarc {

double grad_check(const std::function<double(bool with_grad)>& loss,
                  std::span<Tensor* const> params, double eps) {
  for (Tensor* p : params) {
    p->zero_grad();
  }
  loss(true);
  std::vector<std::vector<double>> engine;
  engine.reserve(params.size());
  for (Tensor* p : params) {
    engine.push_back(p->grad);
  }

  double max_rel = 0.0;
  for (size_t pi = 0; pi < params.size(); ++pi) {
    Tensor& p = *params[pi];
    for (size_t i = 0; i < p.numel(); ++i) {
      double saved = p.values[i];
      p.values[i] = saved + eps;
      double f_plus = loss(false);
      p.values[i] = saved - eps;
      double f_minus = loss(false);
      p.values[i] = saved;
      double fd = (f_plus - f_minus) / (2.0 * eps);
      double eng = engine[pi][i];
      double denom = std::max({std::fabs(fd), std::fabs(eng), 1e-8});
      max_rel = std::max(max_rel, std::fabs(fd - eng) / denom);
    }
  }
  return max_rel;
}

}  // namespace sarc

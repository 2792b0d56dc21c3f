#include "tensor.hpp"

#include <algorithm>
#include <cmath>

#include "rng.hpp"

namespace sarc {

Tensor Tensor::zeros_vector(size_t n) {
  Tensor t;
  t.shape = {n};
  t.values.assign(n, 0.0);
  return t;
}

Tensor Tensor::zeros_matrix(size_t rows, size_t cols) {
  Tensor t;
  t.shape = {rows, cols};
  t.values.assign(rows * cols, 0.0);
  return t;
}

Tensor Tensor::from_vector(std::vector<double> v) {
  Tensor t;
  t.shape = {v.size()};
  t.values = std::move(v);
  return t;
}

Tensor Tensor::uniform_vector(size_t n, double limit, Rng& rng) {
  Tensor t = zeros_vector(n);
  for (double& v : t.values) v = rng.uniform(-limit, limit);
  return t;
}

Tensor Tensor::uniform_matrix(size_t rows, size_t cols, double limit, Rng& rng) {
  Tensor t = zeros_matrix(rows, cols);
  for (double& v : t.values) v = rng.uniform(-limit, limit);
  return t;
}

Tensor Tensor::xavier_matrix(size_t rows, size_t cols, Rng& rng) {
  double limit = std::sqrt(6.0 / static_cast<double>(rows + cols));
  return uniform_matrix(rows, cols, limit, rng);
}

void Tensor::zero_grad() {
  ensure_grad();
  std::fill(grad.begin(), grad.end(), 0.0);
}

bool Tensor::all_finite() const {
  return std::all_of(values.begin(), values.end(),
                     [](double v) { return std::isfinite(v); });
}

}  // namespace sarc

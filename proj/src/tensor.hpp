#pragma once

#include <cstddef>
#include <vector>

namespace sarc {
class Rng;

// Dense 64-bit float buffer with a shape and an optional gradient buffer of
// the same length. Rank is 1 (vector) or 2 (matrix) everywhere in this
// library.
struct Tensor {
  std::vector<size_t> shape;
  std::vector<double> values;
  std::vector<double> grad;  // empty = no gradient attached

  Tensor() = default;

  static Tensor zeros_vector(size_t n);
  static Tensor zeros_matrix(size_t rows, size_t cols);
  static Tensor from_vector(std::vector<double> v);
  // Entries uniform in (-limit, limit).
  static Tensor uniform_vector(size_t n, double limit, Rng& rng);
  static Tensor uniform_matrix(size_t rows, size_t cols, double limit, Rng& rng);
  // Xavier/Glorot uniform: limit = sqrt(6 / (fan_in + fan_out)).
  static Tensor xavier_matrix(size_t rows, size_t cols, Rng& rng);

  size_t numel() const { return values.size(); }
  size_t rows() const { return shape.empty() ? 0 : shape[0]; }
  size_t cols() const { return shape.size() < 2 ? 1 : shape[1]; }
  bool is_matrix() const { return shape.size() == 2; }

  double& at(size_t i) { return values[i]; }
  double at(size_t i) const { return values[i]; }
  double& at(size_t r, size_t c) { return values[r * cols() + c]; }
  double at(size_t r, size_t c) const { return values[r * cols() + c]; }

  bool has_grad() const { return !grad.empty(); }
  void ensure_grad() { grad.resize(values.size(), 0.0); }
  void zero_grad();
  bool all_finite() const;
};

}  // namespace sarc

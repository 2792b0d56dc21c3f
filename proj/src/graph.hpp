#pragma once

#include <cstdint>
#include <initializer_list>
#include <span>
#include <unordered_map>
#include <vector>

#include "tensor.hpp"

namespace sarc {
class Rng;

// Reverse-mode gradient tape over vectors and matrices. Graphs are built
// define-by-run, one per minibatch; backward() walks the tape in reverse
// creation order (already topological) and accumulates gradients into the
// Tensors bound via param().
//
// Node storage is reused across clear() calls so per-batch graph rebuilds do
// not churn the allocator.
//
// Single-writer: a Graph instance must not be shared across threads.
class Graph {
 public:
  using NodeId = uint32_t;

  NodeId constant(std::span<const double> v);
  NodeId constant_scalar(double v);
  // Leaf bound to an external tensor; values are copied at bind time and
  // gradients accumulate into t.grad on backward(). Binding the same tensor
  // twice in one graph returns the same node.
  NodeId param(Tensor& t);

  NodeId matvec(NodeId w, NodeId x);  // W (m x n) * x (n) -> (m)
  NodeId add(NodeId a, NodeId b);
  NodeId sub(NodeId a, NodeId b);
  NodeId mul(NodeId a, NodeId b);  // elementwise
  NodeId one_minus(NodeId x);      // 1 - x elementwise
  NodeId sigmoid(NodeId x);
  NodeId tanh(NodeId x);
  NodeId relu(NodeId x);
  NodeId concat(std::span<const NodeId> parts);
  NodeId concat(std::initializer_list<NodeId> parts);
  // Inverted dropout: train mode zeroes entries with probability rate and
  // scales survivors by 1/(1-rate); eval mode and rate 0 are the identity.
  NodeId dropout(NodeId x, double rate, bool train, Rng& rng);
  // Binary cross-entropy of a scalar probability against label y in {0,1},
  // with p clamped to [1e-7, 1-1e-7]. The gradient is exactly that of the
  // clamped function (zero where the clamp binds).
  NodeId bce(NodeId p, double label);
  NodeId sum_squares(NodeId x);  // -> scalar
  NodeId scale(NodeId x, double s);
  NodeId mean(std::span<const NodeId> scalars);

  std::span<const double> values(NodeId id) const;
  double scalar(NodeId id) const;
  size_t numel(NodeId id) const;

  // Accumulates d(root)/d(param) into each bound tensor's grad buffer.
  // Call at most once per built graph.
  void backward(NodeId root);

  void clear();
  size_t size() const { return used_; }

  static constexpr double kBceClamp = 1e-7;

 private:
  enum class Op : uint8_t {
    kConst,
    kParam,
    kMatVec,
    kAdd,
    kSub,
    kMul,
    kOneMinus,
    kSigmoid,
    kTanh,
    kRelu,
    kConcat,
    kDropout,
    kBce,
    kSumSquares,
    kScale,
    kMean,
  };

  struct Node {
    Op op;
    NodeId a = 0;
    NodeId b = 0;
    uint32_t extra_begin = 0;
    uint32_t extra_count = 0;
    uint32_t rows = 0;
    uint32_t cols = 0;  // 0 = vector of length rows
    double aux = 0.0;
    Tensor* bound = nullptr;
    std::vector<double> values;
    std::vector<double> grad;
    std::vector<double> mask;

    size_t numel() const { return rows * (cols ? cols : 1); }
  };

  NodeId acquire(Op op, uint32_t rows, uint32_t cols);
  Node& node(NodeId id) { return nodes_[id]; }
  const Node& node(NodeId id) const { return nodes_[id]; }
  void require_vector(NodeId id, const char* who) const;
  void require_same_size(NodeId a, NodeId b, const char* who) const;
  void backward_one(Node& n);

  std::vector<Node> nodes_;
  size_t used_ = 0;
  std::vector<NodeId> extra_args_;
  std::unordered_map<const Tensor*, NodeId> param_cache_;
};

}  // namespace sarc

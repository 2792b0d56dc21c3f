#pragma once

#include <span>
#include <vector>

#include "graph.hpp"
#include "tensor.hpp"

namespace sarc {
class Rng;

// Gated recurrent unit parameters for one direction.
// Convention used throughout:
//   z = sigmoid(W_z x + U_z h + b_z)
//   r = sigmoid(W_r x + U_r h + b_r)
//   c = tanh(W_h x + U_h (r . h) + b_h)
//   h' = (1 - z) . h + z . c
struct GruParams {
  Tensor w_z, w_r, w_h;  // H x D
  Tensor u_z, u_r, u_h;  // H x H
  Tensor b_z, b_r, b_h;  // H

  size_t input_dim() const { return w_z.cols(); }
  size_t hidden_dim() const { return w_z.rows(); }

  static GruParams zeros(size_t input, size_t hidden);
  static GruParams xavier(size_t input, size_t hidden, Rng& rng);
  void check_consistent() const;
};

struct LinearParams {
  Tensor w;  // out x in
  Tensor b;  // out

  size_t input_dim() const { return w.cols(); }
  size_t output_dim() const { return w.rows(); }

  static LinearParams zeros(size_t input, size_t output);
  static LinearParams xavier(size_t input, size_t output, Rng& rng);
};

double sigmoid(double x);
Tensor sigmoid(const Tensor& x);
double bce_loss(double p, int label);

// Plain (non-graph) forward math. The graph builders below must agree with
// these exactly; tests pin the two paths together.
std::vector<double> gru_cell(std::span<const double> x,
                             std::span<const double> h_prev,
                             const GruParams& p);
std::vector<double> bigru_encode(std::span<const std::span<const double>> seq,
                                 const GruParams& fwd, const GruParams& bwd);
std::vector<double> linear(std::span<const double> x, const LinearParams& p);
Tensor dropout(const Tensor& x, double rate, bool train, Rng& rng);

// Graph-side builders. Parameter tensors are bound with g.param(), so
// gradients flow back into the GruParams / LinearParams buffers.
Graph::NodeId gru_cell_node(Graph& g, Graph::NodeId x, Graph::NodeId h_prev,
                            GruParams& p);
Graph::NodeId bigru_encode_node(Graph& g,
                                std::span<const Graph::NodeId> seq,
                                GruParams& fwd, GruParams& bwd);
Graph::NodeId linear_node(Graph& g, Graph::NodeId x, LinearParams& p);

}  // namespace sarc

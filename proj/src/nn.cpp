#include "nn.hpp"

#include <algorithm>
#include <cmath>

#include "errors.hpp"
#include "rng.hpp"

namespace sarc {

GruParams GruParams::zeros(size_t input, size_t hidden) {
  GruParams p;
  p.w_z = Tensor::zeros_matrix(hidden, input);
  p.w_r = Tensor::zeros_matrix(hidden, input);
  p.w_h = Tensor::zeros_matrix(hidden, input);
  p.u_z = Tensor::zeros_matrix(hidden, hidden);
  p.u_r = Tensor::zeros_matrix(hidden, hidden);
  p.u_h = Tensor::zeros_matrix(hidden, hidden);
  p.b_z = Tensor::zeros_vector(hidden);
  p.b_r = Tensor::zeros_vector(hidden);
  p.b_h = Tensor::zeros_vector(hidden);
  return p;
}

GruParams GruParams::xavier(size_t input, size_t hidden, Rng& rng) {
  GruParams p = zeros(input, hidden);
  p.w_z = Tensor::xavier_matrix(hidden, input, rng);
  p.w_r = Tensor::xavier_matrix(hidden, input, rng);
  p.w_h = Tensor::xavier_matrix(hidden, input, rng);
  p.u_z = Tensor::xavier_matrix(hidden, hidden, rng);
  p.u_r = Tensor::xavier_matrix(hidden, hidden, rng);
  p.u_h = Tensor::xavier_matrix(hidden, hidden, rng);
  return p;
}

void GruParams::check_consistent() const {
  size_t h = hidden_dim();
  size_t d = input_dim();
  bool ok = w_r.rows() == h && w_r.cols() == d && w_h.rows() == h &&
            w_h.cols() == d && u_z.rows() == h && u_z.cols() == h &&
            u_r.rows() == h && u_r.cols() == h && u_h.rows() == h &&
            u_h.cols() == h && b_z.numel() == h && b_r.numel() == h &&
            b_h.numel() == h;
  if (!ok) {
    raise(ErrorCode::kDimension, "GruParams shapes inconsistent for (D=", d,
          ", H=", h, ")");
  }
}

LinearParams LinearParams::zeros(size_t input, size_t output) {
  LinearParams p;
  p.w = Tensor::zeros_matrix(output, input);
  p.b = Tensor::zeros_vector(output);
  return p;
}

LinearParams LinearParams::xavier(size_t input, size_t output, Rng& rng) {
  LinearParams p = zeros(input, output);
  p.w = Tensor::xavier_matrix(output, input, rng);
  return p;
}

double sigmoid(double x) {
  if (x >= 0.0) {
    return 1.0 / (1.0 + std::exp(-x));
  }
  double e = std::exp(x);
  return e / (1.0 + e);
}

Tensor sigmoid(const Tensor& x) {
  Tensor out = x;
  out.grad.clear();
  for (double& v : out.values) v = sigmoid(v);
  return out;
}

double bce_loss(double p, int label) {
  double pc = std::clamp(p, Graph::kBceClamp, 1.0 - Graph::kBceClamp);
  double y = static_cast<double>(label);
  return -(y * std::log(pc) + (1.0 - y) * std::log(1.0 - pc));
}

namespace {

void check_gru_shapes(size_t x_len, size_t h_len, const GruParams& p) {
  if (x_len != p.input_dim() || h_len != p.hidden_dim()) {
    raise(ErrorCode::kDimension, "gru_cell: input length ", x_len,
          " / hidden length ", h_len, " do not match params (D=",
          p.input_dim(), ", H=", p.hidden_dim(), ")");
  }
}

}  // namespace

std::vector<double> gru_cell(std::span<const double> x,
                             std::span<const double> h_prev,
                             const GruParams& p) {
  check_gru_shapes(x.size(), h_prev.size(), p);
  size_t h_dim = p.hidden_dim();
  size_t d = p.input_dim();
  std::vector<double> h(h_dim);
  std::vector<double> z(h_dim), r(h_dim);
  for (size_t i = 0; i < h_dim; ++i) {
    double az = p.b_z.at(i);
    double ar = p.b_r.at(i);
    for (size_t j = 0; j < d; ++j) {
      az += p.w_z.at(i, j) * x[j];
      ar += p.w_r.at(i, j) * x[j];
    }
    for (size_t j = 0; j < h_dim; ++j) {
      az += p.u_z.at(i, j) * h_prev[j];
      ar += p.u_r.at(i, j) * h_prev[j];
    }
    z[i] = sigmoid(az);
    r[i] = sigmoid(ar);
  }
  for (size_t i = 0; i < h_dim; ++i) {
    double ac = p.b_h.at(i);
    for (size_t j = 0; j < d; ++j) {
      ac += p.w_h.at(i, j) * x[j];
    }
    for (size_t j = 0; j < h_dim; ++j) {
      ac += p.u_h.at(i, j) * (r[j] * h_prev[j]);
    }
    double c = std::tanh(ac);
    h[i] = (1.0 - z[i]) * h_prev[i] + z[i] * c;
  }
  return h;
}

std::vector<double> bigru_encode(std::span<const std::span<const double>> seq,
                                 const GruParams& fwd, const GruParams& bwd) {
  if (seq.empty()) {
    raise(ErrorCode::kEmptyInput, "bigru_encode: empty sequence");
  }
  std::vector<double> hf(fwd.hidden_dim(), 0.0);
  for (const auto& x : seq) {
    hf = gru_cell(x, hf, fwd);
  }
  std::vector<double> hb(bwd.hidden_dim(), 0.0);
  for (size_t t = seq.size(); t-- > 0;) {
    hb = gru_cell(seq[t], hb, bwd);
  }
  hf.insert(hf.end(), hb.begin(), hb.end());
  return hf;
}

std::vector<double> linear(std::span<const double> x, const LinearParams& p) {
  if (x.size() != p.input_dim()) {
    raise(ErrorCode::kDimension, "linear: input length ", x.size(),
          " does not match weight columns ", p.input_dim());
  }
  std::vector<double> out(p.output_dim());
  for (size_t i = 0; i < p.output_dim(); ++i) {
    double acc = p.b.at(i);
    for (size_t j = 0; j < p.input_dim(); ++j) {
      acc += p.w.at(i, j) * x[j];
    }
    out[i] = acc;
  }
  return out;
}

Tensor dropout(const Tensor& x, double rate, bool train, Rng& rng) {
  if (rate < 0.0 || rate >= 1.0) {
    raise(ErrorCode::kConfig, "dropout rate must be in [0, 1), got ", rate);
  }
  Tensor out = x;
  out.grad.clear();
  if (!train || rate == 0.0) {
    return out;
  }
  double keep_scale = 1.0 / (1.0 - rate);
  for (double& v : out.values) {
    v = rng.uniform() < rate ? 0.0 : v * keep_scale;
  }
  return out;
}

Graph::NodeId gru_cell_node(Graph& g, Graph::NodeId x, Graph::NodeId h_prev,
                            GruParams& p) {
  check_gru_shapes(g.numel(x), g.numel(h_prev), p);
  auto gate = [&](Tensor& w, Tensor& u, Tensor& b, Graph::NodeId h_in) {
    return g.add(g.add(g.matvec(g.param(w), x), g.matvec(g.param(u), h_in)),
                 g.param(b));
  };
  Graph::NodeId z = g.sigmoid(gate(p.w_z, p.u_z, p.b_z, h_prev));
  Graph::NodeId r = g.sigmoid(gate(p.w_r, p.u_r, p.b_r, h_prev));
  Graph::NodeId rh = g.mul(r, h_prev);
  Graph::NodeId c = g.tanh(gate(p.w_h, p.u_h, p.b_h, rh));
  return g.add(g.mul(g.one_minus(z), h_prev), g.mul(z, c));
}

Graph::NodeId bigru_encode_node(Graph& g,
                                std::span<const Graph::NodeId> seq,
                                GruParams& fwd, GruParams& bwd) {
  if (seq.empty()) {
    raise(ErrorCode::kEmptyInput, "bigru_encode: empty sequence");
  }
  std::vector<double> zero(fwd.hidden_dim(), 0.0);
  Graph::NodeId hf = g.constant(zero);
  for (Graph::NodeId x : seq) {
    hf = gru_cell_node(g, x, hf, fwd);
  }
  zero.assign(bwd.hidden_dim(), 0.0);
  Graph::NodeId hb = g.constant(zero);
  for (size_t t = seq.size(); t-- > 0;) {
    hb = gru_cell_node(g, seq[t], hb, bwd);
  }
  return g.concat({hf, hb});
}

Graph::NodeId linear_node(Graph& g, Graph::NodeId x, LinearParams& p) {
  return g.add(g.matvec(g.param(p.w), x), g.param(p.b));
}

}  // namespace sarc

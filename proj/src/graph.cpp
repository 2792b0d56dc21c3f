#include "graph.hpp"

#include <algorithm>
#include <cmath>

#include "errors.hpp"
#include "rng.hpp"

namespace sarc {

namespace {

double stable_sigmoid(double x) {
  if (x >= 0.0) {
    return 1.0 / (1.0 + std::exp(-x));
  }
  double e = std::exp(x);
  return e / (1.0 + e);
}

}  // namespace

Graph::NodeId Graph::acquire(Op op, uint32_t rows, uint32_t cols) {
  if (used_ == nodes_.size()) {
    nodes_.emplace_back();
  }
  Node& n = nodes_[used_];
  n.op = op;
  n.a = 0;
  n.b = 0;
  n.extra_begin = 0;
  n.extra_count = 0;
  n.rows = rows;
  n.cols = cols;
  n.aux = 0.0;
  n.bound = nullptr;
  n.values.resize(n.numel());
  n.grad.clear();
  n.mask.clear();
  return static_cast<NodeId>(used_++);
}

void Graph::require_vector(NodeId id, const char* who) const {
  if (node(id).cols != 0) {
    raise(ErrorCode::kDimension, who, ": expected a vector operand");
  }
}

void Graph::require_same_size(NodeId a, NodeId b, const char* who) const {
  if (node(a).numel() != node(b).numel()) {
    raise(ErrorCode::kDimension, who, ": size mismatch (", node(a).numel(),
          " vs ", node(b).numel(), ")");
  }
}

Graph::NodeId Graph::constant(std::span<const double> v) {
  NodeId id = acquire(Op::kConst, static_cast<uint32_t>(v.size()), 0);
  std::copy(v.begin(), v.end(), node(id).values.begin());
  return id;
}

Graph::NodeId Graph::constant_scalar(double v) {
  NodeId id = acquire(Op::kConst, 1, 0);
  node(id).values[0] = v;
  return id;
}

Graph::NodeId Graph::param(Tensor& t) {
  auto it = param_cache_.find(&t);
  if (it != param_cache_.end()) {
    return it->second;
  }
  uint32_t rows = static_cast<uint32_t>(t.rows());
  uint32_t cols = t.is_matrix() ? static_cast<uint32_t>(t.cols()) : 0;
  NodeId id = acquire(Op::kParam, rows, cols);
  Node& n = node(id);
  n.bound = &t;
  std::copy(t.values.begin(), t.values.end(), n.values.begin());
  param_cache_.emplace(&t, id);
  return id;
}

Graph::NodeId Graph::matvec(NodeId w, NodeId x) {
  const Node& wn = node(w);
  require_vector(x, "matvec");
  if (wn.cols == 0) {
    raise(ErrorCode::kDimension, "matvec: weight operand is not a matrix");
  }
  if (wn.cols != node(x).rows) {
    raise(ErrorCode::kDimension, "matvec: ", wn.rows, "x", wn.cols,
          " matrix applied to length-", node(x).rows, " vector");
  }
  NodeId id = acquire(Op::kMatVec, wn.rows, 0);
  Node& out = node(id);
  out.a = w;
  out.b = x;
  const Node& wm = node(w);
  const Node& xv = node(x);
  for (uint32_t i = 0; i < wm.rows; ++i) {
    double acc = 0.0;
    const double* row = wm.values.data() + static_cast<size_t>(i) * wm.cols;
    for (uint32_t j = 0; j < wm.cols; ++j) {
      acc += row[j] * xv.values[j];
    }
    out.values[i] = acc;
  }
  return id;
}

Graph::NodeId Graph::add(NodeId a, NodeId b) {
  require_same_size(a, b, "add");
  NodeId id = acquire(Op::kAdd, node(a).rows, node(a).cols);
  Node& out = node(id);
  out.a = a;
  out.b = b;
  const Node& an = node(a);
  const Node& bn = node(b);
  for (size_t i = 0; i < out.values.size(); ++i) {
    out.values[i] = an.values[i] + bn.values[i];
  }
  return id;
}

Graph::NodeId Graph::sub(NodeId a, NodeId b) {
  require_same_size(a, b, "sub");
  NodeId id = acquire(Op::kSub, node(a).rows, node(a).cols);
  Node& out = node(id);
  out.a = a;
  out.b = b;
  const Node& an = node(a);
  const Node& bn = node(b);
  for (size_t i = 0; i < out.values.size(); ++i) {
    out.values[i] = an.values[i] - bn.values[i];
  }
  return id;
}

Graph::NodeId Graph::mul(NodeId a, NodeId b) {
  require_same_size(a, b, "mul");
  NodeId id = acquire(Op::kMul, node(a).rows, node(a).cols);
  Node& out = node(id);
  out.a = a;
  out.b = b;
  const Node& an = node(a);
  const Node& bn = node(b);
  for (size_t i = 0; i < out.values.size(); ++i) {
    out.values[i] = an.values[i] * bn.values[i];
  }
  return id;
}

Graph::NodeId Graph::one_minus(NodeId x) {
  NodeId id = acquire(Op::kOneMinus, node(x).rows, node(x).cols);
  Node& out = node(id);
  out.a = x;
  const Node& xn = node(x);
  for (size_t i = 0; i < out.values.size(); ++i) {
    out.values[i] = 1.0 - xn.values[i];
  }
  return id;
}

Graph::NodeId Graph::sigmoid(NodeId x) {
  NodeId id = acquire(Op::kSigmoid, node(x).rows, node(x).cols);
  Node& out = node(id);
  out.a = x;
  const Node& xn = node(x);
  for (size_t i = 0; i < out.values.size(); ++i) {
    out.values[i] = stable_sigmoid(xn.values[i]);
  }
  return id;
}

Graph::NodeId Graph::tanh(NodeId x) {
  NodeId id = acquire(Op::kTanh, node(x).rows, node(x).cols);
  Node& out = node(id);
  out.a = x;
  const Node& xn = node(x);
  for (size_t i = 0; i < out.values.size(); ++i) {
    out.values[i] = std::tanh(xn.values[i]);
  }
  return id;
}

Graph::NodeId Graph::relu(NodeId x) {
  NodeId id = acquire(Op::kRelu, node(x).rows, node(x).cols);
  Node& out = node(id);
  out.a = x;
  const Node& xn = node(x);
  for (size_t i = 0; i < out.values.size(); ++i) {
    out.values[i] = xn.values[i] > 0.0 ? xn.values[i] : 0.0;
  }
  return id;
}

Graph::NodeId Graph::concat(std::span<const NodeId> parts) {
  if (parts.empty()) {
    raise(ErrorCode::kDimension, "concat: no operands");
  }
  size_t total = 0;
  for (NodeId p : parts) {
    require_vector(p, "concat");
    total += node(p).rows;
  }
  uint32_t extra_begin = static_cast<uint32_t>(extra_args_.size());
  extra_args_.insert(extra_args_.end(), parts.begin(), parts.end());
  NodeId id = acquire(Op::kConcat, static_cast<uint32_t>(total), 0);
  Node& out = node(id);
  out.extra_begin = extra_begin;
  out.extra_count = static_cast<uint32_t>(parts.size());
  size_t off = 0;
  for (NodeId p : parts) {
    const Node& pn = node(p);
    std::copy(pn.values.begin(), pn.values.end(), out.values.begin() + off);
    off += pn.values.size();
  }
  return id;
}

Graph::NodeId Graph::concat(std::initializer_list<NodeId> parts) {
  std::vector<NodeId> v(parts);
  return concat(std::span<const NodeId>(v));
}

Graph::NodeId Graph::dropout(NodeId x, double rate, bool train, Rng& rng) {
  if (rate < 0.0 || rate >= 1.0) {
    raise(ErrorCode::kConfig, "dropout rate must be in [0, 1), got ", rate);
  }
  if (!train || rate == 0.0) {
    return x;
  }
  NodeId id = acquire(Op::kDropout, node(x).rows, node(x).cols);
  Node& out = node(id);
  out.a = x;
  const Node& xn = node(x);
  double keep_scale = 1.0 / (1.0 - rate);
  out.mask.resize(out.values.size());
  for (size_t i = 0; i < out.values.size(); ++i) {
    out.mask[i] = rng.uniform() < rate ? 0.0 : keep_scale;
    out.values[i] = xn.values[i] * out.mask[i];
  }
  return id;
}

Graph::NodeId Graph::bce(NodeId p, double label) {
  if (node(p).numel() != 1) {
    raise(ErrorCode::kDimension, "bce: probability operand must be a scalar");
  }
  NodeId id = acquire(Op::kBce, 1, 0);
  Node& out = node(id);
  out.a = p;
  out.aux = label;
  double pv = std::clamp(node(p).values[0], kBceClamp, 1.0 - kBceClamp);
  out.values[0] = -(label * std::log(pv) + (1.0 - label) * std::log(1.0 - pv));
  return id;
}

Graph::NodeId Graph::sum_squares(NodeId x) {
  NodeId id = acquire(Op::kSumSquares, 1, 0);
  Node& out = node(id);
  out.a = x;
  const Node& xn = node(x);
  double acc = 0.0;
  for (double v : xn.values) acc += v * v;
  out.values[0] = acc;
  return id;
}

Graph::NodeId Graph::scale(NodeId x, double s) {
  NodeId id = acquire(Op::kScale, node(x).rows, node(x).cols);
  Node& out = node(id);
  out.a = x;
  out.aux = s;
  const Node& xn = node(x);
  for (size_t i = 0; i < out.values.size(); ++i) {
    out.values[i] = xn.values[i] * s;
  }
  return id;
}

Graph::NodeId Graph::mean(std::span<const NodeId> scalars) {
  if (scalars.empty()) {
    raise(ErrorCode::kEmptyInput, "mean: no operands");
  }
  for (NodeId s : scalars) {
    if (node(s).numel() != 1) {
      raise(ErrorCode::kDimension, "mean: operands must be scalars");
    }
  }
  uint32_t extra_begin = static_cast<uint32_t>(extra_args_.size());
  extra_args_.insert(extra_args_.end(), scalars.begin(), scalars.end());
  NodeId id = acquire(Op::kMean, 1, 0);
  Node& out = node(id);
  out.extra_begin = extra_begin;
  out.extra_count = static_cast<uint32_t>(scalars.size());
  double acc = 0.0;
  for (NodeId s : scalars) acc += node(s).values[0];
  out.values[0] = acc / static_cast<double>(scalars.size());
  return id;
}

std::span<const double> Graph::values(NodeId id) const {
  return node(id).values;
}

double Graph::scalar(NodeId id) const {
  if (node(id).numel() != 1) {
    raise(ErrorCode::kDimension, "scalar: node is not a scalar");
  }
  return node(id).values[0];
}

size_t Graph::numel(NodeId id) const { return node(id).numel(); }

void Graph::backward_one(Node& n) {
  const std::vector<double>& g = n.grad;
  switch (n.op) {
    case Op::kConst:
    case Op::kParam:
      break;
    case Op::kMatVec: {
      Node& w = node(n.a);
      Node& x = node(n.b);
      for (uint32_t i = 0; i < w.rows; ++i) {
        double gi = g[i];
        if (gi == 0.0) continue;
        double* wrow_g = w.grad.data() + static_cast<size_t>(i) * w.cols;
        const double* wrow = w.values.data() + static_cast<size_t>(i) * w.cols;
        for (uint32_t j = 0; j < w.cols; ++j) {
          wrow_g[j] += gi * x.values[j];
          x.grad[j] += gi * wrow[j];
        }
      }
      break;
    }
    case Op::kAdd: {
      Node& a = node(n.a);
      Node& b = node(n.b);
      for (size_t i = 0; i < g.size(); ++i) {
        a.grad[i] += g[i];
        b.grad[i] += g[i];
      }
      break;
    }
    case Op::kSub: {
      Node& a = node(n.a);
      Node& b = node(n.b);
      for (size_t i = 0; i < g.size(); ++i) {
        a.grad[i] += g[i];
        b.grad[i] -= g[i];
      }
      break;
    }
    case Op::kMul: {
      Node& a = node(n.a);
      Node& b = node(n.b);
      for (size_t i = 0; i < g.size(); ++i) {
        a.grad[i] += g[i] * b.values[i];
        b.grad[i] += g[i] * a.values[i];
      }
      break;
    }
    case Op::kOneMinus: {
      Node& a = node(n.a);
      for (size_t i = 0; i < g.size(); ++i) a.grad[i] -= g[i];
      break;
    }
    case Op::kSigmoid: {
      Node& a = node(n.a);
      for (size_t i = 0; i < g.size(); ++i) {
        double y = n.values[i];
        a.grad[i] += g[i] * y * (1.0 - y);
      }
      break;
    }
    case Op::kTanh: {
      Node& a = node(n.a);
      for (size_t i = 0; i < g.size(); ++i) {
        double y = n.values[i];
        a.grad[i] += g[i] * (1.0 - y * y);
      }
      break;
    }
    case Op::kRelu: {
      Node& a = node(n.a);
      for (size_t i = 0; i < g.size(); ++i) {
        if (a.values[i] > 0.0) a.grad[i] += g[i];
      }
      break;
    }
    case Op::kConcat: {
      size_t off = 0;
      for (uint32_t k = 0; k < n.extra_count; ++k) {
        Node& part = node(extra_args_[n.extra_begin + k]);
        for (size_t i = 0; i < part.values.size(); ++i) {
          part.grad[i] += g[off + i];
        }
        off += part.values.size();
      }
      break;
    }
    case Op::kDropout: {
      Node& a = node(n.a);
      for (size_t i = 0; i < g.size(); ++i) {
        a.grad[i] += g[i] * n.mask[i];
      }
      break;
    }
    case Op::kBce: {
      Node& a = node(n.a);
      double p = a.values[0];
      if (p > kBceClamp && p < 1.0 - kBceClamp) {
        double y = n.aux;
        a.grad[0] += g[0] * (-(y / p) + (1.0 - y) / (1.0 - p));
      }
      break;
    }
    case Op::kSumSquares: {
      Node& a = node(n.a);
      for (size_t i = 0; i < a.values.size(); ++i) {
        a.grad[i] += 2.0 * a.values[i] * g[0];
      }
      break;
    }
    case Op::kScale: {
      Node& a = node(n.a);
      for (size_t i = 0; i < g.size(); ++i) a.grad[i] += g[i] * n.aux;
      break;
    }
    case Op::kMean: {
      double share = g[0] / static_cast<double>(n.extra_count);
      for (uint32_t k = 0; k < n.extra_count; ++k) {
        node(extra_args_[n.extra_begin + k]).grad[0] += share;
      }
      break;
    }
  }
}

void Graph::backward(NodeId root) {
  if (node(root).numel() != 1) {
    raise(ErrorCode::kDimension, "backward: root must be a scalar");
  }
  for (size_t i = 0; i < used_; ++i) {
    nodes_[i].grad.assign(nodes_[i].values.size(), 0.0);
  }
  node(root).grad[0] = 1.0;
  for (size_t i = used_; i-- > 0;) {
    backward_one(nodes_[i]);
  }
  for (size_t i = 0; i < used_; ++i) {
    Node& n = nodes_[i];
    if (n.op == Op::kParam && n.bound != nullptr) {
      n.bound->ensure_grad();
      for (size_t j = 0; j < n.grad.size(); ++j) {
        n.bound->grad[j] += n.grad[j];
      }
    }
  }
}

void Graph::clear() {
  used_ = 0;
  extra_args_.clear();
  param_cache_.clear();
}

}  // namespace sarc

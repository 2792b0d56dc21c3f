#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "adam.hpp"
#include "errors.hpp"
#include "gradcheck.hpp"
#include "graph.hpp"
#include "nn.hpp"
#include "rng.hpp"
#include "tensor.hpp"

using namespace sarc;

namespace {

std::span<const double> as_span(const std::vector<double>& v) { return v; }

// Independent scalar-by-scalar recomputation of the four GRU equations,
// deliberately sharing no code with the implementation under test.
std::vector<double> oracle_gru_step(const std::vector<double>& x,
                                    const std::vector<double>& h,
                                    const GruParams& p) {
  auto sig = [](double a) { return 1.0 / (1.0 + std::exp(-a)); };
  size_t hd = p.hidden_dim();
  size_t d = p.input_dim();
  std::vector<double> out(hd);
  for (size_t i = 0; i < hd; ++i) {
    double az = p.b_z.values[i];
    double ar = p.b_r.values[i];
    for (size_t j = 0; j < d; ++j) {
      az += p.w_z.values[i * d + j] * x[j];
      ar += p.w_r.values[i * d + j] * x[j];
    }
    for (size_t j = 0; j < hd; ++j) {
      az += p.u_z.values[i * hd + j] * h[j];
      ar += p.u_r.values[i * hd + j] * h[j];
    }
    double z = sig(az);
    double ac = p.b_h.values[i];
    for (size_t j = 0; j < d; ++j) {
      ac += p.w_h.values[i * d + j] * x[j];
    }
    for (size_t j = 0; j < hd; ++j) {
      double rj = p.b_r.values[j];
      for (size_t k = 0; k < d; ++k) rj += p.w_r.values[j * d + k] * x[k];
      for (size_t k = 0; k < hd; ++k) rj += p.u_r.values[j * hd + k] * h[k];
      ac += p.u_h.values[i * hd + j] * (sig(rj) * h[j]);
    }
    double c = std::tanh(ac);
    out[i] = (1.0 - z) * h[i] + z * c;
  }
  return out;
}

std::vector<double> random_vec(size_t n, Rng& rng, double scale = 1.0) {
  std::vector<double> v(n);
  for (double& x : v) x = rng.uniform(-scale, scale);
  return v;
}

}  // namespace

TEST_CASE("sigmoid analytic values") {
  CHECK(sigmoid(0.0) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(sigmoid(std::log(3.0)) == doctest::Approx(0.75).epsilon(1e-12));
  CHECK(sigmoid(-std::log(3.0)) == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("sigmoid is finite up to |x|=700 and strict where float64 can be") {
  for (double x : {-700.0, -100.0, -1.0, 0.0, 1.0, 100.0, 700.0}) {
    double y = sigmoid(x);
    CHECK(std::isfinite(y));
    CHECK(y >= 0.0);
    CHECK(y <= 1.0);
  }
  // Above x ~ 36.7 the result rounds to exactly 1.0 in double precision;
  // strict (0,1) membership holds below that.
  for (double x : {-36.0, -8.0, 0.0, 8.0, 36.0}) {
    double y = sigmoid(x);
    CHECK(y > 0.0);
    CHECK(y < 1.0);
  }
  // tanh saturates to exactly +-1.0 beyond |x| ~ 18.7.
  for (double x : {-18.0, -4.0, 0.0, 4.0, 18.0}) {
    CHECK(std::tanh(x) > -1.0);
    CHECK(std::tanh(x) < 1.0);
  }
  Tensor t = Tensor::from_vector({-700.0, 0.0, 700.0});
  Tensor s = sigmoid(t);
  CHECK(s.values[1] == doctest::Approx(0.5));
  CHECK(s.values[0] > 0.0);
}

TEST_CASE("gru_cell with all-zero params halves the previous state") {
  GruParams p = GruParams::zeros(3, 4);
  Rng rng(7);
  std::vector<double> x = random_vec(3, rng);
  std::vector<double> v = random_vec(4, rng);
  auto h = gru_cell(x, v, p);
  for (size_t i = 0; i < 4; ++i) {
    CHECK(h[i] == doctest::Approx(0.5 * v[i]).epsilon(1e-12));
  }

  std::vector<double> zero(4, 0.0);
  auto h0 = gru_cell(x, zero, p);
  for (double hv : h0) CHECK(hv == 0.0);
}

TEST_CASE("gru_cell matches an independent scalar recomputation") {
  Rng rng(42);
  GruParams p = GruParams::xavier(2, 2, rng);
  for (auto* b : {&p.b_z, &p.b_r, &p.b_h}) {
    *b = Tensor::uniform_vector(2, 0.5, rng);
  }
  std::vector<double> x = random_vec(2, rng);
  std::vector<double> h = random_vec(2, rng, 0.9);
  auto got = gru_cell(x, h, p);
  auto want = oracle_gru_step(x, h, p);
  REQUIRE(got.size() == want.size());
  for (size_t i = 0; i < got.size(); ++i) {
    CHECK(got[i] == doctest::Approx(want[i]).epsilon(1e-12));
  }
}

TEST_CASE("gru_cell rejects mismatched shapes") {
  GruParams p = GruParams::zeros(3, 4);
  std::vector<double> x(2, 0.0), h(4, 0.0);
  CHECK_THROWS_AS(gru_cell(x, h, p), Error);
  std::vector<double> x3(3, 0.0), h5(5, 0.0);
  CHECK_THROWS_AS(gru_cell(x3, h5, p), Error);
}

TEST_CASE("gru hidden state from h0=0 stays entrywise in (-1,1)") {
  Rng rng(99);
  GruParams p = GruParams::xavier(4, 6, rng);
  std::vector<double> h(6, 0.0);
  for (int t = 0; t < 200; ++t) {
    std::vector<double> x = random_vec(4, rng, 5.0);
    h = gru_cell(x, h, p);
    for (double hv : h) {
      CHECK(hv > -1.0);
      CHECK(hv < 1.0);
    }
  }
}

TEST_CASE("bigru_encode zero params give a zero vector") {
  GruParams fwd = GruParams::zeros(3, 4);
  GruParams bwd = GruParams::zeros(3, 4);
  Rng rng(3);
  std::vector<std::vector<double>> seq;
  for (int t = 0; t < 5; ++t) seq.push_back(random_vec(3, rng));
  std::vector<std::span<const double>> view(seq.begin(), seq.end());
  auto enc = bigru_encode(view, fwd, bwd);
  REQUIRE(enc.size() == 8);
  for (double v : enc) CHECK(v == 0.0);
}

TEST_CASE("bigru_encode on a single token is one cell step per direction") {
  Rng rng(11);
  GruParams fwd = GruParams::xavier(3, 4, rng);
  GruParams bwd = GruParams::xavier(3, 4, rng);
  std::vector<double> x = random_vec(3, rng);
  std::vector<std::span<const double>> seq{x};
  auto enc = bigru_encode(seq, fwd, bwd);
  std::vector<double> zero(4, 0.0);
  auto hf = gru_cell(x, zero, fwd);
  auto hb = gru_cell(x, zero, bwd);
  for (size_t i = 0; i < 4; ++i) {
    CHECK(enc[i] == doctest::Approx(hf[i]).epsilon(1e-12));
    CHECK(enc[4 + i] == doctest::Approx(hb[i]).epsilon(1e-12));
  }
}

TEST_CASE("reversing the sequence and swapping directions swaps the halves") {
  Rng rng(17);
  GruParams a = GruParams::xavier(3, 4, rng);
  GruParams b = GruParams::xavier(3, 4, rng);
  std::vector<std::vector<double>> seq;
  for (int t = 0; t < 6; ++t) seq.push_back(random_vec(3, rng));
  std::vector<std::span<const double>> fw(seq.begin(), seq.end());
  std::vector<std::span<const double>> rev(seq.rbegin(), seq.rend());
  auto enc = bigru_encode(fw, a, b);
  auto enc_rev = bigru_encode(rev, b, a);
  for (size_t i = 0; i < 4; ++i) {
    CHECK(enc_rev[i] == doctest::Approx(enc[4 + i]).epsilon(1e-12));
    CHECK(enc_rev[4 + i] == doctest::Approx(enc[i]).epsilon(1e-12));
  }
}

TEST_CASE("bigru_encode rejects an empty sequence") {
  GruParams p = GruParams::zeros(3, 4);
  std::vector<std::span<const double>> empty;
  CHECK_THROWS_AS(bigru_encode(empty, p, p), Error);
}

TEST_CASE("linear golden cases") {
  LinearParams ident = LinearParams::zeros(2, 2);
  ident.w.at(0, 0) = 1.0;
  ident.w.at(1, 1) = 1.0;
  std::vector<double> x{0.3, -0.7};
  auto y = linear(x, ident);
  CHECK(y[0] == doctest::Approx(0.3));
  CHECK(y[1] == doctest::Approx(-0.7));

  LinearParams p = LinearParams::zeros(2, 2);
  p.w.values = {1.0, 2.0, 3.0, 4.0};
  p.b.values = {1.0, 1.0};
  std::vector<double> zero{0.0, 0.0};
  auto yb = linear(zero, p);
  CHECK(yb[0] == doctest::Approx(1.0));
  CHECK(yb[1] == doctest::Approx(1.0));
  std::vector<double> ones{1.0, 1.0};
  auto yc = linear(ones, p);
  CHECK(yc[0] == doctest::Approx(4.0));
  CHECK(yc[1] == doctest::Approx(8.0));

  std::vector<double> bad{1.0, 2.0, 3.0};
  CHECK_THROWS_AS(linear(bad, p), Error);
}

TEST_CASE("bce_loss analytic values and clamping") {
  CHECK(bce_loss(0.5, 1) == doctest::Approx(std::log(2.0)).epsilon(1e-12));
  CHECK(bce_loss(1.0 - 1e-7, 1) == doctest::Approx(1e-7).epsilon(1e-2));
  double clamp_bound = -std::log(1e-7);
  CHECK(bce_loss(1e-7, 1) == doctest::Approx(clamp_bound).epsilon(1e-12));
  // Values beyond the clamp hit the same bound.
  CHECK(bce_loss(1e-12, 1) == doctest::Approx(clamp_bound).epsilon(1e-12));
  CHECK(bce_loss(0.5, 0) == doctest::Approx(std::log(2.0)).epsilon(1e-12));
}

TEST_CASE("dropout identity cases") {
  Tensor x = Tensor::from_vector({1.0, -2.0, 3.0});
  Rng rng(5);
  Tensor train0 = dropout(x, 0.0, true, rng);
  Tensor eval = dropout(x, 0.9, false, rng);
  for (size_t i = 0; i < 3; ++i) {
    CHECK(train0.values[i] == x.values[i]);
    CHECK(eval.values[i] == x.values[i]);
  }
  CHECK_THROWS_AS(dropout(x, 1.0, true, rng), Error);
  CHECK_THROWS_AS(dropout(x, 1.5, true, rng), Error);
}

TEST_CASE("dropout preserves the mean over 100k draws") {
  Tensor x = Tensor::from_vector({2.0});
  Rng rng(123);
  double sum = 0.0;
  const int n = 100000;
  for (int i = 0; i < n; ++i) {
    sum += dropout(x, 0.5, true, rng).values[0];
  }
  double mean = sum / n;
  CHECK(std::fabs(mean - 2.0) / 2.0 < 0.02);
}

TEST_CASE("dropout is deterministic given the seed") {
  Tensor x = Tensor::from_vector({1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0});
  Rng r1(77), r2(77);
  Tensor a = dropout(x, 0.5, true, r1);
  Tensor b = dropout(x, 0.5, true, r2);
  CHECK(a.values == b.values);
}

TEST_CASE("adam_step with zero gradient and fresh state is the identity") {
  Tensor p = Tensor::from_vector({0.5, -1.5, 2.0});
  Tensor before = p;
  AdamState st = AdamState::for_param(p);
  std::vector<double> g(3, 0.0);
  adam_step(p, g, st, AdamHyper{});
  CHECK(p.values == before.values);
  CHECK(st.t == 1);
}

TEST_CASE("first adam step moves by about -lr * sign(grad)") {
  Tensor p = Tensor::from_vector({1.0, 1.0});
  AdamState st = AdamState::for_param(p);
  AdamHyper hy;
  hy.lr = 0.01;
  std::vector<double> g{0.3, -4.5};
  adam_step(p, g, st, hy);
  CHECK(p.values[0] == doctest::Approx(1.0 - 0.01).epsilon(1e-5));
  CHECK(p.values[1] == doctest::Approx(1.0 + 0.01).epsilon(1e-5));
}

TEST_CASE("two adam steps match hand-rolled scalar arithmetic") {
  const double lr = 0.1, b1 = 0.9, b2 = 0.999, eps = 1e-8, g = 0.7;
  // Independent two-step recomputation.
  double m = 0.0, v = 0.0, theta = 1.0;
  for (int t = 1; t <= 2; ++t) {
    m = b1 * m + (1 - b1) * g;
    v = b2 * v + (1 - b2) * g * g;
    double mh = m / (1 - std::pow(b1, t));
    double vh = v / (1 - std::pow(b2, t));
    theta -= lr * mh / (std::sqrt(vh) + eps);
  }

  Tensor p = Tensor::from_vector({1.0});
  AdamState st = AdamState::for_param(p);
  AdamHyper hy{lr, b1, b2, eps};
  std::vector<double> grad{g};
  adam_step(p, grad, st, hy);
  adam_step(p, grad, st, hy);
  CHECK(st.t == 2);
  CHECK(p.values[0] == doctest::Approx(theta).epsilon(1e-14));
}

TEST_CASE("adam_step rejects mismatched sizes") {
  Tensor p = Tensor::from_vector({1.0, 2.0});
  AdamState st = AdamState::for_param(p);
  std::vector<double> g{1.0};
  CHECK_THROWS_AS(adam_step(p, g, st, AdamHyper{}), Error);
}

TEST_CASE("graph forward equals plain forward on a random BiGRU + head") {
  Rng rng(2024);
  GruParams fwd = GruParams::xavier(3, 4, rng);
  GruParams bwd = GruParams::xavier(3, 4, rng);
  LinearParams head = LinearParams::xavier(8, 1, rng);
  std::vector<std::vector<double>> seq;
  for (int t = 0; t < 5; ++t) seq.push_back(random_vec(3, rng));

  std::vector<std::span<const double>> view(seq.begin(), seq.end());
  auto enc = bigru_encode(view, fwd, bwd);
  double plain_p = sigmoid(linear(enc, head)[0]);

  Graph g;
  std::vector<Graph::NodeId> xs;
  for (const auto& x : seq) xs.push_back(g.constant(as_span(x)));
  auto enc_node = bigru_encode_node(g, xs, fwd, bwd);
  auto p_node = g.sigmoid(linear_node(g, enc_node, head));
  CHECK(g.scalar(p_node) == doctest::Approx(plain_p).epsilon(1e-14));
}

TEST_CASE("grad_check: linear + bce on 3 inputs") {
  Rng rng(31);
  LinearParams head = LinearParams::xavier(3, 1, rng);
  std::vector<std::vector<double>> inputs;
  for (int i = 0; i < 3; ++i) inputs.push_back(random_vec(3, rng));
  std::vector<int> labels{1, 0, 1};

  Graph g;
  auto loss = [&](bool with_grad) {
    g.clear();
    std::vector<Graph::NodeId> losses;
    for (size_t i = 0; i < inputs.size(); ++i) {
      auto p = g.sigmoid(linear_node(g, g.constant(as_span(inputs[i])), head));
      losses.push_back(g.bce(p, labels[i]));
    }
    auto total = g.mean(losses);
    if (with_grad) g.backward(total);
    return g.scalar(total);
  };
  std::vector<Tensor*> params{&head.w, &head.b};
  double err = grad_check(loss, params, 1e-5);
  CHECK(err < 1e-6);
}

TEST_CASE("grad_check: full BiGRU encoder with two-layer head") {
  Rng rng(57);
  const size_t d = 8, h = 4;
  GruParams fwd = GruParams::xavier(d, h, rng);
  GruParams bwd = GruParams::xavier(d, h, rng);
  LinearParams l1 = LinearParams::xavier(2 * h, 6, rng);
  LinearParams l2 = LinearParams::xavier(6, 1, rng);
  std::vector<std::vector<double>> seq;
  for (int t = 0; t < 5; ++t) seq.push_back(random_vec(d, rng));

  Graph g;
  auto loss = [&](bool with_grad) {
    g.clear();
    std::vector<Graph::NodeId> xs;
    for (const auto& x : seq) xs.push_back(g.constant(as_span(x)));
    auto enc = bigru_encode_node(g, xs, fwd, bwd);
    auto hid = g.relu(linear_node(g, enc, l1));
    auto p = g.sigmoid(linear_node(g, hid, l2));
    auto l = g.bce(p, 1.0);
    if (with_grad) g.backward(l);
    return g.scalar(l);
  };
  std::vector<Tensor*> params{&fwd.w_z, &fwd.w_r, &fwd.w_h, &fwd.u_z, &fwd.u_r,
                              &fwd.u_h, &fwd.b_z, &fwd.b_r, &fwd.b_h, &bwd.w_z,
                              &bwd.w_r, &bwd.w_h, &bwd.u_z, &bwd.u_r, &bwd.u_h,
                              &bwd.b_z, &bwd.b_r, &bwd.b_h, &l1.w,    &l1.b,
                              &l2.w,    &l2.b};
  double err = grad_check(loss, params, 1e-5);
  CHECK(err < 1e-4);
}

TEST_CASE("grad_check flags gradients that are off by 1%") {
  Rng rng(13);
  LinearParams head = LinearParams::xavier(3, 1, rng);
  std::vector<double> input = random_vec(3, rng);

  Graph g;
  auto loss = [&](bool with_grad) {
    g.clear();
    auto p = g.sigmoid(linear_node(g, g.constant(as_span(input)), head));
    auto l = g.bce(p, 1.0);
    if (with_grad) {
      g.backward(l);
      for (double& v : head.w.grad) v *= 1.01;
      for (double& v : head.b.grad) v *= 1.01;
    }
    return g.scalar(l);
  };
  std::vector<Tensor*> params{&head.w, &head.b};
  double err = grad_check(loss, params, 1e-5);
  // A 1% corruption reports 0.01/1.01 ~ 9.9e-3 under the max-denominator
  // definition: two orders of magnitude above the 1e-4 pass threshold.
  CHECK(err > 9.8e-3);
}

TEST_CASE("graph dropout is deterministic and masks gradients") {
  Tensor x = Tensor::from_vector({1.0, 2.0, 3.0, 4.0, 5.0, 6.0});
  auto run = [&](uint64_t seed) {
    Rng rng(seed);
    Graph g;
    auto xn = g.param(x);
    auto dn = g.dropout(xn, 0.5, true, rng);
    auto s = g.sum_squares(dn);
    x.zero_grad();
    g.backward(s);
    std::vector<double> vals(g.values(dn).begin(), g.values(dn).end());
    return std::make_pair(vals, x.grad);
  };
  auto [v1, g1] = run(9);
  auto [v2, g2] = run(9);
  CHECK(v1 == v2);
  CHECK(g1 == g2);
  // Zeroed entries must not pass gradient.
  for (size_t i = 0; i < v1.size(); ++i) {
    if (v1[i] == 0.0) CHECK(g1[i] == 0.0);
  }
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "ffn/errors.hpp"
#include "ffn/network.hpp"
#include "test_helpers.hpp"

using namespace ffn;
using namespace ffn::testing;

TEST_CASE("activation_apply matches its definition table") {
  CHECK(activation_apply(Activation::relu, 3.5) == 3.5);
  CHECK(activation_apply(Activation::relu, -2.0) == 0.0);
  CHECK(activation_apply(Activation::tanh, 0.0) == 0.0);
  CHECK(activation_apply(Activation::linear, -7.25) == -7.25);
  // Independent high-precision value of 1/(1+e^-1).
  CHECK(activation_apply(Activation::sigmoid, 1.0) ==
        doctest::Approx(0.731058578630005).epsilon(1e-12));
  CHECK(activation_apply(Activation::sigmoid, 0.0) == 0.5);
}

TEST_CASE("single-neuron forward") {
  const Network relu = single_neuron(1.0, 0.0, Activation::relu);
  CHECK(relu.forward(std::vector{-5.0}) == std::vector{0.0});

  const Network sig = single_neuron(1.0, 0.0, Activation::sigmoid);
  CHECK(sig.forward(std::vector{0.0}) == std::vector{0.5});
}

TEST_CASE("2-2-1 fixture matches the hand-computed trace") {
  const Network net = fixture_221();
  // Frozen from a by-hand layer trace of the fixture weights.
  CHECK(net.forward(std::vector{1.0, 2.0})[0] == doctest::Approx(8.5));
  CHECK(net.forward(std::vector{-1.0, 0.5})[0] == doctest::Approx(0.5));
  CHECK(net.forward(std::vector{2.0, -3.0})[0] == doctest::Approx(-9.5));
  CHECK(net.forward(std::vector{0.0, 0.0})[0] == doctest::Approx(-0.5));
}

TEST_CASE("forward agrees with the independent per-neuron oracle") {
  const Network net = fixture_221();
  Rng rng(7);
  for (int i = 0; i < 50; ++i) {
    const std::vector<double> x{rng.uniform(-10, 10), rng.uniform(-10, 10)};
    const auto got = net.forward(x);
    const auto want = oracle_forward(net, x);
    REQUIRE(got.size() == want.size());
    CHECK(got[0] == doctest::Approx(want[0]).epsilon(1e-12));
  }
}

TEST_CASE("forward error paths") {
  const Network net = fixture_221();
  CHECK_THROWS_AS((void)net.forward(std::vector{1.0}), DimensionMismatch);
  CHECK_THROWS_AS((void)net.forward(std::vector{1.0, std::nan("")}),
                  NonFiniteInput);
  CHECK_THROWS_AS(
      (void)net.forward(std::vector{1.0,
                                    std::numeric_limits<double>::infinity()}),
      NonFiniteInput);
}

TEST_CASE("construction rejects inconsistent shapes") {
  Layer bad{2, 2, {1, 2, 3, 4}, {0, 0, 0}, Activation::relu};  // 3 biases
  CHECK_THROWS_AS(Network(2, {bad}), ShapeError);

  Layer a{2, 2, {1, 0, 0, 1}, {0, 0}, Activation::relu};
  Layer mismatched{1, 3, {1, 1, 1}, {0}, Activation::relu};
  CHECK_THROWS_AS(Network(2, {a, mismatched}), ShapeError);
}

TEST_CASE("split at a layer boundary composes to the same result") {
  const Network full = fixture_221();
  Layer hidden{2, 2, {1.0, 2.0, 3.0, -1.0}, {0.0, 1.0}, Activation::relu};
  Layer out{1, 2, {2.0, -1.0}, {0.5}, Activation::linear};
  const Network front(2, {hidden});
  const Network back(2, {out});

  Rng rng(11);
  for (int i = 0; i < 100; ++i) {
    const std::vector<double> x{rng.uniform(-5, 5), rng.uniform(-5, 5)};
    const auto direct = full.forward(x);
    const auto staged = back.forward(front.forward(x));
    CHECK(direct == staged);  // bit-identical: same pipeline, same order
  }
}

TEST_CASE("ReLU layer is positively homogeneous") {
  // Nonnegative weights, zero bias: scaling a nonnegative input by t >= 1
  // scales the output by t.
  Layer l{2, 2, {1.0, 2.0, 0.5, 3.0}, {0.0, 0.0}, Activation::relu};
  const Network net(2, {l});
  Rng rng(13);
  for (int i = 0; i < 100; ++i) {
    const double t = rng.uniform(1.0, 10.0);
    const std::vector<double> x{rng.uniform(0, 5), rng.uniform(0, 5)};
    const std::vector<double> tx{t * x[0], t * x[1]};
    const auto base = net.forward(x);
    const auto scaled = net.forward(tx);
    for (std::size_t j = 0; j < base.size(); ++j)
      CHECK(scaled[j] == doctest::Approx(t * base[j]).epsilon(1e-12));
  }
}

TEST_CASE("forward is deterministic") {
  const Network net = fixture_221();
  const std::vector<double> x{0.3, -1.7};
  CHECK(net.forward(x) == net.forward(x));
}

TEST_CASE("normalization is applied before the first layer") {
  Layer l{1, 1, {1.0}, {0.0}, Activation::linear};
  InputNormalization norm{{10.0}, {2.0}};
  OutputDenormalization denorm{1.0, 3.0};
  const Network net(1, {l}, norm, denorm);
  // ((14 - 10) / 2) * 3 + 1 = 7
  CHECK(net.forward(std::vector{14.0})[0] == doctest::Approx(7.0));
}

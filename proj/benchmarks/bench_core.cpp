#include <benchmark/benchmark.h>

#include <vector>

#include "ffn/falsifier.hpp"
#include "ffn/racos.hpp"

namespace {

using namespace ffn;

/// ACAS Xu-shaped random network: 5 inputs, 6x50 ReLU hidden, 5 linear out.
Network acas_shaped(std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Layer> layers;
  std::size_t prev = 5;
  for (int i = 0; i < 6; ++i) {
    Layer l{50, prev, {}, {}, Activation::relu};
    for (std::size_t j = 0; j < 50 * prev; ++j)
      l.weights.push_back(rng.uniform(-0.5, 0.5));
    for (std::size_t j = 0; j < 50; ++j) l.biases.push_back(rng.uniform(-0.1, 0.1));
    layers.push_back(std::move(l));
    prev = 50;
  }
  Layer out{5, prev, {}, {}, Activation::linear};
  for (std::size_t j = 0; j < 5 * prev; ++j)
    out.weights.push_back(rng.uniform(-0.5, 0.5));
  for (std::size_t j = 0; j < 5; ++j) out.biases.push_back(rng.uniform(-0.1, 0.1));
  layers.push_back(std::move(out));
  return Network(5, std::move(layers));
}

DomainBox unit_box(std::size_t n) {
  return DomainBox{std::vector<Interval>(n, Interval{0.0, 1.0})};
}

void BM_Forward(benchmark::State& state) {
  const Network net = acas_shaped(1);
  const std::vector<double> x{0.1, 0.2, 0.3, 0.4, 0.5};
  for (auto _ : state) benchmark::DoNotOptimize(net.forward(x));
}
BENCHMARK(BM_Forward);

void BM_SampleBatch(benchmark::State& state) {
  const Network net = acas_shaped(1);
  SafetyProperty prop{"bench", unit_box(5),
                      Predicate::var_const(0, RelOp::le, 1e9)};
  const Objective obj{Direction::maximize, 0};
  Rng rng(7);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        make_samples_and_evaluate(net, prop, obj, prop.domain, 150, rng));
  }
}
BENCHMARK(BM_SampleBatch);

void BM_ShrinkIteration(benchmark::State& state) {
  const Network net = acas_shaped(1);
  SafetyProperty prop{"bench", unit_box(5),
                      Predicate::var_const(0, RelOp::le, 1e9)};
  const Objective obj{Direction::maximize, 0};
  Rng rng(11);
  SampleBatch batch =
      make_samples_and_evaluate(net, prop, obj, prop.domain, 150, rng);
  for (auto _ : state) {
    SamplePartition part =
        select_positive(batch.samples, Direction::maximize, 1);
    benchmark::DoNotOptimize(
        shrink_box(prop.domain, part.pos, part.neg, rng));
  }
}
BENCHMARK(BM_ShrinkIteration);

}  // namespace

BENCHMARK_MAIN();

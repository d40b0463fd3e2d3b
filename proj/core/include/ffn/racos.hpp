#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "ffn/network.hpp"
#include "ffn/property.hpp"
#include "ffn/rng.hpp"
#include "ffn/spec_analyzer.hpp"

namespace ffn {

/// One evaluated point: input (physical units), network output, and the
/// scalar projection for the active objective.
struct Sample {
  std::vector<double> input;
  std::vector<double> output;
  double objective_scalar = 0.0;
};

/// Parameters of the coordinate-shrinking search.
struct OptimizerParams {
  std::size_t rho = 0;            // samples per iteration; 0 = rho_multiplier * n
  std::size_t k = 1;              // positive-sample count
  double theta = 1e-6;            // convergence width
  std::size_t rho_multiplier = 30;

  std::size_t resolved_rho(std::size_t input_dim) const {
    return rho != 0 ? rho : rho_multiplier * input_dim;
  }
};

/// Evolving state of one search: the shrunk box, the best sample seen so
/// far, and the iteration counter.
struct SearchState {
  DomainBox box;
  std::optional<Sample> best;
  std::size_t iteration = 0;
};

/// Result of one sampling pass: either the first falsifying input found,
/// or the full batch. `evaluations` counts network evaluations performed
/// (fewer than rho when the pass exits early).
struct SampleBatch {
  std::optional<Sample> falsifying;
  std::vector<Sample> samples;
  std::size_t evaluations = 0;
};

/// Draws up to rho uniform samples from the box in order, evaluating the
/// network and the predicate on each; returns immediately on the first
/// sample whose predicate evaluation is false.
SampleBatch make_samples_and_evaluate(const Network& net,
                                      const SafetyProperty& prop,
                                      const Objective& obj,
                                      const DomainBox& box, std::size_t rho,
                                      Rng& rng);

struct SamplePartition {
  std::vector<Sample> pos;  // the k best under the objective
  std::vector<Sample> neg;  // the rest
};

/// Splits samples into the k best (largest scalar for maximize, smallest
/// for minimize) and the rest; ties keep earlier draw order in pos.
/// Throws InsufficientSamples unless 1 <= k < samples.size().
SamplePartition select_positive(const std::vector<Sample>& samples,
                                Direction direction, std::size_t k);

/// Randomized coordinate shrinking: picks one positive anchor b, then for
/// each negative sample picks a random dimension and moves that side of
/// the box to a random point between the negative's and the anchor's
/// coordinate. The anchor stays inside the returned box.
DomainBox shrink_box(const DomainBox& box, const std::vector<Sample>& pos,
                     const std::vector<Sample>& neg, Rng& rng);

/// True iff every dimension's width is <= theta.
bool converged(const DomainBox& box, double theta);

}  // namespace ffn

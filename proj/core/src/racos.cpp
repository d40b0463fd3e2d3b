#include "ffn/racos.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "ffn/errors.hpp"

namespace ffn {

SampleBatch make_samples_and_evaluate(const Network& net,
                                      const SafetyProperty& prop,
                                      const Objective& obj,
                                      const DomainBox& box, std::size_t rho,
                                      Rng& rng) {
  SampleBatch batch;
  batch.samples.reserve(rho);
  for (std::size_t i = 0; i < rho; ++i) {
    Sample s;
    s.input = sample_uniform(box, rng);
    s.output = net.forward(s.input);
    ++batch.evaluations;
    if (!phi_eval(*prop.predicate, s.output)) {
      batch.falsifying = std::move(s);
      return batch;
    }
    s.objective_scalar = objective_value(obj, s.output);
    batch.samples.push_back(std::move(s));
  }
  return batch;
}

SamplePartition select_positive(const std::vector<Sample>& samples,
                                Direction direction, std::size_t k) {
  if (k == 0 || samples.size() <= k)
    throw InsufficientSamples("select_positive: need k in [1, " +
                              std::to_string(samples.size()) + "), got " +
                              std::to_string(k));

  std::vector<std::size_t> order(samples.size());
  std::iota(order.begin(), order.end(), 0);
  // stable_sort keeps draw order among equal scalars.
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) {
                     return direction == Direction::maximize
                                ? samples[a].objective_scalar >
                                      samples[b].objective_scalar
                                : samples[a].objective_scalar <
                                      samples[b].objective_scalar;
                   });

  std::vector<bool> positive(samples.size(), false);
  for (std::size_t i = 0; i < k; ++i) positive[order[i]] = true;

  SamplePartition part;
  part.pos.reserve(k);
  part.neg.reserve(samples.size() - k);
  for (std::size_t i = 0; i < samples.size(); ++i) {
    (positive[i] ? part.pos : part.neg).push_back(samples[i]);
  }
  return part;
}

DomainBox shrink_box(const DomainBox& box, const std::vector<Sample>& pos,
                     const std::vector<Sample>& neg, Rng& rng) {
  if (pos.empty()) throw InsufficientSamples("shrink_box: no positive samples");

  DomainBox out = box;
  const Sample& b = pos[rng.index(pos.size())];
  for (const Sample& t : neg) {
    // Dimension is re-drawn per negative sample.
    const std::size_t i = rng.index(out.dim());
    Interval& iv = out.bounds[i];
    const double bv = b.input[i];
    const double tv = t.input[i];
    // The cut point is clamped to the current interval: the best sample
    // carried over from a previous iteration may lie outside the shrunk
    // box, and the box must never grow or invert.
    if (bv > tv) {
      iv.lower = std::min(std::max(iv.lower, rng.uniform(tv, bv)), iv.upper);
    } else if (bv < tv) {
      iv.upper = std::max(std::min(iv.upper, rng.uniform(bv, tv)), iv.lower);
    }
    // bv == tv: the negative cannot be cut on this dimension; leave it.
  }
  return out;
}

bool converged(const DomainBox& box, double theta) {
  return std::all_of(box.bounds.begin(), box.bounds.end(),
                     [theta](const Interval& iv) {
                       return iv.width() <= theta;
                     });
}

}  // namespace ffn

#include "ffn/network.hpp"

#include <cmath>
#include <utility>

#include "ffn/errors.hpp"

namespace ffn {

namespace {

bool all_finite(std::span<const double> v) {
  for (double x : v) {
    if (!std::isfinite(x)) return false;
  }
  return true;
}

}  // namespace

double activation_apply(Activation a, double x) {
  switch (a) {
    case Activation::relu:
      return x > 0.0 ? x : 0.0;
    case Activation::sigmoid:
      return 1.0 / (1.0 + std::exp(-x));
    case Activation::tanh:
      return std::tanh(x);
    case Activation::linear:
      return x;
  }
  return x;  // unreachable
}

Activation activation_from_name(std::string_view name) {
  std::string lower;
  lower.reserve(name.size());
  for (char c : name) lower.push_back(static_cast<char>(std::tolower(c)));
  if (lower == "relu") return Activation::relu;
  if (lower == "sigmoid") return Activation::sigmoid;
  if (lower == "tanh") return Activation::tanh;
  if (lower == "linear") return Activation::linear;
  throw UnknownActivation("unknown activation: " + std::string(name));
}

std::string_view activation_name(Activation a) {
  switch (a) {
    case Activation::relu:
      return "relu";
    case Activation::sigmoid:
      return "sigmoid";
    case Activation::tanh:
      return "tanh";
    case Activation::linear:
      return "linear";
  }
  return "linear";
}

Network::Network(std::size_t input_dim, std::vector<Layer> layers,
                 std::optional<InputNormalization> normalization,
                 std::optional<OutputDenormalization> denormalization,
                 std::optional<InputBounds> input_bounds)
    : input_dim_(input_dim),
      layers_(std::move(layers)),
      normalization_(std::move(normalization)),
      denormalization_(std::move(denormalization)),
      input_bounds_(std::move(input_bounds)) {
  if (input_dim_ == 0) throw ShapeError("input_dim must be positive");
  if (layers_.empty()) throw ShapeError("network must have at least one layer");

  std::size_t prev = input_dim_;
  for (std::size_t li = 0; li < layers_.size(); ++li) {
    const Layer& l = layers_[li];
    const std::string where = "layer " + std::to_string(li);
    if (l.rows == 0) throw ShapeError(where + ": empty layer");
    if (l.cols != prev)
      throw ShapeError(where + ": expected " + std::to_string(prev) +
                       " columns, got " + std::to_string(l.cols));
    if (l.weights.size() != l.rows * l.cols)
      throw ShapeError(where + ": weight count does not match rows*cols");
    if (l.biases.size() != l.rows)
      throw ShapeError(where + ": bias length does not match row count");
    if (!all_finite(l.weights) || !all_finite(l.biases))
      throw ShapeError(where + ": non-finite weight or bias");
    prev = l.rows;
  }
  output_dim_ = prev;

  if (normalization_) {
    if (normalization_->means.size() != input_dim_ ||
        normalization_->ranges.size() != input_dim_)
      throw ShapeError("normalization vectors must have input_dim entries");
    for (double r : normalization_->ranges) {
      if (!(r > 0.0)) throw ShapeError("normalization ranges must be positive");
    }
  }
  if (input_bounds_) {
    if (input_bounds_->mins.size() != input_dim_ ||
        input_bounds_->maxes.size() != input_dim_)
      throw ShapeError("input bounds must have input_dim entries");
  }
}

std::vector<double> Network::forward(std::span<const double> x) const {
  if (x.size() != input_dim_)
    throw DimensionMismatch("forward: input has " + std::to_string(x.size()) +
                            " components, network expects " +
                            std::to_string(input_dim_));
  if (!all_finite(x)) throw NonFiniteInput("forward: non-finite input");

  std::vector<double> act(x.begin(), x.end());
  if (normalization_) {
    for (std::size_t i = 0; i < act.size(); ++i)
      act[i] = (act[i] - normalization_->means[i]) / normalization_->ranges[i];
  }

  std::vector<double> next;
  for (const Layer& l : layers_) {
    next.assign(l.rows, 0.0);
    for (std::size_t r = 0; r < l.rows; ++r) {
      double sum = l.biases[r];
      const double* w = l.weights.data() + r * l.cols;
      for (std::size_t c = 0; c < l.cols; ++c) sum += w[c] * act[c];
      next[r] = activation_apply(l.activation, sum);
    }
    act.swap(next);
  }

  if (denormalization_) {
    for (double& o : act) o = o * denormalization_->range + denormalization_->mean;
  }
  return act;
}

}  // namespace ffn

#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ffn {

enum class Activation { relu, sigmoid, tanh, linear };

/// Pointwise activation; total over finite reals.
double activation_apply(Activation a, double x);

/// Case-insensitive name lookup; throws UnknownActivation.
Activation activation_from_name(std::string_view name);
std::string_view activation_name(Activation a);

/// One fully connected layer. Weights are row-major: rows index this
/// layer's neurons, columns index the preceding layer's neurons.
struct Layer {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> weights;  // rows * cols
  std::vector<double> biases;   // rows
  Activation activation = Activation::relu;
};

/// Per-input affine normalization applied before the first layer:
/// x_i -> (x_i - means[i]) / ranges[i].
struct InputNormalization {
  std::vector<double> means;
  std::vector<double> ranges;  // strictly positive
};

/// Scalar affine denormalization applied to every output after the last
/// layer: o -> o * range + mean.
struct OutputDenormalization {
  double mean = 0.0;
  double range = 1.0;
};

/// Declared physical input range, when the source format carries one
/// (the NNet header does). Used to clip unbounded property domains.
struct InputBounds {
  std::vector<double> mins;
  std::vector<double> maxes;
};

/// Immutable feed-forward network f: R^n -> R^m. Construction validates
/// all shape and finiteness invariants; forward is reentrant.
class Network {
 public:
  Network(std::size_t input_dim, std::vector<Layer> layers,
          std::optional<InputNormalization> normalization = std::nullopt,
          std::optional<OutputDenormalization> denormalization = std::nullopt,
          std::optional<InputBounds> input_bounds = std::nullopt);

  std::size_t input_dim() const { return input_dim_; }
  std::size_t output_dim() const { return output_dim_; }
  const std::vector<Layer>& layers() const { return layers_; }
  const std::optional<InputNormalization>& normalization() const {
    return normalization_;
  }
  const std::optional<OutputDenormalization>& denormalization() const {
    return denormalization_;
  }
  const std::optional<InputBounds>& input_bounds() const {
    return input_bounds_;
  }

  /// Evaluates f(x) in physical units. Throws DimensionMismatch on a
  /// wrong-sized input and NonFiniteInput on NaN/inf components.
  std::vector<double> forward(std::span<const double> x) const;

 private:
  std::size_t input_dim_;
  std::size_t output_dim_;
  std::vector<Layer> layers_;
  std::optional<InputNormalization> normalization_;
  std::optional<OutputDenormalization> denormalization_;
  std::optional<InputBounds> input_bounds_;
};

}  // namespace ffn

#pragma once

#include <filesystem>
#include <vector>

#include "ffn/network.hpp"

namespace ffn {

/// Header block of the NNet text format (ACAS Xu distribution format).
struct NNetHeader {
  int num_layers = 0;
  int input_dim = 0;
  int output_dim = 0;
  int max_layer_size = 0;
  std::vector<int> layer_sizes;    // num_layers + 1 entries
  std::vector<double> input_mins;  // n
  std::vector<double> input_maxes; // n
  std::vector<double> means;       // n + 1 (last entry is the output mean)
  std::vector<double> ranges;      // n + 1 (last entry is the output range)
};

/// Loads an NNet file: ReLU hidden layers, Linear output layer, input
/// normalization and output denormalization from the header. "//" comment
/// lines are skipped. Throws ParseError (with line number) or ShapeError.
Network load_nnet(const std::filesystem::path& path);

/// Loads the native JSON network description:
///   { "input_dim": n,
///     "layers": [ {"weights": [[...]], "biases": [...], "activation": "relu"} ],
///     "normalization": {"means": [...], "ranges": [...]},          (optional)
///     "denormalization": {"mean": m, "range": r},                  (optional)
///     "input_bounds": {"mins": [...], "maxes": [...]} }            (optional)
/// Activation names are case-insensitive. Throws ParseError, ShapeError
/// or UnknownActivation.
Network load_native(const std::filesystem::path& path);

}  // namespace ffn

#include "ffn/nnet_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "ffn/errors.hpp"

namespace ffn {

namespace {

/// Line reader that skips "//" comments and tracks line numbers for
/// diagnostics.
class NNetReader {
 public:
  NNetReader(std::istream& in, std::string path)
      : in_(in), path_(std::move(path)) {}

  /// Next non-comment, non-empty line.
  std::string next_line() {
    std::string line;
    while (std::getline(in_, line)) {
      ++line_no_;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      const std::size_t start = line.find_first_not_of(" \t");
      if (start == std::string::npos) continue;
      if (line.compare(start, 2, "//") == 0) continue;
      return line;
    }
    throw ParseError(path_ + ": unexpected end of file after line " +
                     std::to_string(line_no_));
  }

  /// Parses a comma/whitespace separated numeric line; trailing commas
  /// are tolerated (the distribution files carry them).
  std::vector<double> next_doubles() {
    const std::string line = next_line();
    std::vector<double> values;
    const char* p = line.data();
    const char* end = line.data() + line.size();
    while (p < end) {
      while (p < end && (*p == ',' || *p == ' ' || *p == '\t')) ++p;
      if (p >= end) break;
      double v = 0.0;
      auto [q, ec] = std::from_chars(p, end, v);
      if (ec != std::errc())
        throw ParseError(path_ + ":" + std::to_string(line_no_) +
                         ": malformed numeric field");
      values.push_back(v);
      p = q;
    }
    if (values.empty())
      throw ParseError(path_ + ":" + std::to_string(line_no_) +
                       ": expected numeric line");
    return values;
  }

  std::vector<int> next_ints(std::size_t expected) {
    const std::vector<double> raw = next_doubles();
    if (expected != 0 && raw.size() < expected)
      throw ParseError(path_ + ":" + std::to_string(line_no_) + ": expected " +
                       std::to_string(expected) + " integer fields, got " +
                       std::to_string(raw.size()));
    std::vector<int> values;
    values.reserve(raw.size());
    for (double v : raw) values.push_back(static_cast<int>(v));
    return values;
  }

  int line_no() const { return line_no_; }

 private:
  std::istream& in_;
  std::string path_;
  int line_no_ = 0;
};

std::vector<double> expect_length(std::vector<double> v, std::size_t len,
                                  const std::string& what) {
  if (v.size() != len)
    throw ShapeError(what + ": expected " + std::to_string(len) +
                     " values, got " + std::to_string(v.size()));
  return v;
}

}  // namespace

Network load_nnet(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path.string() + ": cannot open file");
  NNetReader reader(in, path.string());

  NNetHeader h;
  {
    const std::vector<int> head = reader.next_ints(4);
    h.num_layers = head[0];
    h.input_dim = head[1];
    h.output_dim = head[2];
    h.max_layer_size = head[3];
  }
  if (h.num_layers <= 0 || h.input_dim <= 0 || h.output_dim <= 0)
    throw ShapeError(path.string() + ": non-positive dimensions in header");

  h.layer_sizes = reader.next_ints(static_cast<std::size_t>(h.num_layers) + 1);
  if (h.layer_sizes.size() != static_cast<std::size_t>(h.num_layers) + 1)
    throw ShapeError(path.string() + ": layer size line must have " +
                     std::to_string(h.num_layers + 1) + " entries");
  if (h.layer_sizes.front() != h.input_dim ||
      h.layer_sizes.back() != h.output_dim)
    throw ShapeError(path.string() +
                     ": layer sizes disagree with declared input/output dims");

  reader.next_line();  // historical "symmetric" flag, validated by presence only

  const std::size_t n = static_cast<std::size_t>(h.input_dim);
  h.input_mins = expect_length(reader.next_doubles(), n, "input mins");
  h.input_maxes = expect_length(reader.next_doubles(), n, "input maxes");
  for (std::size_t i = 0; i < n; ++i) {
    if (h.input_mins[i] > h.input_maxes[i])
      throw ShapeError(path.string() + ": input min exceeds max at index " +
                       std::to_string(i));
  }
  h.means = expect_length(reader.next_doubles(), n + 1, "means");
  h.ranges = expect_length(reader.next_doubles(), n + 1, "ranges");

  std::vector<Layer> layers;
  layers.reserve(static_cast<std::size_t>(h.num_layers));
  for (int li = 0; li < h.num_layers; ++li) {
    Layer layer;
    layer.cols = static_cast<std::size_t>(h.layer_sizes[li]);
    layer.rows = static_cast<std::size_t>(h.layer_sizes[li + 1]);
    layer.activation =
        li + 1 == h.num_layers ? Activation::linear : Activation::relu;
    layer.weights.reserve(layer.rows * layer.cols);
    for (std::size_t r = 0; r < layer.rows; ++r) {
      std::vector<double> row = reader.next_doubles();
      if (row.size() != layer.cols)
        throw ShapeError(path.string() + ": layer " + std::to_string(li) +
                         " weight row " + std::to_string(r) + " has " +
                         std::to_string(row.size()) + " entries, expected " +
                         std::to_string(layer.cols));
      layer.weights.insert(layer.weights.end(), row.begin(), row.end());
    }
    layer.biases.reserve(layer.rows);
    for (std::size_t r = 0; r < layer.rows; ++r) {
      const std::vector<double> b = reader.next_doubles();
      if (b.size() != 1)
        throw ShapeError(path.string() + ": layer " + std::to_string(li) +
                         " bias line must hold one value");
      layer.biases.push_back(b[0]);
    }
    layers.push_back(std::move(layer));
  }

  InputNormalization norm{{h.means.begin(), h.means.begin() + n},
                          {h.ranges.begin(), h.ranges.begin() + n}};
  OutputDenormalization denorm{h.means[n], h.ranges[n]};
  InputBounds bounds{h.input_mins, h.input_maxes};
  return Network(n, std::move(layers), std::move(norm), denorm,
                 std::move(bounds));
}

Network load_native(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path.string() + ": cannot open file");

  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(path.string() + ": " + e.what());
  }

  try {
    const std::size_t input_dim = doc.at("input_dim").get<std::size_t>();
    std::vector<Layer> layers;
    for (const auto& jl : doc.at("layers")) {
      Layer layer;
      layer.activation =
          activation_from_name(jl.at("activation").get<std::string>());
      const auto& rows = jl.at("weights");
      layer.rows = rows.size();
      layer.cols = layer.rows > 0 ? rows.front().size() : 0;
      for (const auto& row : rows) {
        if (row.size() != layer.cols)
          throw ShapeError(path.string() + ": ragged weight matrix");
        for (const auto& w : row) layer.weights.push_back(w.get<double>());
      }
      layer.biases = jl.at("biases").get<std::vector<double>>();
      layers.push_back(std::move(layer));
    }

    std::optional<InputNormalization> norm;
    if (doc.contains("normalization")) {
      const auto& jn = doc["normalization"];
      norm = InputNormalization{jn.at("means").get<std::vector<double>>(),
                                jn.at("ranges").get<std::vector<double>>()};
    }
    std::optional<OutputDenormalization> denorm;
    if (doc.contains("denormalization")) {
      const auto& jd = doc["denormalization"];
      denorm = OutputDenormalization{jd.at("mean").get<double>(),
                                     jd.at("range").get<double>()};
    }
    std::optional<InputBounds> bounds;
    if (doc.contains("input_bounds")) {
      const auto& jb = doc["input_bounds"];
      bounds = InputBounds{jb.at("mins").get<std::vector<double>>(),
                           jb.at("maxes").get<std::vector<double>>()};
    }
    return Network(input_dim, std::move(layers), std::move(norm), denorm,
                   std::move(bounds));
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

}  // namespace ffn

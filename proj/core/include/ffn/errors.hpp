#pragma once

#include <stdexcept>
#include <string>

namespace ffn {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DimensionMismatch : Error {
  using Error::Error;
};
struct NonFiniteInput : Error {
  using Error::Error;
};
struct ParseError : Error {
  using Error::Error;
};
struct ShapeError : Error {
  using Error::Error;
};
struct UnknownActivation : Error {
  using Error::Error;
};
struct SyntaxError : Error {
  using Error::Error;
};
struct UnknownVariable : Error {
  using Error::Error;
};
struct IndexOutOfRange : Error {
  using Error::Error;
};
struct UnboundedDomain : Error {
  using Error::Error;
};
struct InsufficientSamples : Error {
  using Error::Error;
};
struct ConfigError : Error {
  using Error::Error;
};

}  // namespace ffn

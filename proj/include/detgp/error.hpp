#pragma once

#include <stdexcept>
#include <string>

namespace detgp {

// Base class for everything this library throws on purpose.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionError final : public Error {
 public:
  using Error::Error;
};

class InvalidArgument final : public Error {
 public:
  using Error::Error;
};

// SPD solve failed even with jitter; message carries the smallest pivot.
class FactorizationError final : public Error {
 public:
  using Error::Error;
};

// File-format problems; message carries the path and line number.
class ParseError final : public Error {
 public:
  using Error::Error;
};

class CheckpointError : public Error {
 public:
  using Error::Error;
};

class CheckpointVersionError final : public CheckpointError {
 public:
  using CheckpointError::CheckpointError;
};

class CheckpointShapeError final : public CheckpointError {
 public:
  using CheckpointError::CheckpointError;
};

// Tensor file shorter or longer than the manifest promises.
class CheckpointSizeError final : public CheckpointError {
 public:
  using CheckpointError::CheckpointError;
};

}  // namespace detgp

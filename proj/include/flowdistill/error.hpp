#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace flowdistill {

/// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid dimensions, hyperparameters, mismatched shapes, bad config keys.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Non-finite values where finite ones are required (inputs, losses).
class NumericError : public Error {
 public:
  using Error::Error;
};

/// Training produced a non-finite loss.
class NonFiniteLoss : public NumericError {
 public:
  NonFiniteLoss(int epoch, int batch)
      : NumericError("non-finite loss at epoch " + std::to_string(epoch) + ", batch " + std::to_string(batch)),
        epoch_(epoch),
        batch_(batch) {}

  int epoch() const noexcept { return epoch_; }
  int batch() const noexcept { return batch_; }

 private:
  int epoch_;
  int batch_;
};

/// Malformed binary file; carries the byte offset where parsing failed.
class FormatError : public Error {
 public:
  FormatError(const std::string& what, std::uint64_t offset)
      : Error(what + " (at byte offset " + std::to_string(offset) + ")"), offset_(offset) {}

  std::uint64_t offset() const noexcept { return offset_; }

 private:
  std::uint64_t offset_;
};

/// Filesystem failures (missing directory, unreadable file).
class IoError : public Error {
 public:
  using Error::Error;
};

/// A sample that cannot be used (e.g. an all-zero response grid).
class RejectedSample : public Error {
 public:
  using Error::Error;
};

}  // namespace flowdistill

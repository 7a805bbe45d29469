#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace grst {

/// Base class for all library failures.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad argument or configuration value. CLI maps this to exit code 2.
class InvalidParameter : public Error {
 public:
  using Error::Error;
};

/// Malformed or unusable input data; carries 1-based row context when known.
class IngestError : public Error {
 public:
  explicit IngestError(const std::string& what, std::size_t row = 0)
      : Error(what), row_(row) {}
  std::size_t row() const noexcept { return row_; }

 private:
  std::size_t row_;
};

/// Tree geometry cannot be realized: non-monotone layer, crossing flow
/// lines, broken recombination. CLI maps this to exit code 3.
class ConstructionError : public Error {
 public:
  using Error::Error;
};

/// Backward induction hit a node whose one-step replication probability
/// leaves [0,1]. Carries the node coordinates. CLI maps this to exit code 3.
class ArbitrageViolation : public Error {
 public:
  ArbitrageViolation(const std::string& what, std::size_t layer, std::size_t node)
      : Error(what), layer_(layer), node_(node) {}
  std::size_t layer() const noexcept { return layer_; }
  std::size_t node() const noexcept { return node_; }

 private:
  std::size_t layer_;
  std::size_t node_;
};

}  // namespace grst

#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace lmoment {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed arguments: mismatched variable counts, degenerate intervals, bad lengths.
class ArgumentError : public Error {
 public:
  using Error::Error;
};

/// Input that parses but violates a documented precondition (e.g. y_0 != 1).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// A request whose output would be combinatorially too large.
class CapacityError : public Error {
 public:
  using Error::Error;
};

/// A moment vector lacks entries that an assembly or instantiation needs.
class IncompleteDataError : public Error {
 public:
  IncompleteDataError(const std::string& what, std::vector<std::string> missing)
      : Error(what), missing_(std::move(missing)) {}

  const std::vector<std::string>& missing_keys() const noexcept { return missing_; }

 private:
  std::vector<std::string> missing_;
};

}  // namespace lmoment

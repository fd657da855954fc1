#pragma once

#include <stdexcept>
#include <string>

namespace fractaldim {

/// Structural problem in an input (bad pattern file, malformed value, ...).
class validation_error : public std::invalid_argument {
 public:
  explicit validation_error(const std::string& what) : std::invalid_argument(what) {}
};

/// A formula's hypothesis does not hold for the given inputs.
class hypothesis_error : public std::domain_error {
 public:
  explicit hypothesis_error(const std::string& what) : std::domain_error(what) {}
};

/// An enumeration or DP would exceed the configured cell/state budget.
class budget_error : public std::runtime_error {
 public:
  explicit budget_error(const std::string& what) : std::runtime_error(what) {}
};

class io_error : public std::runtime_error {
 public:
  explicit io_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace fractaldim

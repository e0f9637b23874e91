#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace ardl {

/// Malformed or insufficient input data (bad CSV, short sample, missing series).
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Design matrix without full column rank; carries the offending column names.
class RankDeficientError : public std::runtime_error {
 public:
  RankDeficientError(const std::string& what, std::vector<std::string> dependent_columns)
      : std::runtime_error(what), dependent_columns_(std::move(dependent_columns)) {}

  const std::vector<std::string>& dependent_columns() const noexcept { return dependent_columns_; }

 private:
  std::vector<std::string> dependent_columns_;
};

/// Configuration problems that abort a batch run.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace ardl

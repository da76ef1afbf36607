#pragma once

#include <stdexcept>
#include <string>

namespace hamclust {

/// Root of every error thrown by the library. The category drives the CLI
/// exit code.
class Error : public std::runtime_error {
 public:
  enum class Category { config, data, solver };

  Error(Category category, const std::string& what)
      : std::runtime_error(what), category_(category) {}

  Category category() const noexcept { return category_; }

 private:
  Category category_;
};

/// Bad option value, unknown name, conflicting flags.
class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& what) : Error(Category::config, what) {}
};

/// Malformed input data or a contract violation on data-shaped arguments
/// (dimension mismatch, index out of range, non-finite values).
class DataError : public Error {
 public:
  explicit DataError(const std::string& what) : Error(Category::data, what) {}
};

/// The requested solve cannot be performed (size caps, infeasible constraint).
class SolverError : public Error {
 public:
  explicit SolverError(const std::string& what) : Error(Category::solver, what) {}
};

}  // namespace hamclust

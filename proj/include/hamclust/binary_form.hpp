#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "hamclust/polynomial.hpp"

namespace hamclust {

struct QuadraticEntry {
  VarIndex i;
  VarIndex j;
  double c;
  friend bool operator==(const QuadraticEntry&, const QuadraticEntry&) = default;
};

/// offset + sum_i linear[i] y_i + sum_{i<j} c_ij y_i y_j over y in {0,1}^n.
///
/// Quadratic entries are strictly ordered by (i, j) with i < j < num_vars.
class BinaryQuadraticForm {
 public:
  BinaryQuadraticForm() = default;
  /// Validates ordering, ranges and finiteness; throws DataError.
  BinaryQuadraticForm(std::size_t num_vars, double offset, std::vector<double> linear,
                      std::vector<QuadraticEntry> quadratic);

  std::size_t num_vars() const noexcept { return num_vars_; }
  double offset() const noexcept { return offset_; }
  const std::vector<double>& linear() const noexcept { return linear_; }
  const std::vector<QuadraticEntry>& quadratic() const noexcept { return quadratic_; }

  friend bool operator==(const BinaryQuadraticForm&, const BinaryQuadraticForm&) = default;

 private:
  std::size_t num_vars_ = 0;
  double offset_ = 0.0;
  std::vector<double> linear_;
  std::vector<QuadraticEntry> quadratic_;
};

/// Energy at y. Throws DataError on size mismatch or entries outside {0,1}.
double evaluate(const BinaryQuadraticForm& form, std::span<const std::uint8_t> y);

/// Substitutes z_i = 2 y_i - 1. Throws DataError if poly.degree() > 2.
BinaryQuadraticForm spin_to_binary(const SpinPolynomial& poly);
/// Substitutes y_i = (1 + z_i) / 2.
SpinPolynomial binary_to_spin(const BinaryQuadraticForm& form);

/// y_i = (1 + z_i) / 2.
std::vector<std::uint8_t> to_binary(const SpinAssignment& z);
SpinAssignment to_spins(std::span<const std::uint8_t> y);

}  // namespace hamclust

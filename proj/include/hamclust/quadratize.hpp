#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "hamclust/binary_form.hpp"
#include "hamclust/polynomial.hpp"

namespace hamclust {

/// Binary variable `index` stands for y_left * y_right.
struct AuxiliaryVariable {
  VarIndex index;
  VarIndex left;
  VarIndex right;
  friend bool operator==(const AuxiliaryVariable&, const AuxiliaryVariable&) = default;
};

struct Quadratization {
  BinaryQuadraticForm form;
  std::size_t num_original = 0;
  /// In creation order; auxiliary k has index num_original + k.
  std::vector<AuxiliaryVariable> auxiliaries;
  double penalty = 0.0;
};

/// 2 * max|coeff| * number of terms of the binary (z = 2y - 1) expansion.
double default_quadratization_penalty(const SpinPolynomial& poly);

/// Rewrites poly over y in {0,1}, then repeatedly replaces the pair that
/// occurs in the most terms of degree >= 3 (lowest pair on ties) by a fresh
/// variable w, adding M (y_i y_j - 2 y_i w - 2 y_j w + 3 w). Input of degree
/// <= 2 comes back as spin_to_binary(poly). Throws ConfigError if penalty <= 0.
Quadratization quadratize(const SpinPolynomial& poly, std::optional<double> penalty = std::nullopt);

/// Extends an assignment of the original variables with consistent
/// auxiliary values.
std::vector<std::uint8_t> lift(const Quadratization& q, std::span<const std::uint8_t> original);

struct QuadratizationCheck {
  bool sound = false;
  double original_min = 0.0;
  double quadratic_min = 0.0;
  std::size_t original_minimizers = 0;
  std::size_t projected_minimizers = 0;
};

/// Brute-forces both sides. The form is sound when the minima agree and its
/// minimizers, restricted to the original variables, are exactly the
/// minimizers of poly. Ties use a relative tolerance. Throws SolverError if
/// either side exceeds the brute-force cap.
QuadratizationCheck verify_quadratization(const SpinPolynomial& poly, const Quadratization& q,
                                          double tolerance = 1e-9);

}  // namespace hamclust

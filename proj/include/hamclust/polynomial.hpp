#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

#include "hamclust/spin.hpp"

namespace hamclust {

using VarIndex = std::uint32_t;

/// Multilinear polynomial over spins z_i in {-1,+1}:
///   constant + sum_T coeff(T) * prod_{i in T} z_i.
///
/// Terms are stored flat, ordered by (degree, lexicographic tuple). Every
/// tuple is strictly increasing with indices below num_vars(); zero
/// coefficients are never stored. Instances are immutable; use
/// PolynomialBuilder to make one.
class SpinPolynomial {
 public:
  SpinPolynomial() = default;
  explicit SpinPolynomial(std::size_t num_vars, double constant = 0.0);

  std::size_t num_vars() const noexcept { return num_vars_; }
  double constant() const noexcept { return constant_; }
  std::size_t num_terms() const noexcept { return coefficients_.size(); }
  /// Largest tuple length; 0 for a constant polynomial.
  std::size_t degree() const noexcept;

  std::span<const VarIndex> indices(std::size_t term) const noexcept {
    return {indices_.data() + offsets_[term], offsets_[term + 1] - offsets_[term]};
  }
  double coefficient(std::size_t term) const noexcept { return coefficients_[term]; }
  /// Coefficient of a strictly increasing tuple; 0 when absent. An empty tuple
  /// returns the constant.
  double coefficient_of(std::span<const VarIndex> tuple) const;
  double coefficient_of(std::initializer_list<VarIndex> tuple) const {
    return coefficient_of(std::span<const VarIndex>(tuple.begin(), tuple.size()));
  }

  /// True when every tuple has even length, i.e. f(z) == f(-z).
  bool spin_flip_symmetric() const noexcept;
  /// Max |coeff| over the non-constant terms (0 when there are none).
  double max_abs_coefficient() const noexcept;
  /// Sum of |coeff| over the non-constant terms.
  double abs_coefficient_sum() const noexcept;

  SpinPolynomial scaled(double factor) const;

  friend bool operator==(const SpinPolynomial&, const SpinPolynomial&) = default;

 private:
  friend class PolynomialBuilder;

  std::size_t num_vars_ = 0;
  double constant_ = 0.0;
  std::vector<VarIndex> indices_;
  std::vector<std::size_t> offsets_{0};
  std::vector<double> coefficients_;
};

/// Accumulates terms in any order and produces a canonical SpinPolynomial.
///
/// Tuples may be unsorted and may repeat an index; z_i^2 = 1 is applied, so
/// repeated pairs cancel. Duplicate tuples are summed in insertion order and
/// exact zeros are pruned (no epsilon). Appending tuples already in storage
/// order avoids the sort.
class PolynomialBuilder {
 public:
  explicit PolynomialBuilder(std::size_t num_vars);
  explicit PolynomialBuilder(const SpinPolynomial& start);

  std::size_t num_vars() const noexcept { return num_vars_; }
  void add_constant(double c) { constant_ += c; }
  void add(std::span<const VarIndex> tuple, double c);
  void add(std::initializer_list<VarIndex> tuple, double c) {
    add(std::span<const VarIndex>(tuple.begin(), tuple.size()), c);
  }
  /// Adds scale * p term by term. p.num_vars() must not exceed num_vars().
  void add(const SpinPolynomial& p, double scale = 1.0);
  void reserve(std::size_t terms, std::size_t index_slots);

  /// Throws DataError on a non-finite coefficient.
  SpinPolynomial build() const;

 private:
  void push_term(std::span<const VarIndex> tuple, double c);

  std::size_t num_vars_;
  // True while every pushed tuple is strictly after the previous one in
  // storage order; build() then skips the sort-and-merge pass.
  bool in_order_ = true;
  double constant_ = 0.0;
  std::vector<VarIndex> indices_;
  std::vector<std::size_t> offsets_{0};
  std::vector<double> coefficients_;
  std::vector<VarIndex> scratch_;
};

/// f(z). Throws DataError if z.size() != poly.num_vars().
double evaluate(const SpinPolynomial& poly, const SpinAssignment& z);
double evaluate(const SpinPolynomial& poly, std::span<const std::int8_t> z);

/// Term-wise a*p + b*q over max(num_vars).
SpinPolynomial linear_combination(double a, const SpinPolynomial& p, double b, const SpinPolynomial& q);
SpinPolynomial operator+(const SpinPolynomial& p, const SpinPolynomial& q);

/// Product with z_i^2 = 1 reduction.
SpinPolynomial multiply(const SpinPolynomial& p, const SpinPolynomial& q);

}  // namespace hamclust

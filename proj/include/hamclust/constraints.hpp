#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "hamclust/polynomial.hpp"

namespace hamclust {

struct Label {
  VarIndex index;
  int spin;  // +1 or -1
  friend bool operator==(const Label&, const Label&) = default;
};

/// q = +1 must-link, q = -1 cannot-link. Always i < j.
struct Link {
  VarIndex i;
  VarIndex j;
  int q;
  friend bool operator==(const Link&, const Link&) = default;
};

struct Cardinality {
  long long target;  // desired value of sum_i z_i
  double lambda;
  friend bool operator==(const Cardinality&, const Cardinality&) = default;
};

/// Validated bundle of soft constraints for an N-variable problem.
class ConstraintSet {
 public:
  ConstraintSet() = default;
  /// Throws DataError on out-of-range or malformed entries, ConfigError on a
  /// non-positive weight, SolverError when the cardinality target has the
  /// wrong parity.
  ConstraintSet(std::size_t num_vars, std::vector<Label> labels, std::optional<double> label_lambda,
                std::optional<Cardinality> cardinality, std::vector<Link> links,
                std::optional<double> link_lambda);

  std::size_t num_vars() const noexcept { return num_vars_; }
  const std::vector<Label>& labels() const noexcept { return labels_; }
  std::optional<double> label_lambda() const noexcept { return label_lambda_; }
  const std::optional<Cardinality>& cardinality() const noexcept { return cardinality_; }
  const std::vector<Link>& links() const noexcept { return links_; }
  std::optional<double> link_lambda() const noexcept { return link_lambda_; }
  bool empty() const noexcept { return labels_.empty() && !cardinality_ && links_.empty(); }

  /// Fills in every missing weight with default_penalty_weight(base).
  ConstraintSet with_default_weights(const SpinPolynomial& base) const;
  ConstraintSet with_default_weights(double weight) const;

  friend bool operator==(const ConstraintSet&, const ConstraintSet&) = default;

 private:
  std::size_t num_vars_ = 0;
  std::vector<Label> labels_;
  std::optional<double> label_lambda_;
  std::optional<Cardinality> cardinality_;
  std::vector<Link> links_;
  std::optional<double> link_lambda_;
};

/// 2 * max|coeff| * N, or 2 * N when the base has no non-constant terms.
double default_penalty_weight(const SpinPolynomial& base);
double default_penalty_weight(double max_abs_coefficient, std::size_t num_vars);

/// 2 * sum |coeff| (1 when there are no terms). Every energy difference of
/// the base is smaller, while violating any label, link or cardinality
/// target costs at least 2 lambda, so at this weight each minimizer satisfies
/// every jointly satisfiable constraint set.
double dominance_weight(const SpinPolynomial& base);
double dominance_weight(double abs_coefficient_sum);

/// poly - lambda * sum s_i z_i.
SpinPolynomial apply_labeling(const SpinPolynomial& poly, std::span<const Label> labels, double lambda);
/// poly + lambda * (C - sum z_i)^2, expanded.
SpinPolynomial apply_cardinality(const SpinPolynomial& poly, long long target, double lambda);
/// poly - lambda * sum q_ij z_i z_j.
SpinPolynomial apply_links(const SpinPolynomial& poly, std::span<const Link> links, double lambda);
/// All three, using the weights stored in the set (missing weights get the
/// default for poly).
SpinPolynomial apply_constraints(const SpinPolynomial& poly, const ConstraintSet& constraints);

/// One link per pair of revealed points: must-link when their classes agree.
/// `revealed` may be in any order; links come out sorted by (i, j).
std::vector<Link> derive_links_from_labels(std::span<const std::size_t> revealed, std::span<const int> classes);
/// At most max_links of those pairs, drawn uniformly without replacement.
std::vector<Link> derive_links_sampled(std::span<const std::size_t> revealed, std::span<const int> classes,
                                       std::size_t max_links, std::uint64_t seed);

/// True when z satisfies every constraint in the set exactly.
bool satisfies(const SpinAssignment& z, const ConstraintSet& constraints);

}  // namespace hamclust

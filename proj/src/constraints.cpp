#include "hamclust/constraints.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>
#include <utility>

#include "hamclust/error.hpp"
#include "hamclust/random.hpp"

namespace hamclust {

namespace {

void check_weight(double lambda, const char* what) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw ConfigError(std::string(what) + " must be a positive finite number, got " + std::to_string(lambda));
  }
}

void check_index(std::size_t i, std::size_t n) {
  if (i >= n) throw DataError("constraint index " + std::to_string(i) + " out of range for " + std::to_string(n) + " variables");
}

void check_parity(long long target, std::size_t n) {
  const long long nn = static_cast<long long>(n);
  if (target > nn || target < -nn) {
    throw SolverError("cardinality target " + std::to_string(target) + " outside [-N, N] for N = " + std::to_string(n));
  }
  if (((target % 2) + 2) % 2 != nn % 2) {
    throw SolverError("cardinality target " + std::to_string(target) + " has a different parity from N = " +
                      std::to_string(n) + "; sum of spins can never reach it");
  }
}

}  // namespace

ConstraintSet::ConstraintSet(std::size_t num_vars, std::vector<Label> labels, std::optional<double> label_lambda,
                             std::optional<Cardinality> cardinality, std::vector<Link> links,
                             std::optional<double> link_lambda)
    : num_vars_(num_vars),
      labels_(std::move(labels)),
      label_lambda_(label_lambda),
      cardinality_(cardinality),
      links_(std::move(links)),
      link_lambda_(link_lambda) {
  for (const auto& l : labels_) {
    check_index(l.index, num_vars_);
    if (l.spin != 1 && l.spin != -1) throw DataError("label spin must be +1 or -1, got " + std::to_string(l.spin));
  }
  if (label_lambda_) check_weight(*label_lambda_, "label lambda");
  if (cardinality_) {
    check_weight(cardinality_->lambda, "cardinality lambda");
    check_parity(cardinality_->target, num_vars_);
  }
  std::set<std::pair<VarIndex, VarIndex>> seen;
  for (const auto& l : links_) {
    check_index(l.i, num_vars_);
    check_index(l.j, num_vars_);
    if (l.i >= l.j) throw DataError("link (" + std::to_string(l.i) + ", " + std::to_string(l.j) + ") must have i < j");
    if (l.q != 1 && l.q != -1) throw DataError("link q must be +1 or -1, got " + std::to_string(l.q));
    if (!seen.emplace(l.i, l.j).second) {
      throw DataError("duplicate link (" + std::to_string(l.i) + ", " + std::to_string(l.j) + ")");
    }
  }
  if (link_lambda_) check_weight(*link_lambda_, "link lambda");
}

ConstraintSet ConstraintSet::with_default_weights(const SpinPolynomial& base) const {
  return with_default_weights(default_penalty_weight(base));
}

ConstraintSet ConstraintSet::with_default_weights(double weight) const {
  check_weight(weight, "default weight");
  ConstraintSet out = *this;
  if (!out.label_lambda_) out.label_lambda_ = weight;
  if (!out.link_lambda_) out.link_lambda_ = weight;
  return out;
}

double default_penalty_weight(const SpinPolynomial& base) {
  return default_penalty_weight(base.max_abs_coefficient(), base.num_vars());
}

double default_penalty_weight(double max_abs_coefficient, std::size_t num_vars) {
  const double n = static_cast<double>(std::max<std::size_t>(num_vars, 1));
  return 2.0 * (max_abs_coefficient > 0.0 ? max_abs_coefficient : 1.0) * n;
}

double dominance_weight(const SpinPolynomial& base) { return dominance_weight(base.abs_coefficient_sum()); }

double dominance_weight(double abs_coefficient_sum) {
  return abs_coefficient_sum > 0.0 ? 2.0 * abs_coefficient_sum : 1.0;
}

SpinPolynomial apply_labeling(const SpinPolynomial& poly, std::span<const Label> labels, double lambda) {
  check_weight(lambda, "label lambda");
  PolynomialBuilder b(poly);
  for (const auto& l : labels) {
    check_index(l.index, poly.num_vars());
    if (l.spin != 1 && l.spin != -1) throw DataError("label spin must be +1 or -1");
    b.add({l.index}, -lambda * l.spin);
  }
  return b.build();
}

SpinPolynomial apply_cardinality(const SpinPolynomial& poly, long long target, double lambda) {
  check_weight(lambda, "cardinality lambda");
  const std::size_t n = poly.num_vars();
  check_parity(target, n);
  const double c = static_cast<double>(target);
  PolynomialBuilder b(poly);
  b.add_constant(lambda * (c * c + static_cast<double>(n)));
  for (VarIndex i = 0; i < n; ++i) b.add({i}, -2.0 * lambda * c);
  for (VarIndex i = 0; i < n; ++i) {
    for (VarIndex j = i + 1; j < n; ++j) b.add({i, j}, 2.0 * lambda);
  }
  return b.build();
}

SpinPolynomial apply_links(const SpinPolynomial& poly, std::span<const Link> links, double lambda) {
  check_weight(lambda, "link lambda");
  PolynomialBuilder b(poly);
  for (const auto& l : links) {
    check_index(l.i, poly.num_vars());
    check_index(l.j, poly.num_vars());
    if (l.i == l.j) throw DataError("link joins index " + std::to_string(l.i) + " to itself");
    if (l.q != 1 && l.q != -1) throw DataError("link q must be +1 or -1");
    b.add({l.i, l.j}, -lambda * l.q);
  }
  return b.build();
}

SpinPolynomial apply_constraints(const SpinPolynomial& poly, const ConstraintSet& constraints) {
  if (constraints.num_vars() != poly.num_vars() && !constraints.empty()) {
    throw DataError("constraint set is for " + std::to_string(constraints.num_vars()) + " variables, objective has " +
                    std::to_string(poly.num_vars()));
  }
  const auto cs = constraints.with_default_weights(poly);
  SpinPolynomial out = poly;
  if (!cs.labels().empty()) out = apply_labeling(out, cs.labels(), *cs.label_lambda());
  if (cs.cardinality()) out = apply_cardinality(out, cs.cardinality()->target, cs.cardinality()->lambda);
  if (!cs.links().empty()) out = apply_links(out, cs.links(), *cs.link_lambda());
  return out;
}

std::vector<Link> derive_links_from_labels(std::span<const std::size_t> revealed, std::span<const int> classes) {
  std::vector<std::size_t> idx(revealed.begin(), revealed.end());
  std::sort(idx.begin(), idx.end());
  if (std::adjacent_find(idx.begin(), idx.end()) != idx.end()) throw DataError("revealed indices contain a duplicate");
  if (!idx.empty() && idx.back() >= classes.size()) throw DataError("revealed index out of range of the class labels");
  std::vector<Link> links;
  links.reserve(idx.size() * (idx.size() - (idx.empty() ? 0 : 1)) / 2);
  for (std::size_t a = 0; a < idx.size(); ++a) {
    for (std::size_t b = a + 1; b < idx.size(); ++b) {
      links.push_back({static_cast<VarIndex>(idx[a]), static_cast<VarIndex>(idx[b]),
                       classes[idx[a]] == classes[idx[b]] ? 1 : -1});
    }
  }
  return links;
}

std::vector<Link> derive_links_sampled(std::span<const std::size_t> revealed, std::span<const int> classes,
                                       std::size_t max_links, std::uint64_t seed) {
  auto all = derive_links_from_labels(revealed, classes);
  if (all.size() <= max_links) return all;
  Rng rng(seed);
  auto pick = rng.sample(all.size(), max_links);
  std::sort(pick.begin(), pick.end());
  std::vector<Link> out;
  out.reserve(max_links);
  for (auto p : pick) out.push_back(all[p]);
  return out;
}

bool satisfies(const SpinAssignment& z, const ConstraintSet& constraints) {
  for (const auto& l : constraints.labels()) {
    if (z[l.index] != l.spin) return false;
  }
  if (const auto& c = constraints.cardinality()) {
    long long s = 0;
    for (std::size_t i = 0; i < z.size(); ++i) s += z[i];
    if (s != c->target) return false;
  }
  for (const auto& l : constraints.links()) {
    if (z[l.i] * z[l.j] != l.q) return false;
  }
  return true;
}

}  // namespace hamclust

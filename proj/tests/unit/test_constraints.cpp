#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "hamclust/constraints.hpp"
#include "hamclust/error.hpp"
#include "hamclust/objectives.hpp"
#include "support/oracles.hpp"

using namespace hamclust;

namespace {

double spread(const SpinPolynomial& p) {
  double lo = INFINITY, hi = -INFINITY;
  for (std::uint64_t b = 0; b < (std::uint64_t{1} << p.num_vars()); ++b) {
    const double e = evaluate(p, oracle::assignment(b, p.num_vars()));
    lo = std::min(lo, e);
    hi = std::max(hi, e);
  }
  return hi - lo;
}

std::vector<SpinAssignment> minimizers(const SpinPolynomial& p) {
  std::vector<SpinAssignment> out;
  for (auto b : oracle::exhaustive_minimum(p).minimizers) out.push_back(oracle::assignment(b, p.num_vars()));
  return out;
}

}  // namespace

TEST_CASE("labeling") {
  const SpinPolynomial empty(3);
  const Label up[] = {{0, 1}};
  for (const auto& z : minimizers(apply_labeling(empty, up, 1.0))) CHECK(z[0] == 1);
  const Label down[] = {{0, -1}};
  for (const auto& z : minimizers(apply_labeling(empty, down, 1.0))) CHECK(z[0] == -1);
  CHECK(apply_labeling(empty, down, 2.5).coefficient_of({0}) == 2.5);

  const Label both[] = {{1, 1}, {1, -1}};
  const auto cancelled = apply_labeling(empty, both, 1.0);
  CHECK(cancelled.coefficient_of({1}) == 0.0);
  CHECK(cancelled.num_terms() == 0);

  const Label bad[] = {{3, 1}};
  CHECK_THROWS_AS(apply_labeling(empty, bad, 1.0), DataError);
  CHECK_THROWS_AS(apply_labeling(empty, up, 0.0), ConfigError);
}

TEST_CASE("cardinality") {
  const auto two = minimizers(apply_cardinality(SpinPolynomial(2), 0, 1.0));
  REQUIRE(two.size() == 2);
  CHECK(two[0][0] == -two[0][1]);
  CHECK(two[1][0] == -two[1][1]);
  CHECK(oracle::exhaustive_minimum(apply_cardinality(SpinPolynomial(2), 0, 1.0)).min_energy == 0.0);

  const auto all = minimizers(apply_cardinality(SpinPolynomial(5), 5, 1.0));
  REQUIRE(all.size() == 1);
  CHECK(all[0] == SpinAssignment::all_up(5));

  const auto four = minimizers(apply_cardinality(SpinPolynomial(4), 2, 1.0));
  CHECK(four.size() == 4);
  for (const auto& z : four) CHECK(z.count_up() == 3);

  CHECK_THROWS_AS(apply_cardinality(SpinPolynomial(4), 1, 1.0), SolverError);
  CHECK_THROWS_AS(apply_cardinality(SpinPolynomial(4), 6, 1.0), SolverError);
  CHECK_THROWS_AS(apply_cardinality(SpinPolynomial(3), -2, 1.0), SolverError);
  CHECK_NOTHROW(apply_cardinality(SpinPolynomial(3), -3, 1.0));
  CHECK_THROWS_AS(apply_cardinality(SpinPolynomial(4), 0, -1.0), ConfigError);
}

TEST_CASE("cardinality expansion is exact") {
  for (std::size_t n = 1; n <= 10; ++n) {
    const auto base = build_combined(oracle::random_dataset(std::max<std::size_t>(n, 2), 2, n)).scaled(0.01);
    const auto poly = n >= 2 ? base : SpinPolynomial(1, 0.5);
    const long long c = static_cast<long long>(n % 2);
    const double lambda = 0.75;
    const auto pen = apply_cardinality(poly, c, lambda);
    for (std::uint64_t b = 0; b < (std::uint64_t{1} << n); ++b) {
      const auto z = oracle::assignment(b, n);
      long long s = 0;
      for (std::size_t i = 0; i < n; ++i) s += z[i];
      const double want = evaluate(poly, z) + lambda * static_cast<double>((c - s) * (c - s));
      CHECK(evaluate(pen, z) == doctest::Approx(want).epsilon(1e-12));
    }
  }
}

TEST_CASE("links") {
  const SpinPolynomial empty(3);
  const Link ml[] = {{0, 1, 1}};
  for (const auto& z : minimizers(apply_links(empty, ml, 1.0))) CHECK(z[0] == z[1]);
  const Link cl[] = {{0, 1, -1}};
  for (const auto& z : minimizers(apply_links(empty, cl, 1.0))) CHECK(z[0] != z[1]);
  const Link both[] = {{0, 1, 1}, {0, 1, -1}};
  const auto cancelled = apply_links(empty, both, 1.0);
  CHECK(cancelled.num_terms() == 0);
  CHECK(minimizers(cancelled).size() == 8);
  const Link self[] = {{1, 1, 1}};
  CHECK_THROWS_AS(apply_links(empty, self, 1.0), DataError);
}

TEST_CASE("links from revealed labels") {
  const int classes[] = {0, 0, 1, 1, 0};
  const std::size_t same[] = {0, 1};
  auto l = derive_links_from_labels(same, classes);
  REQUIRE(l.size() == 1);
  CHECK(l[0] == Link{0, 1, 1});
  const std::size_t diff[] = {3, 1};
  l = derive_links_from_labels(diff, classes);
  REQUIRE(l.size() == 1);
  CHECK(l[0] == Link{1, 3, -1});
  const std::size_t all[] = {4, 2, 0, 3, 1};
  CHECK(derive_links_from_labels(all, classes).size() == 10);
  const std::size_t none[] = {2};
  CHECK(derive_links_from_labels(none, classes).empty());
  const std::size_t dup[] = {2, 2};
  CHECK_THROWS_AS(derive_links_from_labels(dup, classes), DataError);

  const auto s = derive_links_sampled(all, classes, 4, 99);
  CHECK(s.size() == 4);
  CHECK(s == derive_links_sampled(all, classes, 4, 99));
  CHECK(std::is_sorted(s.begin(), s.end(), [](const Link& a, const Link& b) {
    return std::pair(a.i, a.j) < std::pair(b.i, b.j);
  }));
  CHECK(derive_links_sampled(all, classes, 50, 1).size() == 10);
}

TEST_CASE("constraint set validation") {
  CHECK_NOTHROW(ConstraintSet(4, {{0, 1}}, 1.0, Cardinality{0, 1.0}, {{0, 1, 1}}, 2.0));
  CHECK_THROWS_AS(ConstraintSet(4, {{4, 1}}, 1.0, {}, {}, {}), DataError);
  CHECK_THROWS_AS(ConstraintSet(4, {{0, 0}}, 1.0, {}, {}, {}), DataError);
  CHECK_THROWS_AS(ConstraintSet(4, {}, {}, {}, {{1, 0, 1}}, 1.0), DataError);
  CHECK_THROWS_AS(ConstraintSet(4, {}, {}, {}, {{0, 1, 1}, {0, 1, -1}}, 1.0), DataError);
  CHECK_THROWS_AS(ConstraintSet(4, {}, {}, {}, {{0, 1, 2}}, 1.0), DataError);
  CHECK_THROWS_AS(ConstraintSet(4, {}, {}, {}, {{0, 1, 1}}, 0.0), ConfigError);
  CHECK_THROWS_AS(ConstraintSet(4, {}, {}, Cardinality{1, 1.0}, {}, {}), SolverError);
  CHECK_THROWS_AS(ConstraintSet(4, {}, {}, Cardinality{0, -3.0}, {}, {}), ConfigError);
}

TEST_CASE("default penalty weight") {
  const auto p = build_intra_star(oracle::random_dataset(5, 2, 0));
  CHECK(default_penalty_weight(p) == 2.0 * p.max_abs_coefficient() * 5.0);
  CHECK(default_penalty_weight(SpinPolynomial(3, 7.0)) == 6.0);
  const ConstraintSet cs(5, {{2, -1}}, {}, {}, {}, {});
  const auto withw = cs.with_default_weights(p);
  CHECK(withw.label_lambda() == default_penalty_weight(p));
  CHECK(apply_constraints(p, cs) == apply_labeling(p, cs.labels(), default_penalty_weight(p)));
}

TEST_CASE("weights above the base energy spread force feasibility") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 24; ++trial) {
    const std::size_t n = 3 + trial % 8;
    const auto data = oracle::random_dataset(n, 2, 200 + trial);
    const auto kind = kAllObjectiveKinds[trial % 5];
    const auto base = build_objective(kind, data);
    const double lambda = 1.01 * spread(base) + 1e-9;
    INFO("trial " << trial << " kind " << to_string(kind) << " n " << n);

    const long long c = static_cast<long long>(n) - 2 * static_cast<long long>(rng() % (n + 1));
    const ConstraintSet card(n, {}, {}, Cardinality{c, lambda}, {}, {});
    for (const auto& z : minimizers(apply_constraints(base, card))) CHECK(satisfies(z, card));

    // Links consistent with a hidden labeling are always jointly satisfiable.
    std::vector<int> hidden(n);
    for (auto& h : hidden) h = static_cast<int>(rng() % 2);
    std::vector<std::size_t> revealed;
    for (std::size_t i = 0; i < n; ++i) {
      if (rng() % 2) revealed.push_back(i);
    }
    const ConstraintSet links(n, {}, {}, {}, derive_links_from_labels(revealed, hidden), lambda);
    for (const auto& z : minimizers(apply_constraints(base, links))) CHECK(satisfies(z, links));

    std::vector<Label> labels;
    for (std::size_t i : revealed) labels.push_back({static_cast<VarIndex>(i), hidden[i] ? 1 : -1});
    const ConstraintSet lab(n, labels, lambda, {}, {}, {});
    for (const auto& z : minimizers(apply_constraints(base, lab))) CHECK(satisfies(z, lab));
  }
}

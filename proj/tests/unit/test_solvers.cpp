#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "hamclust/cluster_state.hpp"
#include "hamclust/constraints.hpp"
#include "hamclust/error.hpp"
#include "hamclust/hamiltonian.hpp"
#include "hamclust/kmeans.hpp"
#include "hamclust/objectives.hpp"
#include "hamclust/quadratize.hpp"
#include "hamclust/solvers.hpp"
#include "support/oracles.hpp"

using namespace hamclust;

namespace {

SpinPolynomial pair_poly(double c) {
  PolynomialBuilder b(2);
  b.add({0, 1}, c);
  return b.build();
}

std::vector<SpinAssignment> as_assignments(const std::vector<std::uint64_t>& idx, std::size_t n) {
  std::vector<SpinAssignment> out;
  for (auto b : idx) out.push_back(oracle::assignment(b, n));
  return out;
}

}  // namespace

TEST_CASE("brute force small examples") {
  const auto r = brute_force(pair_poly(1.0));
  CHECK(r.best_energy == -1.0);
  CHECK(r.best_assignment == oracle::assignment(1, 2));
  CHECK(r.symmetry_used);
  CHECK(r.num_evaluations == 2);

  BruteForceOptions all;
  all.collect_minimizers = true;
  CHECK(brute_force(pair_poly(1.0), all).minimizers == as_assignments({1, 2}, 2));

  const auto c = brute_force(SpinPolynomial(5, 3.25), all);
  CHECK(c.best_energy == 3.25);
  CHECK(c.best_assignment == SpinAssignment::all_up(5));
  CHECK(c.minimizers.size() == 32);

  const auto none = brute_force(SpinPolynomial(0, -1.5));
  CHECK(none.best_energy == -1.5);
  CHECK(none.best_assignment.size() == 0);

  CHECK_THROWS_AS(brute_force(SpinPolynomial(25)), SolverError);
  BruteForceOptions tight;
  tight.max_vars = 6;
  CHECK_THROWS_AS(brute_force(SpinPolynomial(7), tight), SolverError);
}

TEST_CASE("brute force matches the Hamiltonian diagonal") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto p = oracle::random_polynomial(12, 60, 2, seed);
    const auto diag = hamiltonian_diagonal(p);
    const auto it = std::min_element(diag.begin(), diag.end());
    const auto r = brute_force(p);
    CHECK(r.best_energy == *it);
    CHECK(r.best_assignment.basis_index() == static_cast<std::uint64_t>(it - diag.begin()));
  }
}

TEST_CASE("brute force agrees with exhaustive evaluation") {
  BruteForceOptions all;
  all.collect_minimizers = true;
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const std::size_t n = 1 + seed % 11;
    const auto p = oracle::random_polynomial(n, 3 * n, 1 + seed % 4, 100 + seed);
    const auto ex = oracle::exhaustive_minimum(p);
    const auto r = brute_force(p, all);
    INFO("seed " << seed);
    CHECK(r.best_energy == ex.min_energy);
    CHECK(r.best_assignment == oracle::assignment(ex.minimizers.front(), n));
    CHECK(r.minimizers == as_assignments(ex.minimizers, n));
    CHECK(r.symmetry_used == p.spin_flip_symmetric());
  }
  // Objectives are symmetric so half the space is enumerated.
  const auto p = build_combined(oracle::random_dataset(9, 2, 7));
  const auto r = brute_force(p, all);
  CHECK(r.symmetry_used);
  CHECK(r.num_evaluations == 256);
  CHECK(r.minimizers == as_assignments(oracle::exhaustive_minimum(p).minimizers, 9));
}

TEST_CASE("tie tolerance widens the minimizer set") {
  PolynomialBuilder b(3);
  b.add({0}, 1e-12);
  b.add({1}, 1.0);
  const auto p = b.build();
  BruteForceOptions exact;
  exact.collect_minimizers = true;
  CHECK(brute_force(p, exact).minimizers.size() == 2);
  BruteForceOptions loose = exact;
  loose.tie_tolerance = 1e-9;
  CHECK(brute_force(p, loose).minimizers.size() == 4);
  loose.tie_tolerance = -1.0;
  CHECK_THROWS_AS(brute_force(p, loose), ConfigError);
}

TEST_CASE("incremental energy tracks fresh evaluation") {
  std::mt19937_64 rng(5);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const std::size_t n = 3 + seed;
    const auto p = seed % 2 ? oracle::random_polynomial(n, 8 * n, 4, seed)
                            : build_inter(oracle::random_dataset(n, 2, seed));
    SpinState s(p, oracle::random_assignment(n, rng));
    const double scale = std::max(1.0, std::abs(p.constant()) + p.abs_coefficient_sum());
    for (int step = 0; step < 2000; ++step) {
      const auto i = static_cast<VarIndex>(rng() % n);
      auto after = s.spins();
      after.flip(i);
      const double want = evaluate(p, after) - evaluate(p, s.spins());
      CHECK(std::abs(s.delta(i) - want) <= 1e-9 * scale);
      s.flip(i);
      CHECK(std::abs(s.energy() - evaluate(p, s.spins())) <= 1e-9 * scale);
      if (step % 500 == 0) s.resync();
    }
  }
  CHECK_THROWS_AS(SpinState(pair_poly(1.0), SpinAssignment::all_up(3)), DataError);
}

TEST_CASE("annealing schedule validation") {
  AnnealSchedule s;
  CHECK_NOTHROW(s.validate());
  CHECK(s.sweeps == 2000);
  CHECK(s.restarts == 10);
  s.beta_final = 0.01;
  CHECK_THROWS_AS(s.validate(), ConfigError);
  s = {};
  s.sweeps = 0;
  CHECK_THROWS_AS(s.validate(), ConfigError);
  s = {};
  s.beta_initial = 0.0;
  CHECK_THROWS_AS(s.validate(), ConfigError);
  s = {};
  s.restarts = 0;
  CHECK_THROWS_AS(simulated_annealing(pair_poly(1.0), s), ConfigError);
}

TEST_CASE("frozen annealing descends to a minimizer") {
  AnnealSchedule s;
  s.beta_initial = s.beta_final = 1e9;
  s.sweeps = 3;
  s.restarts = 4;
  const auto r = simulated_annealing(pair_poly(1.0), s);
  CHECK(r.best_energy == -1.0);
  for (double e : r.per_restart_energies) CHECK(e == -1.0);
}

TEST_CASE("annealing invariants") {
  AnnealSchedule s;
  s.sweeps = 300;
  s.restarts = 6;
  for (std::uint64_t seed = 0; seed < 12; ++seed) {
    const std::size_t n = 4 + seed % 9;
    const auto data = oracle::random_dataset(n, 2, seed);
    const auto p = seed % 3 == 0 ? build_inter(data) : build_objective(kAllObjectiveKinds[seed % 5], data);
    s.seed = seed;
    const auto r = simulated_annealing(p, s);
    CHECK(r.best_energy == evaluate(p, r.best_assignment));
    CHECK(r.best_energy == *std::min_element(r.per_restart_energies.begin(), r.per_restart_energies.end()));
    CHECK(r.per_restart_energies.size() == 6);
    CHECK(r.best_energy <= evaluate(p, SpinAssignment::all_up(n)) + 1e-9 * p.abs_coefficient_sum());
    CHECK(brute_force(p).best_energy <= r.best_energy);
    CHECK(r.seed_used == seed);

    const auto again = simulated_annealing(p, s);
    CHECK(again.best_assignment == r.best_assignment);
    CHECK(again.per_restart_energies == r.per_restart_energies);
    const auto threaded = simulated_annealing(p, s, 3);
    CHECK(threaded.best_assignment == r.best_assignment);
    CHECK(threaded.per_restart_energies == r.per_restart_energies);
  }
}

TEST_CASE("annealing usually finds the exact optimum on small instances") {
  int hits = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto p = build_combined(oracle::random_dataset(14, 3, 300 + seed));
    AnnealSchedule s;
    s.seed = seed;
    const auto r = simulated_annealing(p, s);
    const auto exact = brute_force(p);
    hits += std::abs(r.best_energy - exact.best_energy) <= 1e-9 * std::abs(exact.best_energy);
  }
  CHECK(hits >= 18);
}

TEST_CASE("quadratization of quadratic input is the plain conversion") {
  const auto p = oracle::random_polynomial(6, 15, 2, 9);
  const auto q = quadratize(p);
  CHECK(q.auxiliaries.empty());
  CHECK(q.form == spin_to_binary(p));
  CHECK(q.num_original == 6);
  CHECK_THROWS_AS(quadratize(p, 0.0), ConfigError);
}

TEST_CASE("quadratizing a single quartic term") {
  PolynomialBuilder b(4);
  b.add({0, 1, 2, 3}, 1.0);
  const auto p = b.build();
  const auto q = quadratize(p);
  CHECK(q.form.num_vars() > 4);
  CHECK(q.auxiliaries.front() == AuxiliaryVariable{4, 0, 1});
  const auto check = verify_quadratization(p, q);
  CHECK(check.sound);
  CHECK(check.original_min == -1.0);
  CHECK(check.quadratic_min == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(check.original_minimizers == 8);

  // A penalty far below the coefficient scale lets auxiliaries cheat, and
  // the verification notices.
  const auto weak = quadratize(p, 0.01);
  CHECK_FALSE(verify_quadratization(p, weak).sound);
}

TEST_CASE("consistent auxiliaries reproduce the original energy") {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const std::size_t n = 4 + seed % 3;
    const auto p = build_inter(oracle::random_dataset(n, 2, 60 + seed));
    const auto q = quadratize(p);
    for (std::uint64_t bidx = 0; bidx < (std::uint64_t{1} << n); ++bidx) {
      const auto z = oracle::assignment(bidx, n);
      const auto y = lift(q, to_binary(z));
      CHECK(evaluate(q.form, y) == doctest::Approx(evaluate(p, z)).epsilon(1e-9).scale(q.penalty));
    }
  }
}

TEST_CASE("default penalty keeps random quartic instances sound") {
  for (std::uint64_t seed = 0; seed < 12; ++seed) {
    const std::size_t n = 4 + seed % 3;
    const auto p = seed % 2 ? build_inter(oracle::random_dataset(n, 1 + seed % 3, 80 + seed))
                            : oracle::random_polynomial(n, 10, 4, 80 + seed);
    const auto q = quadratize(p);
    INFO("seed " << seed << " aux " << q.auxiliaries.size());
    CHECK(verify_quadratization(p, q).sound);
  }
}

TEST_CASE("k-means recovers separated clouds") {
  Eigen::MatrixXd x(40, 2);
  std::mt19937_64 rng(2);
  std::normal_distribution<double> g(0.0, 0.3);
  for (int i = 0; i < 40; ++i) {
    x(i, 0) = g(rng) + (i < 20 ? -5.0 : 5.0);
    x(i, 1) = g(rng);
  }
  const auto r = kmeans(Dataset(x));
  for (int i = 1; i < 40; ++i) CHECK((r.labels[i] == r.labels[0]) == (i < 20));
  CHECK(r.centers.rows() == 2);

  const auto same = kmeans(Dataset(Eigen::MatrixXd::Constant(6, 3, 1.5)));
  CHECK(same.inertia == 0.0);

  const auto a = kmeans(Dataset(x), {.k = 3, .seed = 11});
  const auto b = kmeans(Dataset(x), {.k = 3, .seed = 11});
  CHECK(a.labels == b.labels);
  CHECK(a.inertia == b.inertia);
  CHECK_THROWS_AS(kmeans(Dataset(x), {.k = 1}), ConfigError);
  CHECK_THROWS_AS(kmeans(Dataset(x), {.k = 41}), ConfigError);
}

TEST_CASE("k-means inertia is a local optimum of reassignment") {
  const auto data = oracle::random_dataset(60, 3, 17);
  const auto r = kmeans(data, {.k = 3, .n_init = 5, .seed = 1});
  for (std::size_t i = 0; i < data.size(); ++i) {
    const double own = (data.point(i) - r.centers.row(r.labels[i])).squaredNorm();
    for (Eigen::Index j = 0; j < 3; ++j) CHECK(own <= (data.point(i) - r.centers.row(j)).squaredNorm());
  }
}

TEST_CASE("cluster statistics track the raw objectives") {
  std::mt19937_64 rng(8);
  for (auto kind : {ObjectiveKind::intra, ObjectiveKind::intra_star, ObjectiveKind::inter, ObjectiveKind::combined}) {
    const auto data = oracle::random_dataset(9, 3, 14);
    ClusterState s(kind, data, oracle::random_assignment(9, rng), 0.5);
    for (int step = 0; step < 300; ++step) {
      const auto i = static_cast<VarIndex>(rng() % 9);
      auto after = s.spins();
      after.flip(i);
      const double scale = 1e-9 * std::max(1.0, std::abs(raw_objective(kind, data, after)));
      CHECK(std::abs(s.delta(i) - 0.5 * (raw_objective(kind, data, after) - raw_objective(kind, data, s.spins()))) <=
            scale);
      s.flip(i);
      CHECK(std::abs(s.energy() - 0.5 * raw_objective(kind, data, s.spins())) <= scale);
    }
  }
  CHECK_THROWS_AS(ClusterState(ObjectiveKind::weighted_maxcut, oracle::random_dataset(3, 1, 0), SpinAssignment::all_up(3)),
                  ConfigError);
}

TEST_CASE("max coefficient without building") {
  for (std::size_t n : {2u, 3u, 5u, 9u}) {
    const auto data = oracle::random_dataset(n, 2, n);
    for (auto kind : kAllObjectiveKinds) {
      const auto poly = build_objective(kind, data);
      const auto mags = objective_coefficient_magnitudes(kind, data);
      CHECK(objective_max_abs_coefficient(kind, data) == doctest::Approx(poly.max_abs_coefficient()).epsilon(1e-12));
      CHECK(mags.abs_sum == doctest::Approx(poly.abs_coefficient_sum()).epsilon(1e-12));
    }
    const auto inter = build_inter(data);
    CHECK(inter.num_terms() <= inter_term_count(n));
  }
}

TEST_CASE("statistics-driven annealing reaches the optimum") {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const auto data = oracle::random_dataset(12, 2, 700 + seed);
    for (auto kind : {ObjectiveKind::inter, ObjectiveKind::combined}) {
      AnnealSchedule s;
      s.seed = seed;
      const auto r = simulated_annealing(kind, data, s);
      const auto exact = brute_force(build_objective(kind, data));
      CHECK(r.best_energy == raw_objective(kind, data, r.best_assignment));
      CHECK(r.best_energy == doctest::Approx(exact.best_energy).epsilon(1e-9));
      const auto again = simulated_annealing(kind, data, s, 4);
      CHECK(again.best_assignment == r.best_assignment);
    }
  }
}

TEST_CASE("statistics-driven annealing with a penalty polynomial") {
  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    const auto data = oracle::random_dataset(11, 2, 900 + seed);
    const auto base = build_inter(data);
    const ConstraintSet cs(11, {{0, 1}, {5, -1}}, std::nullopt, Cardinality{1, default_penalty_weight(base)},
                           {{2, 7, -1}}, std::nullopt);
    const auto weighted = cs.with_default_weights(base);
    const auto penalty = apply_constraints(SpinPolynomial(11), weighted);
    const auto full = apply_constraints(base, weighted);
    AnnealSchedule s;
    s.seed = seed;
    const auto r = simulated_annealing(ObjectiveKind::inter, data, s, 1, &penalty);
    CHECK(r.best_energy == doctest::Approx(raw_objective(ObjectiveKind::inter, data, r.best_assignment) +
                                           evaluate(penalty, r.best_assignment)));
    const auto exact = brute_force(full);
    CHECK(evaluate(full, r.best_assignment) == doctest::Approx(exact.best_energy).epsilon(1e-9));
    CHECK(satisfies(r.best_assignment, weighted));
    CHECK(simulated_annealing(ObjectiveKind::inter, data, s, 3, &penalty).best_assignment == r.best_assignment);
  }
}

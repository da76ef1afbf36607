#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include "hamclust/error.hpp"
#include "hamclust/solvers.hpp"

namespace hamclust {

namespace {

constexpr std::uint64_t kResyncEvery = 1024;

struct Candidate {
  double energy;
  std::uint64_t index;
};

}  // namespace

SolveResult brute_force(const SpinPolynomial& poly, const BruteForceOptions& options) {
  const std::size_t n = poly.num_vars();
  if (n > options.max_vars) {
    throw SolverError("brute force is capped at " + std::to_string(options.max_vars) + " variables, got " +
                      std::to_string(n));
  }
  if (options.tie_tolerance < 0.0 || !std::isfinite(options.tie_tolerance)) {
    throw ConfigError("tie tolerance must be a finite non-negative number");
  }

  SolveResult result;
  result.symmetry_used = n > 0 && poly.spin_flip_symmetric();
  const std::size_t free_vars = result.symmetry_used ? n - 1 : n;
  const std::uint64_t states = std::uint64_t{1} << free_vars;
  result.num_evaluations = states;

  // Incremental energies decide which states deserve a fresh evaluation.
  const double scale = std::abs(poly.constant()) + poly.abs_coefficient_sum();
  const double slack = 1e-9 * std::max(1.0, scale);
  auto window = [&](double best) { return options.tie_tolerance * std::max(1.0, std::abs(best)); };

  SpinState state(poly, SpinAssignment::all_up(n));
  std::uint64_t index = 0;
  bool have_best = false;
  Candidate best{0.0, 0};
  std::vector<Candidate> near;

  auto consider = [&] {
    if (have_best && state.energy() > best.energy + window(best.energy) + slack) return;
    const Candidate c{evaluate(poly, state.spins()), index};
    if (!have_best || c.energy < best.energy || (c.energy == best.energy && c.index < best.index)) {
      best = c;
      have_best = true;
    }
    if (options.collect_minimizers && c.energy <= best.energy + window(best.energy)) {
      near.push_back(c);
      if (near.size() > 2 * options.max_minimizers) {
        std::erase_if(near, [&](const Candidate& x) { return x.energy > best.energy + window(best.energy); });
        if (near.size() > options.max_minimizers) throw SolverError("minimizer set exceeds the configured limit");
      }
    }
  };

  consider();
  for (std::uint64_t k = 1; k < states; ++k) {
    const auto bit = static_cast<std::size_t>(std::countr_zero(k));
    state.flip(static_cast<VarIndex>(n - 1 - bit));
    index ^= std::uint64_t{1} << bit;
    if ((k & (kResyncEvery - 1)) == 0) state.resync();
    consider();
  }

  result.best_assignment = SpinAssignment::from_basis_index(best.index, n);
  result.best_energy = best.energy;

  if (options.collect_minimizers) {
    std::erase_if(near, [&](const Candidate& x) { return x.energy > best.energy + window(best.energy); });
    const std::size_t per_state = result.symmetry_used ? 2 : 1;
    if (near.size() * per_state > options.max_minimizers) {
      throw SolverError("minimizer set exceeds the configured limit");
    }
    for (const auto& c : near) {
      auto z = SpinAssignment::from_basis_index(c.index, n);
      if (result.symmetry_used) result.minimizers.push_back(z.negated());
      result.minimizers.push_back(std::move(z));
    }
    std::sort(result.minimizers.begin(), result.minimizers.end());
  }
  return result;
}

}  // namespace hamclust

#include <algorithm>
#include <cmath>
#include <string>
#include <thread>

#include "hamclust/cluster_state.hpp"
#include "hamclust/error.hpp"
#include "hamclust/objectives.hpp"
#include "hamclust/random.hpp"
#include "hamclust/solvers.hpp"

namespace hamclust {

void AnnealSchedule::validate() const {
  if (sweeps < 1) throw ConfigError("sweeps must be at least 1");
  if (restarts < 1) throw ConfigError("restarts must be at least 1");
  if (!(beta_initial > 0.0) || !std::isfinite(beta_initial)) throw ConfigError("beta_initial must be positive");
  if (!(beta_final >= beta_initial) || !std::isfinite(beta_final)) {
    throw ConfigError("beta_final must be finite and at least beta_initial");
  }
}

namespace {

constexpr std::size_t kResyncSweeps = 64;

struct RestartOutcome {
  SpinAssignment best;
  double energy;
};

std::vector<double> beta_ladder(const AnnealSchedule& s) {
  std::vector<double> betas(s.sweeps);
  const double ratio = s.beta_final / s.beta_initial;
  for (std::size_t k = 0; k < s.sweeps; ++k) {
    const double t = s.sweeps == 1 ? 0.0 : static_cast<double>(k) / static_cast<double>(s.sweeps - 1);
    betas[k] = s.beta_initial * std::pow(ratio, t);
  }
  return betas;
}

template <class State>
SpinAssignment anneal_once(State state, const std::vector<double>& betas, Rng& rng) {
  const auto n = static_cast<VarIndex>(state.spins().size());
  SpinAssignment best = state.spins();
  double best_energy = state.energy();
  for (std::size_t sweep = 0; sweep < betas.size(); ++sweep) {
    const double beta = betas[sweep];
    for (VarIndex i = 0; i < n; ++i) {
      const double d = state.delta(i);
      if (d <= 0.0 || rng.uniform() < std::exp(-beta * d)) {
        state.flip(i);
        if (state.energy() < best_energy) {
          best_energy = state.energy();
          best = state.spins();
        }
      }
    }
    if ((sweep + 1) % kResyncSweeps == 0) state.resync();
  }
  return best;
}

// Objective statistics plus a penalty polynomial, flipped in lockstep.
struct SumState {
  ClusterState objective;
  SpinState penalty;

  const SpinAssignment& spins() const noexcept { return objective.spins(); }
  double energy() const noexcept { return objective.energy() + penalty.energy(); }
  double delta(VarIndex i) const { return objective.delta(i) + penalty.delta(i); }
  void flip(VarIndex i) {
    objective.flip(i);
    penalty.flip(i);
  }
  void resync() {
    objective.resync();
    penalty.resync();
  }
};

SpinAssignment random_start(std::size_t n, Rng& rng) {
  std::vector<std::int8_t> start(n);
  for (auto& s : start) s = (rng.next() >> 63) ? 1 : -1;
  return SpinAssignment(std::move(start));
}

// Runs every restart, possibly threaded, and merges by (energy, assignment).
template <class Restart>
SolveResult run_restarts(const AnnealSchedule& schedule, std::size_t n, std::size_t threads, Restart&& restart) {
  std::vector<RestartOutcome> outcomes(schedule.restarts);
  auto run = [&](std::size_t r) { outcomes[r] = restart(derive_seed(schedule.seed, r)); };
  threads = std::clamp<std::size_t>(threads, 1, schedule.restarts);
  if (threads == 1) {
    for (std::size_t r = 0; r < schedule.restarts; ++r) run(r);
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < threads; ++t) {
      pool.emplace_back([&, t] {
        for (std::size_t r = t; r < schedule.restarts; r += threads) run(r);
      });
    }
  }

  SolveResult result;
  result.seed_used = schedule.seed;
  result.num_evaluations = static_cast<std::uint64_t>(schedule.sweeps) * schedule.restarts * n;
  std::size_t winner = 0;
  for (std::size_t r = 0; r < outcomes.size(); ++r) {
    result.per_restart_energies.push_back(outcomes[r].energy);
    const auto& w = outcomes[winner];
    if (outcomes[r].energy < w.energy || (outcomes[r].energy == w.energy && outcomes[r].best < w.best)) winner = r;
  }
  result.best_assignment = outcomes[winner].best;
  result.best_energy = outcomes[winner].energy;
  return result;
}

}  // namespace

SolveResult simulated_annealing(const SpinPolynomial& poly, const AnnealSchedule& schedule, std::size_t threads) {
  schedule.validate();
  if (poly.num_vars() == 0) throw DataError("cannot anneal a polynomial with no variables");
  const double sigma = poly.max_abs_coefficient();
  const SpinPolynomial scaled = schedule.normalize && sigma > 0.0 ? poly.scaled(1.0 / sigma) : poly;
  const auto betas = beta_ladder(schedule);
  return run_restarts(schedule, poly.num_vars(), threads, [&](std::uint64_t seed) {
    Rng rng(seed);
    auto start = random_start(poly.num_vars(), rng);
    auto best = anneal_once(SpinState(scaled, std::move(start)), betas, rng);
    const double e = evaluate(poly, best);
    return RestartOutcome{std::move(best), e};
  });
}

SolveResult simulated_annealing(ObjectiveKind kind, const Dataset& data, const AnnealSchedule& schedule,
                                std::size_t threads, const SpinPolynomial* extra) {
  schedule.validate();
  if (extra && extra->num_vars() != data.size()) {
    throw DataError("extra polynomial has " + std::to_string(extra->num_vars()) + " variables, data has " +
                    std::to_string(data.size()) + " points");
  }
  double sigma = 1.0;
  if (schedule.normalize) {
    sigma = objective_max_abs_coefficient(kind, data);
    if (extra) sigma = std::max(sigma, extra->max_abs_coefficient());
  }
  const double scale = sigma > 0.0 ? 1.0 / sigma : 1.0;
  const auto betas = beta_ladder(schedule);
  const SpinPolynomial scaled_extra = extra ? extra->scaled(scale) : SpinPolynomial(data.size());
  return run_restarts(schedule, data.size(), threads, [&](std::uint64_t seed) {
    Rng rng(seed);
    auto start = random_start(data.size(), rng);
    SpinAssignment best;
    if (extra) {
      best = anneal_once(SumState{ClusterState(kind, data, start, scale), SpinState(scaled_extra, start)}, betas, rng);
    } else {
      best = anneal_once(ClusterState(kind, data, std::move(start), scale), betas, rng);
    }
    double e = raw_objective(kind, data, best);
    if (extra) e += evaluate(*extra, best);
    return RestartOutcome{std::move(best), e};
  });
}

}  // namespace hamclust

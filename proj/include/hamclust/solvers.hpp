#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "hamclust/dataset.hpp"
#include "hamclust/objectives.hpp"
#include "hamclust/polynomial.hpp"
#include "hamclust/spin.hpp"

namespace hamclust {

inline constexpr std::size_t kMaxBruteForceVars = 24;

struct SolveResult {
  SpinAssignment best_assignment;
  /// Always evaluate(poly, best_assignment), computed fresh.
  double best_energy = 0.0;
  std::uint64_t num_evaluations = 0;
  /// One entry per annealing restart; empty for exact solves.
  std::vector<double> per_restart_energies;
  std::optional<std::uint64_t> seed_used;
  /// Brute force enumerated only half of the hypercube.
  bool symmetry_used = false;
  /// Filled on request by brute_force, ascending.
  std::vector<SpinAssignment> minimizers;
};

/// Spins plus cached term values and local fields of one polynomial.
///
/// field(i) = sum over terms T containing i of coeff(T) * prod_{k in T} z_k, so
/// flipping i changes the energy by -2 field(i). A flip costs the total size
/// of the terms incident to i; querying a delta is O(1).
class SpinState {
 public:
  /// Keeps a reference to poly; it must outlive the state.
  SpinState(const SpinPolynomial& poly, SpinAssignment start);

  const SpinAssignment& spins() const noexcept { return z_; }
  double energy() const noexcept { return energy_; }
  double delta(VarIndex i) const noexcept { return -2.0 * field_[i]; }
  void flip(VarIndex i);
  /// Recomputes energy and fields from the cached term values, discarding
  /// accumulated rounding.
  void resync();

 private:
  const SpinPolynomial* poly_;
  std::vector<std::size_t> incident_offsets_;
  std::vector<std::uint32_t> incident_terms_;
  std::vector<double> value_;
  std::vector<double> field_;
  SpinAssignment z_;
  double energy_ = 0.0;
};

struct BruteForceOptions {
  std::size_t max_vars = kMaxBruteForceVars;
  bool collect_minimizers = false;
  /// Assignments within tie_tolerance * max(1, |min|) of the minimum count as
  /// minimizers. 0 keeps exact ties only.
  double tie_tolerance = 0.0;
  std::size_t max_minimizers = std::size_t{1} << 16;
};

/// Exact minimum by Gray-code enumeration with incremental energies; every
/// near-best candidate is re-evaluated from scratch. Spin-flip symmetric input
/// is enumerated with z_0 = +1 only. The reported assignment is the lowest in
/// basis order among exact minimizers. Throws SolverError above max_vars.
SolveResult brute_force(const SpinPolynomial& poly, const BruteForceOptions& options = {});

struct AnnealSchedule {
  std::size_t sweeps = 2000;
  double beta_initial = 0.1;
  double beta_final = 50.0;
  std::size_t restarts = 10;
  std::uint64_t seed = 0;
  /// Anneal poly / max|coeff| so the beta range means the same thing for
  /// every objective. Energies are always reported unscaled.
  bool normalize = true;

  /// Throws ConfigError.
  void validate() const;
};

/// Single-spin-flip Metropolis, sequential sweeps, geometric beta ladder,
/// random start per restart. Restart r draws from derive_seed(seed, r);
/// restarts may run on `threads` threads without changing the result.
SolveResult simulated_annealing(const SpinPolynomial& poly, const AnnealSchedule& schedule, std::size_t threads = 1);

/// The same dynamics driven by ClusterState instead of a polynomial, for
/// centroid-based kinds whose polynomial is too large to build (Inter on
/// hundreds of points). Normalization uses the max |coeff| of the polynomial
/// that would have been built. Energies are raw_objective values, plus
/// evaluate(*extra, z) when an extra (typically quadratic penalty) polynomial
/// over the same points is given.
SolveResult simulated_annealing(ObjectiveKind kind, const Dataset& data, const AnnealSchedule& schedule,
                                std::size_t threads = 1, const SpinPolynomial* extra = nullptr);

}  // namespace hamclust

#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hamclust/clustering.hpp"
#include "hamclust/dataset.hpp"
#include "hamclust/kmeans.hpp"
#include "hamclust/metrics.hpp"
#include "hamclust/objectives.hpp"
#include "hamclust/preprocess.hpp"

namespace hamclust {

/// Mean and sample standard deviation (0 for a single value).
struct Summary {
  double mean = 0.0;
  double std = 0.0;
  std::size_t count = 0;
};

Summary summarize(const std::vector<double>& values);

struct TrialRecord {
  std::size_t trial = 0;
  std::string method;
  MetricsReport metrics;
  std::optional<double> energy;
  std::string solver;
};

struct MethodSummary {
  std::string method;
  /// Keyed by rand_index, silhouette, dist_centroid, intra_sum, inter_sum;
  /// a metric that was never defined is absent.
  std::map<std::string, Summary> metrics;
};

struct ProtocolResult {
  std::string protocol;
  std::vector<MethodSummary> methods;
  /// Trial-major, methods in configuration order.
  std::vector<TrialRecord> trials;
};

struct ExactProtocolConfig {
  std::vector<ObjectiveKind> kinds{kAllObjectiveKinds.begin(), kAllObjectiveKinds.end()};
  bool include_kmeans = true;
  std::size_t trials = 150;
  std::size_t subsample = 16;
  std::uint64_t seed = 0;
  /// Applied to every drawn subsample separately.
  Preprocessing preprocessing = Preprocessing::none;
  KMeansOptions kmeans;
  std::size_t threads = 1;
};

/// Trial t draws `subsample` rows without replacement from
/// derive_seed(seed, t), preprocesses them, brute-forces every kind and runs
/// k-means with seed derive_seed(seed, t) as well. data must be labeled.
ProtocolResult run_exact_protocol(const Dataset& data, const ExactProtocolConfig& config);

struct SaProtocolConfig {
  std::vector<ObjectiveKind> kinds{kAllObjectiveKinds.begin(), kAllObjectiveKinds.end()};
  bool include_kmeans = true;
  /// Independent annealing runs per kind; repeat r uses derive_seed(seed, r).
  std::size_t repeats = 10;
  std::uint64_t seed = 0;
  /// Applied once to the whole dataset.
  Preprocessing preprocessing = Preprocessing::none;
  SolverConfig solver = solver_config(SolverMethod::annealing);
  KMeansOptions kmeans;
  std::size_t threads = 1;
};

ProtocolResult run_sa_protocol(const Dataset& data, const SaProtocolConfig& config);

enum class SweepMode { links, cardinality };
enum class PenaltyRule {
  standard,   // default_penalty_weight
  dominant,   // dominance_weight: every minimizer is feasible
  fixed,
};

std::string_view to_string(SweepMode m) noexcept;
SweepMode parse_sweep_mode(std::string_view name);
std::string_view to_string(PenaltyRule r) noexcept;
PenaltyRule parse_penalty_rule(std::string_view name);

struct SweepConfig {
  ObjectiveKind kind = ObjectiveKind::combined;
  SweepMode mode = SweepMode::links;
  /// links: revealed fraction; cardinality: share of the first class.
  /// Empty selects 0, 0.1, ..., 1 or 0.1, ..., 0.9 respectively.
  std::vector<double> grid;
  std::size_t trials = 50;
  std::uint64_t seed = 0;
  Preprocessing preprocessing = Preprocessing::none;
  SolverConfig solver;
  PenaltyRule penalty = PenaltyRule::standard;
  double fixed_lambda = 1.0;
  /// cardinality: points per drawn subset; 0 means min(50, smaller class size)
  /// rounded down to even.
  std::size_t subset_size = 0;
  /// links: cap on generated links per trial (0 keeps all pairs).
  std::size_t max_links = 0;
  std::size_t threads = 1;
};

struct SweepPoint {
  double x = 0.0;
  Summary rand_index;
  /// cardinality only: |sum z - C| over trials.
  std::optional<Summary> cardinality_gap;
  /// Trials whose target C was moved by one to match the subset's parity.
  std::size_t parity_adjusted = 0;
};

struct SweepResult {
  ObjectiveKind kind{};
  SweepMode mode{};
  std::vector<SweepPoint> points;
};

/// Links mode reveals round(x N) points per trial and adds all pairwise
/// must-link / cannot-link constraints among them. Cardinality mode draws
/// round(x M) points of the first class and M minus that of the second, and
/// targets C = difference of the two counts. data must be labeled with
/// exactly two classes for cardinality mode.
SweepResult run_constraint_sweep(const Dataset& data, const SweepConfig& config);

}  // namespace hamclust

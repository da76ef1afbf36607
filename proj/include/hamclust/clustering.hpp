#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "hamclust/constraints.hpp"
#include "hamclust/dataset.hpp"
#include "hamclust/objectives.hpp"
#include "hamclust/solvers.hpp"

namespace hamclust {

enum class SolverMethod { automatic, brute_force, annealing };

std::string_view to_string(SolverMethod m) noexcept;
SolverMethod parse_solver_method(std::string_view name);

struct SolverConfig {
  SolverMethod method = SolverMethod::automatic;
  /// automatic picks brute force up to this many points, annealing above.
  std::size_t exact_limit = 16;
  AnnealSchedule schedule;
  /// Unconstrained Inter problems with more terms than this anneal on
  /// cluster statistics instead of a materialized polynomial.
  std::size_t inter_term_budget = 2'000'000;
  std::size_t threads = 1;
};

inline SolverConfig solver_config(SolverMethod method) {
  SolverConfig c;
  c.method = method;
  return c;
}

struct BinarySplit {
  SpinAssignment assignment;
  double energy = 0.0;
  /// "brute-force", "annealing" or "annealing-statistics".
  std::string solver;
};

/// Minimizes the kind's objective (plus constraints, if any) on data.
BinarySplit solve_binary(ObjectiveKind kind, const Dataset& data, const SolverConfig& config,
                         const ConstraintSet* constraints = nullptr);

enum class SplitOrder {
  largest_wcss,  // one split per round: the leaf with the largest within-cluster SS
  breadth,       // every leaf of the round, largest first, until k leaves
};

/// "largest-wcss" or "breadth".
std::string_view to_string(SplitOrder order) noexcept;
SplitOrder parse_split_order(std::string_view name);

struct ClusterNode {
  std::vector<std::size_t> indices;  // rows of the root dataset, ascending
  double wcss = 0.0;
  std::optional<std::size_t> plus_child, minus_child;
  /// Set once the node has been split.
  std::optional<double> energy;
  std::string solver;
  std::optional<SpinAssignment> split;
};

struct ClusterTree {
  ObjectiveKind kind{};
  std::vector<ClusterNode> nodes;  // nodes[0] is the root

  /// Leaf node ids, depth first with the +1 child before the -1 child.
  std::vector<std::size_t> leaves() const;
  /// Cluster id per root row: position of its leaf in leaves().
  std::vector<int> labels() const;
};

/// Repeated binary splits until k leaves exist. Singleton leaves are never
/// chosen. A split whose minimizer leaves one side empty (all points
/// identical, say) detaches the point farthest from the centroid instead and
/// marks the solver "forced". Node r anneals with derive_seed(seed, r).
/// Throws ConfigError unless 2 <= k <= N.
ClusterTree k_cluster(const Dataset& data, std::size_t k, ObjectiveKind kind, const SolverConfig& config,
                      SplitOrder order = SplitOrder::largest_wcss);

}  // namespace hamclust

#include "hamclust/clustering.hpp"

#include <algorithm>
#include <string>

#include "hamclust/error.hpp"
#include "hamclust/random.hpp"

namespace hamclust {

std::string_view to_string(SolverMethod m) noexcept {
  switch (m) {
    case SolverMethod::automatic: return "auto";
    case SolverMethod::brute_force: return "brute-force";
    case SolverMethod::annealing: return "annealing";
  }
  return "?";
}

SolverMethod parse_solver_method(std::string_view name) {
  if (name == "auto") return SolverMethod::automatic;
  if (name == "brute-force" || name == "brute" || name == "exact") return SolverMethod::brute_force;
  if (name == "annealing" || name == "sa") return SolverMethod::annealing;
  throw ConfigError("unknown solver '" + std::string(name) + "' (expected auto, brute-force, annealing)");
}

std::string_view to_string(SplitOrder order) noexcept {
  return order == SplitOrder::breadth ? "breadth" : "largest-wcss";
}

SplitOrder parse_split_order(std::string_view name) {
  if (name == "largest-wcss") return SplitOrder::largest_wcss;
  if (name == "breadth") return SplitOrder::breadth;
  throw ConfigError("unknown split order '" + std::string(name) + "' (expected largest-wcss, breadth)");
}

BinarySplit solve_binary(ObjectiveKind kind, const Dataset& data, const SolverConfig& config,
                         const ConstraintSet* constraints) {
  const bool constrained = constraints && !constraints->empty();
  const bool exact = config.method == SolverMethod::brute_force ||
                     (config.method == SolverMethod::automatic && data.size() <= config.exact_limit);
  if (!exact && kind == ObjectiveKind::inter && inter_term_count(data.size()) > config.inter_term_budget) {
    if (!constrained) {
      auto r = simulated_annealing(kind, data, config.schedule, config.threads);
      return {std::move(r.best_assignment), r.best_energy, "annealing-statistics"};
    }
    const auto mags = objective_coefficient_magnitudes(kind, data);
    const auto weighted = constraints->with_default_weights(default_penalty_weight(mags.max_abs, data.size()));
    const auto penalty = apply_constraints(SpinPolynomial(data.size()), weighted);
    auto r = simulated_annealing(kind, data, config.schedule, config.threads, &penalty);
    return {std::move(r.best_assignment), r.best_energy, "annealing-statistics"};
  }
  SpinPolynomial poly = build_objective(kind, data);
  if (constrained) poly = apply_constraints(poly, *constraints);
  if (exact) {
    auto r = brute_force(poly);
    return {std::move(r.best_assignment), r.best_energy, "brute-force"};
  }
  auto r = simulated_annealing(poly, config.schedule, config.threads);
  return {std::move(r.best_assignment), r.best_energy, "annealing"};
}

namespace {

double wcss_of(const Dataset& data, const std::vector<std::size_t>& idx) {
  Eigen::RowVectorXd mu = Eigen::RowVectorXd::Zero(static_cast<Eigen::Index>(data.dim()));
  for (auto i : idx) mu += data.point(i);
  mu /= static_cast<double>(idx.size());
  double s = 0.0;
  for (auto i : idx) s += (data.point(i) - mu).squaredNorm();
  return s;
}

void split_node(const Dataset& data, ClusterTree& tree, std::size_t id, const SolverConfig& base) {
  SolverConfig config = base;
  config.schedule.seed = derive_seed(base.schedule.seed, id);
  const auto leaf = data.subset(tree.nodes[id].indices);
  auto split = solve_binary(tree.kind, leaf, config);

  const std::size_t up = split.assignment.count_up();
  if (up == 0 || up == leaf.size()) {
    const Eigen::RowVectorXd mu = leaf.points().colwise().mean();
    std::size_t far = 0;
    double fd = -1.0;
    for (std::size_t i = 0; i < leaf.size(); ++i) {
      const double d = (leaf.point(i) - mu).squaredNorm();
      if (d > fd) {
        fd = d;
        far = i;
      }
    }
    auto z = SpinAssignment::all_up(leaf.size());
    z.flip(far);
    split.energy = raw_objective(tree.kind, leaf, z);
    split.assignment = std::move(z);
    split.solver += "+forced";
  }

  ClusterNode plus, minus;
  for (std::size_t i = 0; i < leaf.size(); ++i) {
    (split.assignment[i] > 0 ? plus : minus).indices.push_back(tree.nodes[id].indices[i]);
  }
  plus.wcss = wcss_of(data, plus.indices);
  minus.wcss = wcss_of(data, minus.indices);
  auto& node = tree.nodes[id];
  node.energy = split.energy;
  node.solver = std::move(split.solver);
  node.split = std::move(split.assignment);
  node.plus_child = tree.nodes.size();
  node.minus_child = tree.nodes.size() + 1;
  tree.nodes.push_back(std::move(plus));
  tree.nodes.push_back(std::move(minus));
}

}  // namespace

std::vector<std::size_t> ClusterTree::leaves() const {
  std::vector<std::size_t> out, stack{0};
  while (!stack.empty()) {
    const auto id = stack.back();
    stack.pop_back();
    const auto& n = nodes[id];
    if (!n.plus_child) {
      out.push_back(id);
      continue;
    }
    stack.push_back(*n.minus_child);
    stack.push_back(*n.plus_child);
  }
  return out;
}

std::vector<int> ClusterTree::labels() const {
  std::vector<int> out(nodes.front().indices.size(), -1);
  const auto ls = leaves();
  for (std::size_t c = 0; c < ls.size(); ++c) {
    for (auto i : nodes[ls[c]].indices) out[i] = static_cast<int>(c);
  }
  return out;
}

ClusterTree k_cluster(const Dataset& data, std::size_t k, ObjectiveKind kind, const SolverConfig& config,
                      SplitOrder order) {
  if (k < 2 || k > data.size()) {
    throw ConfigError("k must lie in [2, " + std::to_string(data.size()) + "], got " + std::to_string(k));
  }
  ClusterTree tree;
  tree.kind = kind;
  ClusterNode root;
  root.indices.resize(data.size());
  for (std::size_t i = 0; i < data.size(); ++i) root.indices[i] = i;
  root.wcss = wcss_of(data, root.indices);
  tree.nodes.push_back(std::move(root));

  // Splittable leaves, largest WCSS first, lowest id on ties.
  auto candidates = [&] {
    std::vector<std::size_t> c;
    for (auto id : tree.leaves()) {
      if (tree.nodes[id].indices.size() >= 2) c.push_back(id);
    }
    std::stable_sort(c.begin(), c.end(), [&](std::size_t a, std::size_t b) {
      if (tree.nodes[a].wcss != tree.nodes[b].wcss) return tree.nodes[a].wcss > tree.nodes[b].wcss;
      return a < b;
    });
    return c;
  };

  std::size_t leaf_count = 1;
  while (leaf_count < k) {
    const auto c = candidates();
    if (c.empty()) throw SolverError("no leaf with two or more points is left to split");
    const std::size_t take = order == SplitOrder::breadth ? c.size() : 1;
    for (std::size_t t = 0; t < take && leaf_count < k; ++t) {
      split_node(data, tree, c[t], config);
      ++leaf_count;
    }
  }
  return tree;
}

}  // namespace hamclust

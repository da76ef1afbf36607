#include "hamclust/protocols.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

#include "hamclust/constraints.hpp"
#include "hamclust/error.hpp"
#include "hamclust/parallel.hpp"
#include "hamclust/random.hpp"

namespace hamclust {

Summary summarize(const std::vector<double>& values) {
  Summary s;
  s.count = values.size();
  if (values.empty()) return s;
  double sum = 0.0;
  for (double v : values) sum += v;
  s.mean = sum / static_cast<double>(values.size());
  if (values.size() > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - s.mean) * (v - s.mean);
    s.std = std::sqrt(ss / static_cast<double>(values.size() - 1));
  }
  return s;
}

namespace {

constexpr const char* kKMeans = "kmeans";

std::vector<std::string> method_names(const std::vector<ObjectiveKind>& kinds, bool kmeans) {
  std::vector<std::string> out;
  for (auto k : kinds) out.emplace_back(to_string(k));
  if (kmeans) out.emplace_back(kKMeans);
  return out;
}

std::vector<MethodSummary> aggregate(const std::vector<std::string>& methods, const std::vector<TrialRecord>& trials) {
  std::vector<MethodSummary> out;
  for (const auto& m : methods) {
    std::map<std::string, std::vector<double>> values;
    for (const auto& t : trials) {
      if (t.method != m) continue;
      auto put = [&](const char* key, const std::optional<double>& v) {
        if (v) values[key].push_back(*v);
      };
      put("rand_index", t.metrics.rand_index);
      put("silhouette", t.metrics.silhouette);
      put("dist_centroid", t.metrics.dist_centroid);
      put("intra_sum", t.metrics.intra_sum);
      put("inter_sum", t.metrics.inter_sum);
    }
    MethodSummary s{m, {}};
    for (const auto& [key, v] : values) s.metrics[key] = summarize(v);
    out.push_back(std::move(s));
  }
  return out;
}

void require_labels(const Dataset& data) {
  if (!data.has_labels()) throw DataError("protocol needs ground-truth labels on dataset '" + data.name() + "'");
}

TrialRecord objective_trial(std::size_t trial, ObjectiveKind kind, const Dataset& data, const SolverConfig& solver) {
  auto split = solve_binary(kind, data, solver);
  const auto pred = split.assignment.cluster_ids();
  return {trial, std::string(to_string(kind)), evaluate_partition(data, pred, data.labels()), split.energy,
          split.solver};
}

TrialRecord kmeans_trial(std::size_t trial, const Dataset& data, KMeansOptions opts, std::uint64_t seed) {
  opts.seed = seed;
  const auto r = kmeans(data, opts);
  return {trial, kKMeans, evaluate_partition(data, r.labels, data.labels()), r.inertia, "lloyd"};
}

}  // namespace

ProtocolResult run_exact_protocol(const Dataset& data, const ExactProtocolConfig& config) {
  require_labels(data);
  if (config.subsample > data.size()) {
    throw ConfigError("subsample " + std::to_string(config.subsample) + " exceeds the " +
                      std::to_string(data.size()) + " available points");
  }
  if (config.subsample < 2) throw ConfigError("subsample must be at least 2");
  if (config.subsample > kMaxBruteForceVars) {
    throw ConfigError("subsample above " + std::to_string(kMaxBruteForceVars) + " cannot be brute-forced");
  }
  const auto methods = method_names(config.kinds, config.include_kmeans);
  const SolverConfig exact = solver_config(SolverMethod::brute_force);

  std::vector<std::vector<TrialRecord>> per_trial(config.trials);
  parallel_for(config.trials, config.threads, [&](std::size_t t) {
    const std::uint64_t seed = derive_seed(config.seed, t);
    Rng rng(seed);
    auto rows = rng.sample(data.size(), config.subsample);
    std::sort(rows.begin(), rows.end());
    const auto sub = preprocess(data.subset(rows), config.preprocessing);
    for (auto kind : config.kinds) per_trial[t].push_back(objective_trial(t, kind, sub, exact));
    if (config.include_kmeans) per_trial[t].push_back(kmeans_trial(t, sub, config.kmeans, seed));
  });

  ProtocolResult result;
  result.protocol = "exact";
  for (auto& v : per_trial) {
    for (auto& r : v) result.trials.push_back(std::move(r));
  }
  result.methods = aggregate(methods, result.trials);
  return result;
}

ProtocolResult run_sa_protocol(const Dataset& data, const SaProtocolConfig& config) {
  require_labels(data);
  if (config.repeats < 1) throw ConfigError("repeats must be at least 1");
  const auto methods = method_names(config.kinds, config.include_kmeans);
  const auto prepared = preprocess(data, config.preprocessing);
  const std::size_t per_repeat = methods.size();

  std::vector<TrialRecord> slots(config.repeats * per_repeat);
  parallel_for(slots.size(), config.threads, [&](std::size_t job) {
    const std::size_t r = job / per_repeat, m = job % per_repeat;
    const std::uint64_t seed = derive_seed(config.seed, r);
    if (m < config.kinds.size()) {
      SolverConfig solver = config.solver;
      solver.schedule.seed = seed;
      solver.threads = 1;
      slots[job] = objective_trial(r, config.kinds[m], prepared, solver);
    } else {
      slots[job] = kmeans_trial(r, prepared, config.kmeans, seed);
    }
  });

  ProtocolResult result;
  result.protocol = "sa";
  result.trials = std::move(slots);
  result.methods = aggregate(methods, result.trials);
  return result;
}

std::string_view to_string(SweepMode m) noexcept { return m == SweepMode::links ? "links" : "cardinality"; }

SweepMode parse_sweep_mode(std::string_view name) {
  if (name == "links") return SweepMode::links;
  if (name == "cardinality") return SweepMode::cardinality;
  throw ConfigError("unknown sweep mode '" + std::string(name) + "' (expected links, cardinality)");
}

std::string_view to_string(PenaltyRule r) noexcept {
  switch (r) {
    case PenaltyRule::standard: return "standard";
    case PenaltyRule::dominant: return "dominant";
    case PenaltyRule::fixed: return "fixed";
  }
  return "?";
}

PenaltyRule parse_penalty_rule(std::string_view name) {
  if (name == "standard") return PenaltyRule::standard;
  if (name == "dominant") return PenaltyRule::dominant;
  if (name == "fixed") return PenaltyRule::fixed;
  throw ConfigError("unknown penalty rule '" + std::string(name) + "' (expected standard, dominant, fixed)");
}

namespace {

double penalty_for(const SweepConfig& c, const Dataset& data) {
  if (c.penalty == PenaltyRule::fixed) return c.fixed_lambda;
  const auto mags = objective_coefficient_magnitudes(c.kind, data);
  switch (c.penalty) {
    case PenaltyRule::standard: return default_penalty_weight(mags.max_abs, data.size());
    case PenaltyRule::dominant: return dominance_weight(mags.abs_sum);
    case PenaltyRule::fixed: return c.fixed_lambda;
  }
  return c.fixed_lambda;
}

struct SweepTrial {
  double rand_index = 0.0;
  std::optional<double> gap;
  bool parity_adjusted = false;
};

SweepTrial links_trial(const Dataset& prepared, const SweepConfig& config, double fraction, std::uint64_t seed) {
  const std::size_t n = prepared.size();
  Rng rng(seed);
  const auto reveal = static_cast<std::size_t>(std::llround(fraction * static_cast<double>(n)));
  const auto revealed = rng.sample(n, std::min(reveal, n));
  const auto& truth = prepared.labels();
  auto links = config.max_links > 0 ? derive_links_sampled(revealed, truth, config.max_links, rng.next())
                                    : derive_links_from_labels(revealed, truth);

  SolverConfig solver = config.solver;
  solver.schedule.seed = seed;
  SweepTrial out;
  if (links.empty()) {
    out.rand_index = rand_index(truth, solve_binary(config.kind, prepared, solver).assignment.cluster_ids());
    return out;
  }
  const ConstraintSet cs(n, {}, {}, {}, std::move(links), penalty_for(config, prepared));
  const auto split = solve_binary(config.kind, prepared, solver, &cs);
  out.rand_index = rand_index(truth, split.assignment.cluster_ids());
  return out;
}

SweepTrial cardinality_trial(const Dataset& data, const SweepConfig& config, double share, std::size_t m,
                             const std::vector<std::size_t>& first, const std::vector<std::size_t>& second,
                             std::uint64_t seed) {
  Rng rng(seed);
  const auto want_a = static_cast<std::size_t>(std::llround(share * static_cast<double>(m)));
  const std::size_t na = std::min(want_a, first.size());
  const std::size_t nb = std::min(m - na, second.size());
  std::vector<std::size_t> rows;
  for (auto p : rng.sample(first.size(), na)) rows.push_back(first[p]);
  for (auto p : rng.sample(second.size(), nb)) rows.push_back(second[p]);
  std::sort(rows.begin(), rows.end());
  const auto sub = preprocess(data.subset(rows), config.preprocessing);

  SweepTrial out;
  long long target = static_cast<long long>(na) - static_cast<long long>(nb);
  const long long size = static_cast<long long>(sub.size());
  if (((target % 2) + 2) % 2 != size % 2) {
    target += target > 0 ? -1 : 1;
    out.parity_adjusted = true;
  }
  const ConstraintSet cs(sub.size(), {}, {}, Cardinality{target, penalty_for(config, sub)}, {}, {});
  SolverConfig solver = config.solver;
  solver.schedule.seed = seed;
  const auto split = solve_binary(config.kind, sub, solver, &cs);
  long long achieved = 0;
  for (std::size_t i = 0; i < split.assignment.size(); ++i) achieved += split.assignment[i];
  out.rand_index = rand_index(sub.labels(), split.assignment.cluster_ids());
  out.gap = static_cast<double>(std::llabs(achieved - target));
  return out;
}

}  // namespace

SweepResult run_constraint_sweep(const Dataset& data, const SweepConfig& config) {
  require_labels(data);
  std::vector<double> grid = config.grid;
  if (grid.empty()) {
    if (config.mode == SweepMode::links) {
      for (int i = 0; i <= 10; ++i) grid.push_back(i / 10.0);
    } else {
      for (int i = 1; i <= 9; ++i) grid.push_back(i / 10.0);
    }
  }
  for (double g : grid) {
    if (!(g >= 0.0 && g <= 1.0)) throw ConfigError("sweep grid values must lie in [0, 1]");
  }

  std::vector<std::size_t> first, second;
  std::size_t m = 0;
  const Dataset prepared = config.mode == SweepMode::links ? preprocess(data, config.preprocessing) : data;
  if (config.mode == SweepMode::cardinality) {
    std::set<int> classes(data.labels().begin(), data.labels().end());
    if (classes.size() != 2) throw DataError("cardinality sweep needs exactly two classes");
    for (std::size_t i = 0; i < data.size(); ++i) (data.labels()[i] == *classes.begin() ? first : second).push_back(i);
    m = config.subset_size > 0 ? config.subset_size
                                : std::min<std::size_t>({50, first.size(), second.size()}) / 2 * 2;
    if (m < 2 || m > data.size()) throw ConfigError("cardinality subset size must lie in [2, N]");
  }

  const std::size_t jobs = grid.size() * config.trials;
  std::vector<SweepTrial> out(jobs);
  parallel_for(jobs, config.threads, [&](std::size_t job) {
    const std::size_t g = job / config.trials, t = job % config.trials;
    const std::uint64_t seed = derive_seed(derive_seed(config.seed, g), t);
    out[job] = config.mode == SweepMode::links ? links_trial(prepared, config, grid[g], seed)
                                               : cardinality_trial(data, config, grid[g], m, first, second, seed);
  });

  SweepResult result{config.kind, config.mode, {}};
  for (std::size_t g = 0; g < grid.size(); ++g) {
    std::vector<double> ri, gap;
    SweepPoint p;
    p.x = grid[g];
    for (std::size_t t = 0; t < config.trials; ++t) {
      const auto& r = out[g * config.trials + t];
      ri.push_back(r.rand_index);
      if (r.gap) gap.push_back(*r.gap);
      p.parity_adjusted += r.parity_adjusted;
    }
    p.rand_index = summarize(ri);
    if (config.mode == SweepMode::cardinality) p.cardinality_gap = summarize(gap);
    result.points.push_back(p);
  }
  return result;
}

}  // namespace hamclust

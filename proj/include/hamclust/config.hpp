#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hamclust/clustering.hpp"
#include "hamclust/objectives.hpp"
#include "hamclust/preprocess.hpp"
#include "hamclust/protocols.hpp"
#include "hamclust/synthetic.hpp"

namespace hamclust {

enum class Protocol { single, exact, sa, constraint_sweep, kcluster };

std::string_view to_string(Protocol p) noexcept;
Protocol parse_protocol(std::string_view name);

/// Everything a run needs. The text form is one `key = value` per line;
/// `#` starts a comment. Lists are comma separated, Gaussian means and
/// covariances separate clusters with `;` (covariances row-major).
///
///   protocol        single | exact | sa | constraint-sweep | kcluster
///   data            CSV path            synthetic   gaussian
///   gaussian_means / gaussian_covariances / gaussian_counts
///   header, label_column, exclude_label, preprocessing
///   objectives      list of kind names, or all
///   kmeans, constraints, solver, exact_limit, inter_term_budget
///   sweeps, beta_initial, beta_final, restarts, normalize
///   trials, subsample, repeats
///   sweep_mode, grid, penalty, lambda, subset_size, max_links
///   k, split_order, output, seed, threads
struct RunConfig {
  Protocol protocol = Protocol::single;

  std::string data;
  std::string synthetic;  // "" or "gaussian"
  GaussianSpec gaussian = fig8_like_gaussian();
  bool header = true;
  std::string label_column = "class";
  std::optional<int> exclude_label;
  Preprocessing preprocessing = Preprocessing::none;

  std::vector<ObjectiveKind> objectives{kAllObjectiveKinds.begin(), kAllObjectiveKinds.end()};
  bool kmeans = true;
  std::string constraints;

  SolverConfig solver;

  /// Unset: 150 for exact, 50 for constraint-sweep.
  std::optional<std::size_t> trials;
  std::size_t subsample = 16;
  std::size_t repeats = 10;

  SweepMode sweep_mode = SweepMode::links;
  std::vector<double> grid;
  PenaltyRule penalty = PenaltyRule::standard;
  double lambda = 1.0;
  std::size_t subset_size = 0;
  std::size_t max_links = 0;

  std::size_t k = 2;
  SplitOrder split_order = SplitOrder::largest_wcss;

  std::string output = "results";
  std::uint64_t seed = 0;
  /// 0 defers to CLUSTER_THREADS, then 1.
  std::size_t threads = 0;
};

/// Sets one key from its text form. ConfigError on an unknown key or a bad
/// value.
void apply_setting(RunConfig& config, std::string_view key, std::string_view value);

/// ConfigError names the offending line.
RunConfig parse_run_config(std::string_view text, RunConfig base = {});
RunConfig load_run_config(const std::filesystem::path& path, RunConfig base = {});
/// Every key, sorted, in a form parse_run_config reads back unchanged.
std::string serialize(const RunConfig& config);

/// Cross-field checks: exactly one data source, known protocol needs, etc.
void validate(const RunConfig& config);

/// config.threads if positive, else CLUSTER_THREADS if set (ConfigError when
/// it is not a positive integer), else 1.
std::size_t resolve_threads(const RunConfig& config);

}  // namespace hamclust

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "hamclust/config.hpp"
#include "hamclust/constraints.hpp"
#include "hamclust/csv.hpp"
#include "hamclust/error.hpp"
#include "hamclust/json_io.hpp"
#include "hamclust/objectives.hpp"
#include "hamclust/quadratize.hpp"
#include "hamclust/run.hpp"
#include "hamclust/synthetic.hpp"

using namespace hamclust;

namespace {

enum ExitCode { kOk = 0, kInternal = 1, kConfig = 2, kData = 3, kSolver = 4 };

// Flag name, config key, help text.
struct FlagSpec {
  const char* flag;
  const char* key;
  const char* help;
};

const std::vector<FlagSpec> kDataFlags = {
    {"--data", "data", "CSV file with one point per row"},
    {"--synthetic", "synthetic", "use a generated dataset instead (gaussian)"},
    {"--label-column", "label_column", "label column name or 0-based index (empty: none)"},
    {"--header", "header", "whether the CSV has a header row (true/false)"},
    {"--exclude-label", "exclude_label", "drop every row with this class label"},
    {"--preprocessing", "preprocessing", "none, minmax, zscore, pixel255 or l2"},
    {"--objective", "objectives", "comma-separated objectives, or all"},
    {"--kmeans", "kmeans", "also run the k-means baseline (true/false)"},
    {"--seed", "seed", "master seed"},
    {"--threads", "threads", "worker threads (default: CLUSTER_THREADS, else 1)"},
    {"--output", "output", "output directory"},
};

const std::vector<FlagSpec> kSolverFlags = {
    {"--solver", "solver", "auto, brute-force or annealing"},
    {"--exact-limit", "exact_limit", "largest N that auto sends to brute force"},
    {"--sweeps", "sweeps", "annealing sweeps per restart"},
    {"--restarts", "restarts", "annealing restarts"},
    {"--beta-initial", "beta_initial", "first inverse temperature"},
    {"--beta-final", "beta_final", "last inverse temperature"},
    {"--normalize", "normalize", "scale coefficients to max |c| = 1 before annealing"},
};

const std::vector<FlagSpec> kGaussianFlags = {
    {"--means", "gaussian_means", "cluster means, e.g. 0,0;2,0"},
    {"--covariances", "gaussian_covariances", "row-major covariances, e.g. 1,0,0,1;1,0,0,1"},
    {"--counts", "gaussian_counts", "points per cluster, e.g. 75,75"},
};

struct Command {
  CLI::App* app = nullptr;
  std::string config_file;
  std::vector<std::string> overrides;
  std::map<std::string, std::string> values;
  std::vector<FlagSpec> flags;
};

void add_flags(Command& cmd, const std::vector<FlagSpec>& flags) {
  for (const auto& f : flags) {
    cmd.app->add_option(f.flag, cmd.values[f.key], f.help);
    cmd.flags.push_back(f);
  }
}

Command& make_command(std::vector<std::unique_ptr<Command>>& all, CLI::App& app, const char* name, const char* help) {
  auto& cmd = *all.emplace_back(std::make_unique<Command>());
  cmd.app = app.add_subcommand(name, help);
  cmd.app->add_option("-c,--config", cmd.config_file, "key = value config file");
  cmd.app->add_option("--set", cmd.overrides, "extra key=value settings")->take_all();
  add_flags(cmd, kDataFlags);
  return cmd;
}

// File first, then --set, then dedicated flags.
RunConfig build_config(const Command& cmd, std::optional<Protocol> forced) {
  RunConfig config;
  if (!cmd.config_file.empty()) {
    config = load_run_config(cmd.config_file);
    if (forced) {
      RunConfig probe;
      probe.protocol = *forced == Protocol::single ? Protocol::exact : Protocol::single;
      const bool file_sets_protocol = load_run_config(cmd.config_file, probe).protocol == config.protocol;
      if (file_sets_protocol && config.protocol != *forced) {
        throw ConfigError("config file asks for protocol '" + std::string(to_string(config.protocol)) +
                          "' but the subcommand runs '" + std::string(to_string(*forced)) + "'");
      }
    }
  }
  if (forced) config.protocol = *forced;
  for (const auto& kv : cmd.overrides) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) throw ConfigError("--set expects key=value, got '" + kv + "'");
    apply_setting(config, kv.substr(0, eq), kv.substr(eq + 1));
  }
  for (const auto& f : cmd.flags) {
    if (cmd.app->count(f.flag) > 0) apply_setting(config, f.key, cmd.values.at(f.key));
  }
  if (cmd.app->count("--data") > 0 && cmd.app->count("--synthetic") > 0) {
    throw ConfigError("--data and --synthetic are mutually exclusive");
  }
  if (cmd.app->count("--data") > 0) config.synthetic.clear();
  if (cmd.app->count("--synthetic") > 0) config.data.clear();
  return config;
}

std::string timestamp(std::chrono::system_clock::time_point t) {
  const std::time_t tt = std::chrono::system_clock::to_time_t(t);
  std::tm tm{};
  gmtime_r(&tt, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

int run_protocol(const Command& cmd, std::optional<Protocol> forced, int argc, char** argv) {
  const RunConfig config = build_config(cmd, forced);
  const auto start = std::chrono::system_clock::now();
  const auto steady = std::chrono::steady_clock::now();
  const RunOutput out = execute(config);
  const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - steady).count();

  std::string command;
  for (int i = 0; i < argc; ++i) command += (i ? " " : "") + std::string(argv[i]);
  const nlohmann::json metadata = {{"started_at", timestamp(start)},
                                   {"finished_at", timestamp(std::chrono::system_clock::now())},
                                   {"elapsed_seconds", elapsed},
                                   {"threads", resolve_threads(config)},
                                   {"command", command},
                                   {"config", serialize(config)}};
  write_outputs(out, config.output, metadata);
  std::cout << out.report << "\nwrote " << (std::filesystem::path(config.output) / "results.json").string() << '\n';
  return kOk;
}

int run_export(const Command& cmd, const std::string& qubo_path, const std::optional<double>& penalty) {
  const RunConfig config = build_config(cmd, Protocol::single);
  validate(config);
  if (config.objectives.size() != 1) throw ConfigError("export needs exactly one --objective");
  const Dataset data = preprocess(load_dataset(config), config.preprocessing);
  SpinPolynomial poly = build_objective(config.objectives.front(), data);
  if (!config.constraints.empty()) {
    const auto cs = load_constraints(config.constraints, data.size()).with_default_weights(poly);
    poly = apply_constraints(poly, cs);
  }
  const auto q = quadratize(poly, penalty);
  const std::filesystem::path path =
      qubo_path.empty() ? std::filesystem::path(config.output) / "qubo.json" : std::filesystem::path(qubo_path);
  export_qubo(q.form, path);

  nlohmann::json aux = nlohmann::json::array();
  for (const auto& a : q.auxiliaries) aux.push_back({{"index", a.index}, {"left", a.left}, {"right", a.right}});
  nlohmann::json summary = {{"objective", to_string(config.objectives.front())},
                            {"num_original", q.num_original},
                            {"num_auxiliary", q.auxiliaries.size()},
                            {"num_vars", q.form.num_vars()},
                            {"penalty", q.penalty},
                            {"degree", poly.degree()},
                            {"auxiliaries", aux},
                            {"qubo", path.filename().string()}};
  write_text_file(path.parent_path() / (path.stem().string() + ".aux.json"), dump_json(summary));
  std::cout << "wrote " << path.string() << ": " << q.form.num_vars() << " binary variables (" << q.num_original
            << " original, " << q.auxiliaries.size() << " auxiliary), " << q.form.quadratic().size()
            << " quadratic terms\n";
  return kOk;
}

int run_synth(const Command& cmd, const std::string& csv_path) {
  RunConfig config = build_config(cmd, Protocol::single);
  GaussianSpec spec = config.gaussian;
  spec.seed = config.seed;
  const Dataset data = generate_gaussian(spec);
  const std::filesystem::path path =
      csv_path.empty() ? std::filesystem::path(config.output) / "gaussian.csv" : std::filesystem::path(csv_path);
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  save_csv(data, path);
  std::cout << "wrote " << path.string() << ": " << data.size() << " points in " << data.dim() << " dimensions, "
            << spec.means.size() << " clusters\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Centroid-based binary clustering as spin-polynomial minimization."};
  app.require_subcommand(1);
  std::vector<std::unique_ptr<Command>> commands;

  auto& run = make_command(commands, app, "run", "run the protocol named in the config");
  run.app->add_option("--protocol", run.values["protocol"], "single, exact, sa, constraint-sweep or kcluster");
  run.flags.push_back({"--protocol", "protocol", ""});
  add_flags(run, kSolverFlags);
  add_flags(run, kGaussianFlags);
  run.app->add_option("--constraints", run.values["constraints"], "constraint JSON (single protocol)");
  run.flags.push_back({"--constraints", "constraints", ""});

  auto& exact = make_command(commands, app, "exact", "brute-force every objective on repeated random subsamples");
  add_flags(exact, {{"--trials", "trials", "number of subsamples"}, {"--subsample", "subsample", "points per subsample"}});

  auto& sa = make_command(commands, app, "sa", "simulated annealing on the whole dataset");
  add_flags(sa, kSolverFlags);
  add_flags(sa, {{"--repeats", "repeats", "independent runs per objective"}});
  add_flags(sa, kGaussianFlags);

  auto& sweep = make_command(commands, app, "sweep", "constrained clustering over a grid of reveal fractions or shares");
  add_flags(sweep, kSolverFlags);
  add_flags(sweep, {{"--mode", "sweep_mode", "links or cardinality"},
                    {"--grid", "grid", "comma-separated grid values in [0, 1]"},
                    {"--trials", "trials", "trials per grid point"},
                    {"--penalty", "penalty", "standard, dominant or fixed"},
                    {"--lambda", "lambda", "weight for --penalty fixed"},
                    {"--subset-size", "subset_size", "cardinality mode: points per trial"},
                    {"--max-links", "max_links", "links mode: cap on links per trial (0: all pairs)"}});

  auto& kc = make_command(commands, app, "kcluster", "divisive clustering into k groups by repeated binary splits");
  add_flags(kc, kSolverFlags);
  add_flags(kc, {{"--k", "k", "number of clusters"}, {"--split-order", "split_order", "largest-wcss or breadth"}});

  auto& ex = make_command(commands, app, "export", "write the quadratized QUBO of one objective");
  std::string qubo_path;
  std::optional<double> quad_penalty;
  ex.app->add_option("--qubo", qubo_path, "QUBO JSON path (default: <output>/qubo.json)");
  ex.app->add_option("--quadratization-penalty", quad_penalty, "substitution penalty M");
  ex.app->add_option("--constraints", ex.values["constraints"], "constraint JSON folded into the objective");
  ex.flags.push_back({"--constraints", "constraints", ""});

  auto& syn = make_command(commands, app, "synth", "write a synthetic Gaussian dataset as CSV");
  std::string csv_path;
  syn.app->add_option("--csv", csv_path, "CSV path (default: <output>/gaussian.csv)");
  add_flags(syn, kGaussianFlags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kConfig;
  }

  try {
    if (run.app->parsed()) return run_protocol(run, std::nullopt, argc, argv);
    if (exact.app->parsed()) return run_protocol(exact, Protocol::exact, argc, argv);
    if (sa.app->parsed()) return run_protocol(sa, Protocol::sa, argc, argv);
    if (sweep.app->parsed()) return run_protocol(sweep, Protocol::constraint_sweep, argc, argv);
    if (kc.app->parsed()) return run_protocol(kc, Protocol::kcluster, argc, argv);
    if (ex.app->parsed()) return run_export(ex, qubo_path, quad_penalty);
    if (syn.app->parsed()) return run_synth(syn, csv_path);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    switch (e.category()) {
      case Error::Category::config: return kConfig;
      case Error::Category::data: return kData;
      case Error::Category::solver: return kSolver;
    }
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kInternal;
  }
  return kInternal;
}

#include "hamclust/run.hpp"

#include <cstdio>
#include <set>
#include <sstream>

#include "hamclust/csv.hpp"
#include "hamclust/error.hpp"
#include "hamclust/json_io.hpp"
#include "hamclust/kmeans.hpp"
#include "hamclust/metrics.hpp"
#include "hamclust/objectives.hpp"
#include "hamclust/synthetic.hpp"

namespace hamclust {

namespace {

using nlohmann::json;

const char* const kMetricKeys[] = {"rand_index", "silhouette", "dist_centroid", "intra_sum", "inter_sum"};
const char* const kMetricTitles[] = {"RI", "SS", "Dist Centroid", "Intra", "Inter"};

std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string num(const std::optional<double>& x) { return x ? num(*x) : std::string(); }

std::string fixed(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.3f", x);
  return buf;
}

json optional_number(const std::optional<double>& x) { return x ? json(*x) : json(nullptr); }

json config_echo(const RunConfig& config) {
  json out = json::object();
  std::istringstream in(serialize(config));
  std::string line;
  while (std::getline(in, line)) {
    const auto eq = line.find(" = ");
    const std::string key = line.substr(0, eq);
    if (key == "output" || key == "threads") continue;
    out[key] = line.substr(eq + 3);
  }
  return out;
}

json dataset_json(const Dataset& data) {
  json d = {{"name", data.name()}, {"num_points", data.size()}, {"num_features", data.dim()},
            {"labeled", data.has_labels()}};
  if (data.has_labels()) {
    std::set<int> classes(data.labels().begin(), data.labels().end());
    d["classes"] = std::vector<int>(classes.begin(), classes.end());
  }
  return d;
}

// Metrics in rows, methods in columns, "mean ± std" cells.
std::string summary_report(const ProtocolResult& r, const std::string& title) {
  std::ostringstream out;
  out << title << "\n\n|              |";
  for (const auto& m : r.methods) out << ' ' << m.method << " |";
  out << "\n|---|";
  for (std::size_t i = 0; i < r.methods.size(); ++i) out << "---|";
  out << '\n';
  for (std::size_t k = 0; k < 5; ++k) {
    out << "| " << kMetricTitles[k] << " |";
    for (const auto& m : r.methods) {
      const auto it = m.metrics.find(kMetricKeys[k]);
      if (it == m.metrics.end()) out << " - |";
      else out << ' ' << fixed(it->second.mean) << " ± " << fixed(it->second.std) << " |";
    }
    out << '\n';
  }
  return out.str();
}

std::string summary_csv(const ProtocolResult& r) {
  std::string out = "method,metric,mean,std,count\n";
  for (const auto& m : r.methods) {
    for (const auto* key : kMetricKeys) {
      const auto it = m.metrics.find(key);
      if (it == m.metrics.end()) continue;
      out += m.method + "," + key + "," + num(it->second.mean) + "," + num(it->second.std) + "," +
             std::to_string(it->second.count) + "\n";
    }
  }
  return out;
}

std::string trials_csv(const ProtocolResult& r) {
  std::string out = "trial,method,solver,energy,rand_index,silhouette,dist_centroid,intra_sum,inter_sum\n";
  for (const auto& t : r.trials) {
    const auto& m = t.metrics;
    out += std::to_string(t.trial) + "," + t.method + "," + t.solver + "," + num(t.energy) + "," + num(m.rand_index) +
           "," + num(m.silhouette) + "," + num(m.dist_centroid) + "," + num(m.intra_sum) + "," + num(m.inter_sum) + "\n";
  }
  return out;
}

// Heatmap cells: one row per (method, metric) mean, RI and SS only.
std::string heatmap_csv(const ProtocolResult& r) {
  std::string out = "method,RI,SS\n";
  for (const auto& m : r.methods) {
    const auto ri = m.metrics.find("rand_index"), ss = m.metrics.find("silhouette");
    out += m.method + "," + (ri == m.metrics.end() ? "" : num(ri->second.mean)) + "," +
           (ss == m.metrics.end() ? "" : num(ss->second.mean)) + "\n";
  }
  return out;
}

std::string assignments_csv(const Dataset& data, const std::vector<std::pair<std::string, std::vector<int>>>& columns) {
  std::string out;
  for (std::size_t k = 0; k < data.dim(); ++k) out += "x" + std::to_string(k) + ",";
  out += "truth";
  for (const auto& [name, _] : columns) out += "," + name;
  out += '\n';
  for (std::size_t i = 0; i < data.size(); ++i) {
    for (std::size_t k = 0; k < data.dim(); ++k) out += num(data(i, k)) + ",";
    if (data.has_labels()) out += std::to_string(data.labels()[i]);
    for (const auto& [_, labels] : columns) out += "," + std::to_string(labels[i]);
    out += '\n';
  }
  return out;
}

std::optional<std::span<const int>> truth_of(const Dataset& data) {
  if (!data.has_labels()) return std::nullopt;
  return std::span<const int>(data.labels());
}

SolverConfig solver_for(const RunConfig& config, std::size_t threads) {
  SolverConfig s = config.solver;
  s.schedule.seed = config.seed;
  s.threads = threads;
  return s;
}

KMeansOptions kmeans_for(const RunConfig& config, std::size_t k) {
  KMeansOptions o;
  o.k = k;
  o.seed = config.seed;
  return o;
}

RunOutput run_single(const RunConfig& config, const Dataset& raw, std::size_t threads) {
  const Dataset data = preprocess(raw, config.preprocessing);
  std::optional<ConstraintSet> constraints;
  if (!config.constraints.empty()) constraints = load_constraints(config.constraints, data.size());

  RunOutput out;
  json methods = json::array();
  std::vector<std::pair<std::string, std::vector<int>>> columns;
  std::string table = "method,solver,energy,rand_index,silhouette,dist_centroid,intra_sum,inter_sum,constraints_satisfied\n";
  std::ostringstream report;
  report << "single run on " << data.name() << " (N=" << data.size() << ", d=" << data.dim() << ")\n";

  const auto solver = solver_for(config, threads);
  auto record = [&](const std::string& name, const std::vector<int>& labels, std::optional<double> energy,
                    const std::string& solver_name, std::optional<bool> satisfied) {
    const auto m = evaluate_partition(data, labels, truth_of(data));
    json entry = {{"method", name},        {"solver", solver_name}, {"energy", optional_number(energy)},
                  {"metrics", to_json(m)}, {"labels", labels}};
    if (satisfied) entry["constraints_satisfied"] = *satisfied;
    methods.push_back(entry);
    table += name + "," + solver_name + "," + num(energy) + "," + num(m.rand_index) + "," + num(m.silhouette) + "," +
             num(m.dist_centroid) + "," + num(m.intra_sum) + "," + num(m.inter_sum) + "," +
             (satisfied ? (*satisfied ? "true" : "false") : "") + "\n";
    columns.emplace_back(name, labels);
    report << "  " << name << ": RI " << (m.rand_index ? fixed(*m.rand_index) : "-") << ", SS "
           << (m.silhouette ? fixed(*m.silhouette) : "-") << ", " << solver_name << "\n";
  };

  for (auto kind : config.objectives) {
    std::optional<ConstraintSet> weighted;
    if (constraints) weighted = constraints->with_default_weights(
        default_penalty_weight(objective_coefficient_magnitudes(kind, data).max_abs, data.size()));
    const auto split = solve_binary(kind, data, solver, weighted ? &*weighted : nullptr);
    std::optional<bool> ok;
    if (weighted) ok = satisfies(split.assignment, *weighted);
    record(std::string(to_string(kind)), split.assignment.cluster_ids(), split.energy, split.solver, ok);
  }
  if (config.kmeans) {
    const auto km = kmeans(data, kmeans_for(config, 2));
    record("kmeans", km.labels, std::nullopt, "lloyd", std::nullopt);
  }
  out.results["methods"] = methods;
  if (constraints) out.results["constraints"] = constraints_to_json(*constraints);
  out.tables = {{"summary.csv", table}, {"assignments.csv", assignments_csv(data, columns)}};
  out.report = report.str();
  return out;
}

RunOutput run_exact(const RunConfig& config, const Dataset& raw, std::size_t threads) {
  ExactProtocolConfig c;
  c.kinds = config.objectives;
  c.include_kmeans = config.kmeans;
  c.trials = config.trials.value_or(150);
  c.subsample = config.subsample;
  c.seed = config.seed;
  c.preprocessing = config.preprocessing;
  c.threads = threads;
  const auto r = run_exact_protocol(raw, c);
  RunOutput out;
  out.results = to_json(r);
  out.tables = {{"summary.csv", summary_csv(r)}, {"trials.csv", trials_csv(r)}, {"heatmap.csv", heatmap_csv(r)}};
  out.report = summary_report(r, "Exact solutions: " + raw.name() + ", " + std::to_string(c.trials) + " trials of " +
                                     std::to_string(c.subsample) + " points");
  return out;
}

RunOutput run_sa(const RunConfig& config, const Dataset& raw, std::size_t threads) {
  SaProtocolConfig c;
  c.kinds = config.objectives;
  c.include_kmeans = config.kmeans;
  c.repeats = config.repeats;
  c.seed = config.seed;
  c.preprocessing = config.preprocessing;
  c.solver = config.solver;
  if (c.solver.method == SolverMethod::automatic) c.solver.method = SolverMethod::annealing;
  c.threads = threads;
  const auto r = run_sa_protocol(raw, c);
  RunOutput out;
  out.results = to_json(r);
  out.tables = {{"summary.csv", summary_csv(r)}, {"trials.csv", trials_csv(r)}, {"heatmap.csv", heatmap_csv(r)}};
  out.report = summary_report(r, "Simulated annealing: " + raw.name() + " (N=" + std::to_string(raw.size()) + "), " +
                                     std::to_string(c.repeats) + " repeats");
  return out;
}

RunOutput run_sweep(const RunConfig& config, const Dataset& raw, std::size_t threads) {
  RunOutput out;
  json sweeps = json::array();
  std::string table = "kind,mode,x,rand_index_mean,rand_index_std,gap_mean,gap_std,trials,parity_adjusted\n";
  std::ostringstream report;
  report << "constraint sweep (" << to_string(config.sweep_mode) << ") on " << raw.name() << "\n";
  for (auto kind : config.objectives) {
    SweepConfig c;
    c.kind = kind;
    c.mode = config.sweep_mode;
    c.grid = config.grid;
    c.trials = config.trials.value_or(50);
    c.seed = config.seed;
    c.preprocessing = config.preprocessing;
    c.solver = config.solver;
    c.penalty = config.penalty;
    c.fixed_lambda = config.lambda;
    c.subset_size = config.subset_size;
    c.max_links = config.max_links;
    c.threads = threads;
    const auto r = run_constraint_sweep(raw, c);
    sweeps.push_back(to_json(r));
    report << "  " << to_string(kind) << ":";
    for (const auto& p : r.points) {
      table += std::string(to_string(kind)) + "," + std::string(to_string(r.mode)) + "," + num(p.x) + "," +
               num(p.rand_index.mean) + "," + num(p.rand_index.std) + "," +
               (p.cardinality_gap ? num(p.cardinality_gap->mean) + "," + num(p.cardinality_gap->std) : std::string(",")) +
               "," + std::to_string(p.rand_index.count) + "," + std::to_string(p.parity_adjusted) + "\n";
      report << ' ' << fixed(p.x) << ":" << fixed(p.rand_index.mean);
    }
    report << '\n';
  }
  out.results["sweeps"] = sweeps;
  out.tables = {{"sweep.csv", table}};
  out.report = report.str();
  return out;
}

RunOutput run_kcluster(const RunConfig& config, const Dataset& raw, std::size_t threads) {
  const Dataset data = preprocess(raw, config.preprocessing);
  RunOutput out;
  json trees = json::array();
  std::vector<std::pair<std::string, std::vector<int>>> columns;
  std::string table = "method,k,rand_index,silhouette\n";
  std::ostringstream report;
  report << "divisive clustering into k=" << config.k << " on " << data.name() << "\n";
  auto record = [&](const std::string& name, const std::vector<int>& labels, json extra) {
    MetricsReport m;
    if (data.has_labels()) m.rand_index = rand_index(data.labels(), labels);
    if (std::set<int>(labels.begin(), labels.end()).size() >= 2) m.silhouette = silhouette(data, labels);
    extra["method"] = name;
    extra["metrics"] = to_json(m);
    extra["labels"] = labels;
    trees.push_back(extra);
    table += name + "," + std::to_string(config.k) + "," + num(m.rand_index) + "," + num(m.silhouette) + "\n";
    columns.emplace_back(name, labels);
    report << "  " << name << ": RI " << (m.rand_index ? fixed(*m.rand_index) : "-") << ", SS "
           << (m.silhouette ? fixed(*m.silhouette) : "-") << "\n";
  };
  for (auto kind : config.objectives) {
    const auto tree = k_cluster(data, config.k, kind, solver_for(config, threads), config.split_order);
    record(std::string(to_string(kind)), tree.labels(), to_json(tree));
  }
  if (config.kmeans) record("kmeans", kmeans(data, kmeans_for(config, config.k)).labels, json::object());
  out.results["methods"] = trees;
  out.tables = {{"summary.csv", table}, {"assignments.csv", assignments_csv(data, columns)}};
  out.report = report.str();
  return out;
}

}  // namespace

Dataset load_dataset(const RunConfig& config) {
  Dataset data = [&] {
    if (!config.synthetic.empty()) {
      GaussianSpec spec = config.gaussian;
      spec.seed = config.seed;
      return generate_gaussian(spec);
    }
    CsvOptions o;
    o.header = config.header;
    if (!config.label_column.empty()) o.label_column = config.label_column;
    return load_csv(config.data, o);
  }();
  if (config.exclude_label) data = data.without_label(*config.exclude_label);
  return data;
}

nlohmann::json to_json(const Summary& s) { return {{"mean", s.mean}, {"std", s.std}, {"count", s.count}}; }

nlohmann::json to_json(const MetricsReport& m) {
  return {{"rand_index", optional_number(m.rand_index)},
          {"silhouette", optional_number(m.silhouette)},
          {"dist_centroid", optional_number(m.dist_centroid)},
          {"intra_sum", optional_number(m.intra_sum)},
          {"inter_sum", optional_number(m.inter_sum)}};
}

nlohmann::json to_json(const ProtocolResult& r) {
  json methods = json::array();
  for (const auto& m : r.methods) {
    json metrics = json::object();
    for (const auto& [key, s] : m.metrics) metrics[key] = to_json(s);
    methods.push_back({{"method", m.method}, {"metrics", metrics}});
  }
  json trials = json::array();
  for (const auto& t : r.trials) {
    trials.push_back({{"trial", t.trial},
                      {"method", t.method},
                      {"solver", t.solver},
                      {"energy", optional_number(t.energy)},
                      {"metrics", to_json(t.metrics)}});
  }
  return {{"protocol", r.protocol}, {"methods", methods}, {"trials", trials}};
}

nlohmann::json to_json(const SweepResult& r) {
  json points = json::array();
  for (const auto& p : r.points) {
    json e = {{"x", p.x}, {"rand_index", to_json(p.rand_index)}, {"parity_adjusted", p.parity_adjusted}};
    if (p.cardinality_gap) e["cardinality_gap"] = to_json(*p.cardinality_gap);
    points.push_back(e);
  }
  return {{"kind", to_string(r.kind)}, {"mode", to_string(r.mode)}, {"points", points}};
}

nlohmann::json to_json(const ClusterTree& tree) {
  json nodes = json::array();
  for (std::size_t id = 0; id < tree.nodes.size(); ++id) {
    const auto& n = tree.nodes[id];
    json e = {{"id", id}, {"size", n.indices.size()}, {"wcss", n.wcss}};
    if (n.plus_child) {
      e["children"] = {*n.plus_child, *n.minus_child};
      e["energy"] = optional_number(n.energy);
      e["solver"] = n.solver;
    }
    nodes.push_back(e);
  }
  json leaves = json::array();
  for (auto id : tree.leaves()) leaves.push_back(id);
  return {{"nodes", nodes}, {"leaves", leaves}};
}

RunOutput execute(const RunConfig& config) {
  validate(config);
  const std::size_t threads = resolve_threads(config);
  const Dataset raw = load_dataset(config);
  RunOutput out = [&] {
    switch (config.protocol) {
      case Protocol::single: return run_single(config, raw, threads);
      case Protocol::exact: return run_exact(config, raw, threads);
      case Protocol::sa: return run_sa(config, raw, threads);
      case Protocol::constraint_sweep: return run_sweep(config, raw, threads);
      case Protocol::kcluster: return run_kcluster(config, raw, threads);
    }
    throw ConfigError("unknown protocol");
  }();
  out.results["schema_version"] = 1;
  out.results["protocol"] = to_string(config.protocol);
  out.results["config"] = config_echo(config);
  out.results["dataset"] = dataset_json(raw);
  return out;
}

void write_outputs(const RunOutput& output, const std::filesystem::path& dir, const nlohmann::json& metadata) {
  write_text_file(dir / "results.json", dump_json(output.results));
  for (const auto& [name, text] : output.tables) write_text_file(dir / name, text);
  write_text_file(dir / "metadata.json", dump_json(metadata));
}

}  // namespace hamclust

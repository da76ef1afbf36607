#include "hamclust/config.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "hamclust/error.hpp"

namespace hamclust {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  if (trim(s).empty()) return out;
  std::size_t start = 0;
  while (true) {
    const auto p = s.find(sep, start);
    out.push_back(trim(s.substr(start, p == std::string_view::npos ? std::string_view::npos : p - start)));
    if (p == std::string_view::npos) break;
    start = p + 1;
  }
  return out;
}

[[noreturn]] void bad(std::string_view key, std::string_view value, std::string_view expected) {
  throw ConfigError("invalid value '" + std::string(value) + "' for " + std::string(key) + " (expected " +
                    std::string(expected) + ")");
}

template <class T>
T parse_integer(std::string_view key, std::string_view text) {
  const std::string v = trim(text);
  T out{};
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || ptr != v.data() + v.size() || v.empty()) bad(key, text, "an integer");
  return out;
}

double parse_real(std::string_view key, std::string_view text) {
  const std::string v = trim(text);
  double out = 0.0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || ptr != v.data() + v.size() || v.empty() || !std::isfinite(out)) bad(key, text, "a real number");
  return out;
}

bool parse_bool(std::string_view key, std::string_view text) {
  const std::string v = trim(text);
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  bad(key, text, "true or false");
}

std::vector<double> parse_reals(std::string_view key, std::string_view text) {
  std::vector<double> out;
  for (const auto& p : split(text, ',')) out.push_back(parse_real(key, p));
  return out;
}

std::string format_real(double x) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, ptr);
}

std::string join_reals(const double* x, std::size_t n) {
  std::string out;
  for (std::size_t i = 0; i < n; ++i) {
    if (i) out += ',';
    out += format_real(x[i]);
  }
  return out;
}

std::string join_blocks(const std::vector<std::string>& blocks) {
  std::string out;
  for (std::size_t i = 0; i < blocks.size(); ++i) out += (i ? ";" : "") + blocks[i];
  return out;
}

using Setter = std::function<void(RunConfig&, std::string_view key, std::string_view value)>;
using Getter = std::function<std::string(const RunConfig&)>;

struct Field {
  Setter set;
  Getter get;
};

template <class T>
Field size_field(T RunConfig::*member) {
  return {[member](RunConfig& c, std::string_view k, std::string_view v) { c.*member = parse_integer<T>(k, v); },
          [member](const RunConfig& c) { return std::to_string(c.*member); }};
}

Field real_field(double RunConfig::*member) {
  return {[member](RunConfig& c, std::string_view k, std::string_view v) { c.*member = parse_real(k, v); },
          [member](const RunConfig& c) { return format_real(c.*member); }};
}

Field string_field(std::string RunConfig::*member) {
  return {[member](RunConfig& c, std::string_view, std::string_view v) { c.*member = trim(v); },
          [member](const RunConfig& c) { return c.*member; }};
}

Field bool_field(bool RunConfig::*member) {
  return {[member](RunConfig& c, std::string_view k, std::string_view v) { c.*member = parse_bool(k, v); },
          [member](const RunConfig& c) { return std::string(c.*member ? "true" : "false"); }};
}

const std::map<std::string, Field, std::less<>>& fields() {
  static const std::map<std::string, Field, std::less<>> table = [] {
    std::map<std::string, Field, std::less<>> f;
    f["protocol"] = {[](RunConfig& c, std::string_view, std::string_view v) { c.protocol = parse_protocol(trim(v)); },
                     [](const RunConfig& c) { return std::string(to_string(c.protocol)); }};
    f["data"] = string_field(&RunConfig::data);
    f["synthetic"] = {[](RunConfig& c, std::string_view k, std::string_view v) {
                        const auto s = trim(v);
                        if (!s.empty() && s != "gaussian") bad(k, v, "gaussian or nothing");
                        c.synthetic = s;
                      },
                      [](const RunConfig& c) { return c.synthetic; }};
    f["gaussian_means"] = {
        [](RunConfig& c, std::string_view k, std::string_view v) {
          c.gaussian.means.clear();
          for (const auto& block : split(v, ';')) {
            const auto xs = parse_reals(k, block);
            c.gaussian.means.push_back(Eigen::Map<const Eigen::VectorXd>(xs.data(), static_cast<Eigen::Index>(xs.size())));
          }
        },
        [](const RunConfig& c) {
          std::vector<std::string> blocks;
          for (const auto& m : c.gaussian.means) blocks.push_back(join_reals(m.data(), static_cast<std::size_t>(m.size())));
          return join_blocks(blocks);
        }};
    f["gaussian_covariances"] = {
        [](RunConfig& c, std::string_view k, std::string_view v) {
          c.gaussian.covariances.clear();
          for (const auto& block : split(v, ';')) {
            const auto xs = parse_reals(k, block);
            const auto d = static_cast<Eigen::Index>(std::llround(std::sqrt(static_cast<double>(xs.size()))));
            if (static_cast<std::size_t>(d * d) != xs.size()) bad(k, block, "d*d entries per covariance");
            Eigen::MatrixXd m(d, d);
            for (Eigen::Index r = 0; r < d; ++r)
              for (Eigen::Index s = 0; s < d; ++s) m(r, s) = xs[static_cast<std::size_t>(r * d + s)];
            c.gaussian.covariances.push_back(std::move(m));
          }
        },
        [](const RunConfig& c) {
          std::vector<std::string> blocks;
          for (const auto& m : c.gaussian.covariances) {
            std::vector<double> xs;
            for (Eigen::Index r = 0; r < m.rows(); ++r)
              for (Eigen::Index s = 0; s < m.cols(); ++s) xs.push_back(m(r, s));
            blocks.push_back(join_reals(xs.data(), xs.size()));
          }
          return join_blocks(blocks);
        }};
    f["gaussian_counts"] = {[](RunConfig& c, std::string_view k, std::string_view v) {
                              c.gaussian.counts.clear();
                              for (const auto& p : split(v, ',')) c.gaussian.counts.push_back(parse_integer<std::size_t>(k, p));
                            },
                            [](const RunConfig& c) {
                              std::string out;
                              for (std::size_t i = 0; i < c.gaussian.counts.size(); ++i)
                                out += (i ? "," : "") + std::to_string(c.gaussian.counts[i]);
                              return out;
                            }};
    f["header"] = bool_field(&RunConfig::header);
    f["label_column"] = string_field(&RunConfig::label_column);
    f["exclude_label"] = {[](RunConfig& c, std::string_view k, std::string_view v) {
                            if (trim(v).empty()) c.exclude_label.reset();
                            else c.exclude_label = parse_integer<int>(k, v);
                          },
                          [](const RunConfig& c) { return c.exclude_label ? std::to_string(*c.exclude_label) : ""; }};
    f["preprocessing"] = {
        [](RunConfig& c, std::string_view, std::string_view v) { c.preprocessing = parse_preprocessing(trim(v)); },
        [](const RunConfig& c) { return std::string(to_string(c.preprocessing)); }};
    f["objectives"] = {[](RunConfig& c, std::string_view k, std::string_view v) {
                         std::vector<ObjectiveKind> kinds;
                         for (const auto& name : split(v, ',')) {
                           if (name == "all") {
                             kinds.insert(kinds.end(), kAllObjectiveKinds.begin(), kAllObjectiveKinds.end());
                           } else {
                             kinds.push_back(parse_objective_kind(name));
                           }
                         }
                         if (kinds.empty()) bad(k, v, "at least one objective");
                         for (std::size_t i = 0; i < kinds.size(); ++i) {
                           if (std::find(kinds.begin(), kinds.begin() + static_cast<std::ptrdiff_t>(i), kinds[i]) !=
                               kinds.begin() + static_cast<std::ptrdiff_t>(i)) {
                             throw ConfigError("objective '" + std::string(to_string(kinds[i])) + "' listed twice");
                           }
                         }
                         c.objectives = std::move(kinds);
                       },
                       [](const RunConfig& c) {
                         std::string out;
                         for (std::size_t i = 0; i < c.objectives.size(); ++i)
                           out += (i ? "," : "") + std::string(to_string(c.objectives[i]));
                         return out;
                       }};
    f["kmeans"] = bool_field(&RunConfig::kmeans);
    f["constraints"] = string_field(&RunConfig::constraints);
    f["solver"] = {[](RunConfig& c, std::string_view, std::string_view v) { c.solver.method = parse_solver_method(trim(v)); },
                   [](const RunConfig& c) { return std::string(to_string(c.solver.method)); }};
    f["exact_limit"] = {[](RunConfig& c, std::string_view k, std::string_view v) {
                          c.solver.exact_limit = parse_integer<std::size_t>(k, v);
                        },
                        [](const RunConfig& c) { return std::to_string(c.solver.exact_limit); }};
    f["inter_term_budget"] = {[](RunConfig& c, std::string_view k, std::string_view v) {
                                c.solver.inter_term_budget = parse_integer<std::size_t>(k, v);
                              },
                              [](const RunConfig& c) { return std::to_string(c.solver.inter_term_budget); }};
    f["sweeps"] = {[](RunConfig& c, std::string_view k, std::string_view v) {
                     c.solver.schedule.sweeps = parse_integer<std::size_t>(k, v);
                   },
                   [](const RunConfig& c) { return std::to_string(c.solver.schedule.sweeps); }};
    f["restarts"] = {[](RunConfig& c, std::string_view k, std::string_view v) {
                       c.solver.schedule.restarts = parse_integer<std::size_t>(k, v);
                     },
                     [](const RunConfig& c) { return std::to_string(c.solver.schedule.restarts); }};
    f["beta_initial"] = {[](RunConfig& c, std::string_view k, std::string_view v) {
                           c.solver.schedule.beta_initial = parse_real(k, v);
                         },
                         [](const RunConfig& c) { return format_real(c.solver.schedule.beta_initial); }};
    f["beta_final"] = {[](RunConfig& c, std::string_view k, std::string_view v) {
                         c.solver.schedule.beta_final = parse_real(k, v);
                       },
                       [](const RunConfig& c) { return format_real(c.solver.schedule.beta_final); }};
    f["normalize"] = {[](RunConfig& c, std::string_view k, std::string_view v) {
                        c.solver.schedule.normalize = parse_bool(k, v);
                      },
                      [](const RunConfig& c) { return std::string(c.solver.schedule.normalize ? "true" : "false"); }};
    f["trials"] = {[](RunConfig& c, std::string_view k, std::string_view v) {
                     if (trim(v).empty()) c.trials.reset();
                     else c.trials = parse_integer<std::size_t>(k, v);
                   },
                   [](const RunConfig& c) { return c.trials ? std::to_string(*c.trials) : ""; }};
    f["subsample"] = size_field(&RunConfig::subsample);
    f["repeats"] = size_field(&RunConfig::repeats);
    f["sweep_mode"] = {[](RunConfig& c, std::string_view, std::string_view v) { c.sweep_mode = parse_sweep_mode(trim(v)); },
                       [](const RunConfig& c) { return std::string(to_string(c.sweep_mode)); }};
    f["grid"] = {[](RunConfig& c, std::string_view k, std::string_view v) { c.grid = parse_reals(k, v); },
                 [](const RunConfig& c) { return join_reals(c.grid.data(), c.grid.size()); }};
    f["penalty"] = {[](RunConfig& c, std::string_view, std::string_view v) { c.penalty = parse_penalty_rule(trim(v)); },
                    [](const RunConfig& c) { return std::string(to_string(c.penalty)); }};
    f["lambda"] = real_field(&RunConfig::lambda);
    f["subset_size"] = size_field(&RunConfig::subset_size);
    f["max_links"] = size_field(&RunConfig::max_links);
    f["k"] = size_field(&RunConfig::k);
    f["split_order"] = {[](RunConfig& c, std::string_view, std::string_view v) { c.split_order = parse_split_order(trim(v)); },
                        [](const RunConfig& c) { return std::string(to_string(c.split_order)); }};
    f["output"] = string_field(&RunConfig::output);
    f["seed"] = {[](RunConfig& c, std::string_view k, std::string_view v) {
                   c.seed = parse_integer<std::uint64_t>(k, v);
                   c.gaussian.seed = c.seed;
                 },
                 [](const RunConfig& c) { return std::to_string(c.seed); }};
    f["threads"] = size_field(&RunConfig::threads);
    return f;
  }();
  return table;
}

}  // namespace

std::string_view to_string(Protocol p) noexcept {
  switch (p) {
    case Protocol::single: return "single";
    case Protocol::exact: return "exact";
    case Protocol::sa: return "sa";
    case Protocol::constraint_sweep: return "constraint-sweep";
    case Protocol::kcluster: return "kcluster";
  }
  return "?";
}

Protocol parse_protocol(std::string_view name) {
  for (auto p : {Protocol::single, Protocol::exact, Protocol::sa, Protocol::constraint_sweep, Protocol::kcluster}) {
    if (name == to_string(p)) return p;
  }
  throw ConfigError("unknown protocol '" + std::string(name) +
                    "' (expected single, exact, sa, constraint-sweep, kcluster)");
}

void apply_setting(RunConfig& config, std::string_view key, std::string_view value) {
  const auto it = fields().find(trim(key));
  if (it == fields().end()) throw ConfigError("unknown config key '" + std::string(key) + "'");
  it->second.set(config, it->first, value);
}

RunConfig parse_run_config(std::string_view text, RunConfig base) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t number = 0;
  std::map<std::string, std::size_t> seen;
  while (std::getline(in, line)) {
    ++number;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (trim(line).empty()) continue;
    const auto eq = line.find('=');
    const std::string where = "line " + std::to_string(number) + ": ";
    if (eq == std::string::npos) throw ConfigError(where + "expected key = value");
    const std::string key = trim(std::string_view(line).substr(0, eq));
    if (auto [pos, fresh] = seen.emplace(key, number); !fresh) {
      throw ConfigError(where + "'" + key + "' already set on line " + std::to_string(pos->second));
    }
    try {
      apply_setting(base, key, std::string_view(line).substr(eq + 1));
    } catch (const ConfigError& e) {
      throw ConfigError(where + e.what());
    }
  }
  return base;
}

RunConfig load_run_config(const std::filesystem::path& path, RunConfig base) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return parse_run_config(buf.str(), std::move(base));
  } catch (const ConfigError& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

std::string serialize(const RunConfig& config) {
  std::string out;
  for (const auto& [key, field] : fields()) out += key + " = " + field.get(config) + "\n";
  return out;
}

void validate(const RunConfig& config) {
  if (config.data.empty() == config.synthetic.empty()) {
    throw ConfigError(config.data.empty() ? "no dataset given (set data or synthetic)"
                                          : "data and synthetic are mutually exclusive");
  }
  if (!config.synthetic.empty()) validate(config.gaussian);
  if (!config.constraints.empty() && config.protocol != Protocol::single) {
    throw ConfigError("a constraint file only applies to the single protocol");
  }
  config.solver.schedule.validate();
}

std::size_t resolve_threads(const RunConfig& config) {
  if (config.threads > 0) return config.threads;
  if (const char* env = std::getenv("CLUSTER_THREADS"); env && *env) {
    const std::string_view v(env);
    std::size_t n = 0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), n);
    if (ec != std::errc{} || ptr != v.data() + v.size() || n == 0) {
      throw ConfigError("CLUSTER_THREADS must be a positive integer, got '" + std::string(v) + "'");
    }
    return n;
  }
  return 1;
}

}  // namespace hamclust

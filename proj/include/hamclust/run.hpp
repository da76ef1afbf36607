#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "hamclust/clustering.hpp"
#include "hamclust/config.hpp"
#include "hamclust/dataset.hpp"
#include "hamclust/protocols.hpp"

namespace hamclust {

/// The CSV (with exclusions applied, before preprocessing) or the synthetic
/// dataset described by the config.
Dataset load_dataset(const RunConfig& config);

nlohmann::json to_json(const Summary& s);
nlohmann::json to_json(const MetricsReport& m);
nlohmann::json to_json(const ProtocolResult& r);
nlohmann::json to_json(const SweepResult& r);
nlohmann::json to_json(const ClusterTree& tree);

struct RunOutput {
  /// Depends only on the config (never on time or thread count).
  nlohmann::json results;
  /// File name and CSV text: tables plus per-figure plot data.
  std::vector<std::pair<std::string, std::string>> tables;
  /// Human-readable summary for the terminal.
  std::string report;
};

RunOutput execute(const RunConfig& config);

/// results.json, each table, and metadata.json (kept apart so results.json
/// stays byte-identical across reruns).
void write_outputs(const RunOutput& output, const std::filesystem::path& dir, const nlohmann::json& metadata);

}  // namespace hamclust

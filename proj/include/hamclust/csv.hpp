#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "hamclust/dataset.hpp"

namespace hamclust {

struct CsvOptions {
  bool header = true;
  /// Column holding the class label: a header name, or a 0-based index
  /// written as digits. Unset means every column is a feature.
  std::optional<std::string> label_column;
  char delimiter = ',';
};

/// Splits one record. Double-quoted fields may contain the delimiter and
/// "" escapes. Throws DataError on an unterminated quote.
std::vector<std::string> split_csv_record(const std::string& line, char delimiter = ',');

/// Reads a rectangular numeric table. Integer labels are kept as is; any
/// other label text is numbered by first appearance. Blank lines are
/// skipped. Errors name the offending line (DataError).
Dataset load_csv(const std::filesystem::path& path, const CsvOptions& options = {});

/// Writes features (and labels, as a trailing "class" column) with a header
/// row; values use 17 significant digits.
void save_csv(const Dataset& data, const std::filesystem::path& path, const std::vector<std::string>& feature_names = {});

}  // namespace hamclust

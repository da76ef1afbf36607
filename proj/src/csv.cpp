#include "hamclust/csv.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <map>

#include "hamclust/error.hpp"

namespace hamclust {

namespace {

bool parse_double(const std::string& text, double& out) {
  std::size_t b = 0, e = text.size();
  while (b < e && (text[b] == ' ' || text[b] == '\t')) ++b;
  while (e > b && (text[e - 1] == ' ' || text[e - 1] == '\t' || text[e - 1] == '\r')) --e;
  if (b == e) return false;
  const char* first = text.data() + b;
  if (*first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, text.data() + e, out);
  return ec == std::errc() && ptr == text.data() + e;
}

bool parse_int(const std::string& text, int& out) {
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
  return ec == std::errc() && ptr == text.data() + text.size() && !text.empty();
}

std::string where(const std::filesystem::path& path, std::size_t line) {
  return path.string() + ":" + std::to_string(line) + ": ";
}

}  // namespace

std::vector<std::string> split_csv_record(const std::string& line, char delimiter) {
  std::vector<std::string> out(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        out.back() += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        out.back() += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == delimiter) {
      out.emplace_back();
    } else if (c != '\r' || i + 1 != line.size()) {
      out.back() += c;
    }
  }
  if (quoted) throw DataError("unterminated quoted field");
  return out;
}

Dataset load_csv(const std::filesystem::path& path, const CsvOptions& options) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open '" + path.string() + "'");

  std::string line;
  std::size_t line_no = 0;
  std::optional<std::size_t> width;
  std::vector<std::string> names;
  std::vector<std::vector<std::string>> rows;
  std::vector<std::size_t> row_lines;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::vector<std::string> cells;
    try {
      cells = split_csv_record(line, options.delimiter);
    } catch (const DataError& e) {
      throw DataError(where(path, line_no) + e.what());
    }
    if (width && cells.size() != *width) {
      throw DataError(where(path, line_no) + "expected " + std::to_string(*width) + " fields, found " +
                      std::to_string(cells.size()));
    }
    width = cells.size();
    if (options.header && names.empty()) {
      names = std::move(cells);
      continue;
    }
    rows.push_back(std::move(cells));
    row_lines.push_back(line_no);
  }
  if (rows.empty()) throw DataError(path.string() + ": no data rows");

  std::optional<std::size_t> label_at;
  if (options.label_column) {
    const std::string& want = *options.label_column;
    for (std::size_t k = 0; k < names.size(); ++k) {
      if (names[k] == want) label_at = k;
    }
    int idx = -1;
    if (!label_at && parse_int(want, idx) && idx >= 0) label_at = static_cast<std::size_t>(idx);
    if (!label_at || *label_at >= *width) {
      throw DataError(path.string() + ": no label column '" + want + "'");
    }
  }

  const std::size_t d = *width - (label_at ? 1 : 0);
  if (d == 0) throw DataError(path.string() + ": no feature columns");
  Eigen::MatrixXd x(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(d));
  std::vector<std::string> label_text;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    std::size_t k = 0;
    for (std::size_t c = 0; c < rows[r].size(); ++c) {
      if (label_at && c == *label_at) {
        label_text.push_back(rows[r][c]);
        continue;
      }
      double v = 0.0;
      if (!parse_double(rows[r][c], v)) {
        throw DataError(where(path, row_lines[r]) + "field " + std::to_string(c + 1) + " ('" + rows[r][c] +
                        "') is not a number");
      }
      x(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(k++)) = v;
    }
  }

  std::optional<std::vector<int>> labels;
  if (label_at) {
    std::vector<int> ids(label_text.size());
    bool numeric = true;
    for (std::size_t r = 0; r < label_text.size() && numeric; ++r) numeric = parse_int(label_text[r], ids[r]);
    if (!numeric) {
      std::map<std::string, int> seen;
      for (std::size_t r = 0; r < label_text.size(); ++r) {
        ids[r] = seen.try_emplace(label_text[r], static_cast<int>(seen.size())).first->second;
      }
    }
    labels = std::move(ids);
  }
  try {
    return Dataset(std::move(x), std::move(labels), path.stem().string());
  } catch (const DataError& e) {
    throw DataError(path.string() + ": " + e.what());
  }
}

void save_csv(const Dataset& data, const std::filesystem::path& path, const std::vector<std::string>& feature_names) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write '" + path.string() + "'");
  for (std::size_t k = 0; k < data.dim(); ++k) {
    if (k) out << ',';
    out << (k < feature_names.size() ? feature_names[k] : "x" + std::to_string(k));
  }
  if (data.has_labels()) out << ",class";
  out << '\n';
  char buf[32];
  for (std::size_t i = 0; i < data.size(); ++i) {
    for (std::size_t k = 0; k < data.dim(); ++k) {
      std::snprintf(buf, sizeof buf, "%.17g", data(i, k));
      out << (k ? "," : "") << buf;
    }
    if (data.has_labels()) out << ',' << data.labels()[i];
    out << '\n';
  }
  if (!out) throw DataError("write to '" + path.string() + "' failed");
}

}  // namespace hamclust

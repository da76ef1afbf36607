#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include <json.hpp>

#include "hamclust/binary_form.hpp"
#include "hamclust/constraints.hpp"

namespace hamclust {

/// Deterministic text form: two-space indent, keys in sorted order, reals
/// printed with 17 significant digits, trailing newline. Throws DataError on
/// a non-finite number.
std::string dump_json(const nlohmann::json& doc);

/// DataError when the file is missing or is not valid JSON.
nlohmann::json read_json_file(const std::filesystem::path& path);
/// Creates parent directories. DataError on failure.
void write_text_file(const std::filesystem::path& path, std::string_view text);

// QUBO documents: {num_vars, offset, linear: [...], quadratic: [{c, i, j}]}.
nlohmann::json qubo_to_json(const BinaryQuadraticForm& form);
BinaryQuadraticForm qubo_from_json(const nlohmann::json& doc);
void export_qubo(const BinaryQuadraticForm& form, const std::filesystem::path& path);
BinaryQuadraticForm load_qubo(const std::filesystem::path& path);

// Constraint documents:
//   {"labels": [[index, spin], ...] or [{"index": i, "spin": s}, ...],
//    "label_lambda": x,
//    "cardinality": {"C": c, "lambda": x},
//    "links": [{"i": i, "j": j, "q": +-1}, ...],
//    "link_lambda": x}
// Every field is optional. Missing label/link weights fall back to the
// default; the cardinality weight is required.
ConstraintSet constraints_from_json(const nlohmann::json& doc, std::size_t num_vars);
nlohmann::json constraints_to_json(const ConstraintSet& constraints);
ConstraintSet load_constraints(const std::filesystem::path& path, std::size_t num_vars);

}  // namespace hamclust

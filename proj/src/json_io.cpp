#include "hamclust/json_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "hamclust/error.hpp"

namespace hamclust {

namespace {

using nlohmann::json;

void write_string(std::string& out, const std::string& s) {
  // nlohmann escapes exactly as JSON requires.
  out += json(s).dump();
}

void write_value(std::string& out, const json& v, int depth) {
  const std::string pad(static_cast<std::size_t>(2 * (depth + 1)), ' ');
  const std::string close(static_cast<std::size_t>(2 * depth), ' ');
  switch (v.type()) {
    case json::value_t::object: {
      if (v.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (auto it = v.begin(); it != v.end(); ++it) {
        if (!first) out += ",\n";
        first = false;
        out += pad;
        write_string(out, it.key());
        out += ": ";
        write_value(out, it.value(), depth + 1);
      }
      out += "\n" + close + "}";
      return;
    }
    case json::value_t::array: {
      if (v.empty()) {
        out += "[]";
        return;
      }
      out += "[\n";
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ",\n";
        out += pad;
        write_value(out, v[i], depth + 1);
      }
      out += "\n" + close + "]";
      return;
    }
    case json::value_t::number_float: {
      const double x = v.get<double>();
      if (!std::isfinite(x)) throw DataError("cannot serialize a non-finite number to JSON");
      char buf[40];
      std::snprintf(buf, sizeof buf, "%.17g", x == 0.0 ? 0.0 : x);
      out += buf;
      return;
    }
    default:
      out += v.dump();
  }
}

double number(const json& v, const char* what) {
  if (!v.is_number()) throw DataError(std::string("expected a number for ") + what);
  return v.get<double>();
}

std::size_t index_of(const json& v, const char* what) {
  if (!v.is_number_integer() || v.get<long long>() < 0) {
    throw DataError(std::string("expected a non-negative integer for ") + what);
  }
  return v.get<std::size_t>();
}

int spin_of(const json& v, const char* what) {
  if (!v.is_number_integer()) throw DataError(std::string("expected +1 or -1 for ") + what);
  return v.get<int>();
}

std::optional<double> optional_weight(const json& doc, const char* key) {
  if (!doc.contains(key) || doc[key].is_null()) return std::nullopt;
  return number(doc[key], key);
}

}  // namespace

std::string dump_json(const nlohmann::json& doc) {
  std::string out;
  write_value(out, doc, 0);
  out += '\n';
  return out;
}

nlohmann::json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw DataError(path.string() + ": " + e.what());
  }
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  std::error_code ec;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
  std::ofstream out(path, std::ios::binary);
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw DataError("cannot write " + path.string());
}

nlohmann::json qubo_to_json(const BinaryQuadraticForm& form) {
  json linear = json::array();
  for (double c : form.linear()) linear.push_back(c);
  json quadratic = json::array();
  for (const auto& e : form.quadratic()) quadratic.push_back({{"c", e.c}, {"i", e.i}, {"j", e.j}});
  return {{"linear", linear}, {"num_vars", form.num_vars()}, {"offset", form.offset()}, {"quadratic", quadratic}};
}

BinaryQuadraticForm qubo_from_json(const nlohmann::json& doc) {
  if (!doc.is_object()) throw DataError("QUBO document must be an object");
  for (const char* key : {"num_vars", "offset", "linear", "quadratic"}) {
    if (!doc.contains(key)) throw DataError(std::string("QUBO document lacks '") + key + "'");
  }
  if (!doc["linear"].is_array() || !doc["quadratic"].is_array()) throw DataError("QUBO linear/quadratic must be arrays");
  std::vector<double> linear;
  for (const auto& c : doc["linear"]) linear.push_back(number(c, "linear"));
  std::vector<QuadraticEntry> quadratic;
  for (const auto& e : doc["quadratic"]) {
    if (!e.is_object() || !e.contains("i") || !e.contains("j") || !e.contains("c")) {
      throw DataError("quadratic entries need i, j and c");
    }
    quadratic.push_back({static_cast<VarIndex>(index_of(e["i"], "i")), static_cast<VarIndex>(index_of(e["j"], "j")),
                         number(e["c"], "c")});
  }
  return BinaryQuadraticForm(index_of(doc["num_vars"], "num_vars"), number(doc["offset"], "offset"), std::move(linear),
                             std::move(quadratic));
}

void export_qubo(const BinaryQuadraticForm& form, const std::filesystem::path& path) {
  write_text_file(path, dump_json(qubo_to_json(form)));
}

BinaryQuadraticForm load_qubo(const std::filesystem::path& path) { return qubo_from_json(read_json_file(path)); }

ConstraintSet constraints_from_json(const nlohmann::json& doc, std::size_t num_vars) {
  if (!doc.is_object()) throw DataError("constraint document must be an object");
  static const std::set<std::string> known{"labels", "label_lambda", "cardinality", "links", "link_lambda"};
  for (auto it = doc.begin(); it != doc.end(); ++it) {
    if (!known.contains(it.key())) throw DataError("unknown constraint field '" + it.key() + "'");
  }

  std::vector<Label> labels;
  if (doc.contains("labels")) {
    for (const auto& l : doc["labels"]) {
      if (l.is_array() && l.size() == 2) {
        labels.push_back({static_cast<VarIndex>(index_of(l[0], "label index")), spin_of(l[1], "label spin")});
      } else if (l.is_object() && l.contains("index") && l.contains("spin")) {
        labels.push_back({static_cast<VarIndex>(index_of(l["index"], "label index")), spin_of(l["spin"], "label spin")});
      } else {
        throw DataError("labels must be [index, spin] pairs or {index, spin} objects");
      }
    }
  }

  std::optional<Cardinality> cardinality;
  if (doc.contains("cardinality") && !doc["cardinality"].is_null()) {
    const auto& c = doc["cardinality"];
    if (!c.is_object() || !c.contains("C") || !c["C"].is_number_integer() || !c.contains("lambda")) {
      throw DataError("cardinality needs an integer C and a lambda");
    }
    cardinality = Cardinality{c["C"].get<long long>(), number(c["lambda"], "cardinality lambda")};
  }

  std::vector<Link> links;
  if (doc.contains("links")) {
    for (const auto& l : doc["links"]) {
      if (!l.is_object() || !l.contains("i") || !l.contains("j") || !l.contains("q")) {
        throw DataError("links need i, j and q");
      }
      links.push_back({static_cast<VarIndex>(index_of(l["i"], "link i")), static_cast<VarIndex>(index_of(l["j"], "link j")),
                       spin_of(l["q"], "link q")});
    }
  }

  return ConstraintSet(num_vars, std::move(labels), optional_weight(doc, "label_lambda"), cardinality,
                       std::move(links), optional_weight(doc, "link_lambda"));
}

nlohmann::json constraints_to_json(const ConstraintSet& constraints) {
  json doc = json::object();
  json labels = json::array();
  for (const auto& l : constraints.labels()) labels.push_back({l.index, l.spin});
  doc["labels"] = labels;
  json links = json::array();
  for (const auto& l : constraints.links()) links.push_back({{"i", l.i}, {"j", l.j}, {"q", l.q}});
  doc["links"] = links;
  if (constraints.label_lambda()) doc["label_lambda"] = *constraints.label_lambda();
  if (constraints.link_lambda()) doc["link_lambda"] = *constraints.link_lambda();
  if (const auto& c = constraints.cardinality()) doc["cardinality"] = {{"C", c->target}, {"lambda", c->lambda}};
  return doc;
}

ConstraintSet load_constraints(const std::filesystem::path& path, std::size_t num_vars) {
  return constraints_from_json(read_json_file(path), num_vars);
}

}  // namespace hamclust

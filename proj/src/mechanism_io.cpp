// Copyright 2026 The dpcalc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "dpcalc/mechanism_io.h"

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "json.hpp"

namespace dpcalc {
namespace {

using nlohmann::json;

json parse_json(const std::string& text, const std::string& where) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& err) {
    throw std::runtime_error(where + ": not valid JSON: " + err.what());
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error(path + ": cannot open for reading");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::vector<std::string> parse_labels(const json& doc, const std::string& field,
                                      const std::string& where) {
  if (!doc.contains(field)) {
    throw std::runtime_error(where + ": missing field '" + field + "'");
  }
  const json& node = doc.at(field);
  if (!node.is_array() || node.empty()) {
    throw std::runtime_error(where + ": field '" + field +
                             "' must be a nonempty array of strings");
  }
  std::vector<std::string> labels;
  labels.reserve(node.size());
  for (std::size_t i = 0; i < node.size(); ++i) {
    if (!node[i].is_string()) {
      throw std::runtime_error(where + ": field '" + field + "[" + std::to_string(i) +
                               "]' must be a string");
    }
    labels.push_back(node[i].get<std::string>());
  }
  return labels;
}

std::vector<double> parse_row(const json& node, const std::string& field,
                              std::size_t expected, const std::string& where) {
  if (!node.is_array() || node.size() != expected) {
    throw std::runtime_error(where + ": field '" + field + "' must be an array of " +
                             std::to_string(expected) + " numbers");
  }
  std::vector<double> values;
  values.reserve(node.size());
  for (std::size_t i = 0; i < node.size(); ++i) {
    if (!node[i].is_number()) {
      throw std::runtime_error(where + ": field '" + field + "[" + std::to_string(i) +
                               "]' must be a number");
    }
    values.push_back(node[i].get<double>());
  }
  return values;
}

}  // namespace

Mechanism parse_mechanism(const std::string& text, const std::string& where) {
  const json doc = parse_json(text, where);
  if (!doc.is_object()) {
    throw std::runtime_error(where + ": top level must be a JSON object");
  }
  const auto inputs = parse_labels(doc, "inputs", where);
  const auto outputs = parse_labels(doc, "outputs", where);
  if (!doc.contains("rows")) {
    throw std::runtime_error(where + ": missing field 'rows'");
  }
  const json& rows_node = doc.at("rows");
  if (!rows_node.is_array() || rows_node.size() != inputs.size()) {
    throw std::runtime_error(where + ": field 'rows' must be an array of " +
                             std::to_string(inputs.size()) + " rows");
  }
  std::vector<Dist> rows;
  rows.reserve(inputs.size());
  for (std::size_t i = 0; i < rows_node.size(); ++i) {
    const std::string field = "rows[" + std::to_string(i) + "]";
    auto values = parse_row(rows_node[i], field, outputs.size(), where);
    try {
      rows.emplace_back(std::move(values));
    } catch (const std::invalid_argument& err) {
      throw std::runtime_error(where + ": field '" + field + "': " + err.what());
    }
  }
  try {
    return Mechanism(inputs, outputs, std::move(rows));
  } catch (const std::invalid_argument& err) {
    throw std::runtime_error(where + ": " + err.what());
  }
}

Mechanism load_mechanism(const std::string& path) {
  return parse_mechanism(read_file(path), path);
}

void save_mechanism(const Mechanism& mechanism, const std::string& path) {
  json doc;
  doc["inputs"] = mechanism.input_labels();
  doc["outputs"] = mechanism.output_labels();
  json rows = json::array();
  for (std::size_t x = 0; x < mechanism.num_inputs(); ++x) {
    rows.push_back(mechanism.row(x).mass());
  }
  doc["rows"] = std::move(rows);
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error(path + ": cannot open for writing");
  }
  out << doc.dump(2) << "\n";
  if (!out) {
    throw std::runtime_error(path + ": write failed");
  }
}

Dist load_dist(const std::string& path) {
  const json doc = parse_json(read_file(path), path);
  if (!doc.is_object()) {
    throw std::runtime_error(path + ": top level must be a JSON object");
  }
  const auto outputs = parse_labels(doc, "outputs", path);
  if (!doc.contains("mass")) {
    throw std::runtime_error(path + ": missing field 'mass'");
  }
  auto values = parse_row(doc.at("mass"), "mass", outputs.size(), path);
  try {
    return Dist(std::move(values));
  } catch (const std::invalid_argument& err) {
    throw std::runtime_error(path + ": field 'mass': " + err.what());
  }
}

}  // namespace dpcalc

#pragma once

#include <json.hpp>
#include <string>
#include <vector>

#include "tpd/core.hpp"
#include "tpd/instances.hpp"

namespace tpd {

using Json = nlohmann::ordered_json;

Json to_json(const Instance& inst);
Instance instance_from_json(const Json& j);

/// Rows of "p/q" strings.
Json to_json(const Matrix& y);
Matrix matrix_from_json(const Json& j);

/// Circuit as [[i, j, sign], ...] with 1-based indices, row-major.
Json to_json(const Circuit& c);
Circuit circuit_from_json(const Json& j, int m, int n);

Json to_json(const Walk& w);
Walk walk_from_json(const Json& j);

Json to_json(const GeneratedCase& c);

// A result table, written as CSV or as a JSON array of objects with the same fields.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::string to_csv() const;
  Json to_json() const;
};

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace tpd

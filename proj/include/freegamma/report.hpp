#pragma once

#include "freegamma/convolution.hpp"
#include "freegamma/equilibrium.hpp"
#include "freegamma/finite_free.hpp"
#include "freegamma/gibbs.hpp"
#include "freegamma/rmt.hpp"

#include <json.hpp>

#include <string>
#include <utility>
#include <vector>

namespace fg {

inline constexpr const char* kVersion = "0.1.0";
inline constexpr int kSchemaVersion = 1;

using Json = nlohmann::ordered_json;

/// Column-ordered table with a metadata block, rendered as CSV (metadata as
/// leading "# key: value" comments) or as JSON.
struct Table {
  std::vector<std::pair<std::string, std::string>> meta;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  void add_row(std::vector<std::string> row);
  std::string to_csv() const;
  Json to_json() const;
};

/// Shortest round-trip decimal; "nan", "inf" and "-inf" for non-finite values.
std::string format_number(double x);

Json to_json(const GFGParams& p);
Json to_json(const Complex& z);
Json to_json(const IdentityReport& r);
Json to_json(const RmtVerdict& v);
Json to_json(const ClassicalReport& r);
Json to_json(const EntropyValue& e);
Json to_json(const EndpointEquations& e);
Json to_json(const MaximalityReport& r);
Json to_json(const ConvergenceStudy& s);
Json to_json(const Error& e);

/// Wraps a payload with the schema, command and version fields.
Json envelope(const std::string& command, Json payload);

}  // namespace fg

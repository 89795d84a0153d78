#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace cantor {

using Json = nlohmann::ordered_json;

inline constexpr const char* schema_version = "1";

struct StatPoint {
  std::uint64_t n = 0;
  /// Absent when the quantity is undefined (e.g. a zero denominator).
  std::optional<double> value;
  /// Exact or high-precision companions (counts, rationals, decimal strings).
  Json detail = Json::object();
};

struct StatSeries {
  std::string name;
  Json params = Json::object();
  std::vector<StatPoint> values;
};

/// Named numeric series emitted by the analyses.
struct StatReport {
  std::vector<StatSeries> series;
  Json summary = Json::object();

  const StatSeries* find(const std::string& name) const;
};

/// {"schema_version":"1","series":[{"name","params","values":[...]}],"summary":{...}}
Json to_json(const StatReport& report);
/// Header "n,name,value", then one row per point. Undefined values are empty.
void write_csv(std::ostream& out, const StatReport& report);

/// Geometric checkpoints 1, 2, 4, ... below n, plus n itself.
std::vector<std::uint64_t> geometric_checkpoints(std::uint64_t n);

}  // namespace cantor

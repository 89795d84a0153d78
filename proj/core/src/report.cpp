#include "cantor/report.hpp"

#include <iomanip>
#include <limits>

namespace cantor {

const StatSeries* StatReport::find(const std::string& name) const {
  for (const auto& s : series) {
    if (s.name == name) return &s;
  }
  return nullptr;
}

Json to_json(const StatReport& report) {
  Json out;
  out["schema_version"] = schema_version;
  Json series = Json::array();
  for (const auto& s : report.series) {
    Json values = Json::array();
    for (const auto& point : s.values) {
      Json item;
      item["n"] = point.n;
      item["value"] = point.value ? Json(*point.value) : Json(nullptr);
      if (!point.detail.empty()) item["detail"] = point.detail;
      values.push_back(std::move(item));
    }
    series.push_back(Json{{"name", s.name}, {"params", s.params}, {"values", std::move(values)}});
  }
  out["series"] = std::move(series);
  out["summary"] = report.summary;
  return out;
}

void write_csv(std::ostream& out, const StatReport& report) {
  const auto flags = out.flags();
  const auto precision = out.precision();
  out << "n,name,value\n" << std::setprecision(std::numeric_limits<double>::max_digits10);
  for (const auto& s : report.series) {
    for (const auto& point : s.values) {
      out << point.n << ',' << s.name << ',';
      if (point.value) out << *point.value;
      out << '\n';
    }
  }
  out.flags(flags);
  out.precision(precision);
}

std::vector<std::uint64_t> geometric_checkpoints(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t c = 1; c < n; c *= 2) out.push_back(c);
  if (n > 0) out.push_back(n);
  return out;
}

}  // namespace cantor

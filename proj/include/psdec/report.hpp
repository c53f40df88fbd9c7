#pragma once

// Verification reports shared by the group suite, the GL3 oracle and the CLI.

#include <string>
#include <vector>

#include <json.hpp>

namespace psdec {

using json = nlohmann::json;

enum class Status { pass, fail, expected_deviation };

inline const char* to_string(Status s) {
  switch (s) {
    case Status::pass: return "pass";
    case Status::fail: return "fail";
    case Status::expected_deviation: return "expected-deviation";
  }
  return "fail";
}

struct Report {
  std::string check;
  json params = json::object();
  Status status = Status::pass;
  json detail = json::object();

  bool ok() const { return status != Status::fail; }

  /// Marks the report failed and appends `what` to detail.failures.
  void require(bool cond, const std::string& what) {
    if (cond) return;
    status = Status::fail;
    detail["failures"].push_back(what);
  }
};

inline void to_json(json& j, const Report& r) {
  j = json{{"check", r.check}, {"params", r.params}, {"status", to_string(r.status)}, {"detail", r.detail}};
}

inline bool all_ok(const std::vector<Report>& reports) {
  for (const auto& r : reports)
    if (!r.ok()) return false;
  return true;
}

}  // namespace psdec

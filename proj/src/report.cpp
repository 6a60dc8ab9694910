#include "dntau/report.hpp"

#include <cstdio>

namespace dntau {

nlohmann::json CheckReport::to_json() const {
  nlohmann::json j = data;
  j["check"] = check;
  j["pass"] = pass;
  return j;
}

std::string canonical_dump(const nlohmann::json& j) { return j.dump(); }

uint64_t fnv1a64(const std::string& s) {
  uint64_t h = 14695981039346656037ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string hex64(uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

bool Report::pass() const {
  for (auto& c : checks)
    if (!c.pass) return false;
  return true;
}

static nlohmann::json hashed_body(const Report& r) {
  nlohmann::json checks = nlohmann::json::array();
  for (auto& c : r.checks) checks.push_back(c.to_json());
  nlohmann::json params = r.params;
  params.erase("threads");
  return {{"command", r.command}, {"params", params}, {"checks", checks},
          {"artifacts", r.artifacts}, {"version", kVersion}, {"pass", r.pass()}};
}

std::string Report::content_hash() const { return hex64(fnv1a64(canonical_dump(hashed_body(*this)))); }

nlohmann::json Report::to_json() const {
  nlohmann::json j = hashed_body(*this);
  j["hash"] = content_hash();
  if (include_timings) j["timings"] = timings;
  return j;
}

}  // namespace dntau

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace dntau {

constexpr const char* kVersion = "1.0.0";

struct CheckReport {
  std::string check;
  bool pass = false;
  nlohmann::json data = nlohmann::json::object();
  nlohmann::json to_json() const;
};

// Canonical serialization: sorted keys, no whitespace.
std::string canonical_dump(const nlohmann::json& j);
uint64_t fnv1a64(const std::string& s);
std::string hex64(uint64_t v);

struct Report {
  std::string command;
  nlohmann::json params = nlohmann::json::object();
  std::vector<CheckReport> checks;
  nlohmann::json artifacts = nlohmann::json::object();
  nlohmann::json timings = nlohmann::json::object();
  bool include_timings = false;

  bool pass() const;
  // Hash over everything except timings and thread count.
  std::string content_hash() const;
  nlohmann::json to_json() const;
};

}  // namespace dntau

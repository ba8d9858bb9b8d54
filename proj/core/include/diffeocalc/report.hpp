#ifndef DIFFEOCALC_REPORT_HPP
#define DIFFEOCALC_REPORT_HPP

#include <nlohmann/json.hpp>

#include <string>
#include <vector>

namespace diffeocalc {

inline constexpr const char* kVersion = "0.1.0";

/// Structured command result. The machine rendering is the contract:
/// stable key order, no timestamps, no version string in the payload
/// (the human rendering carries the version in its header line).
struct Report {
  std::string command;
  nlohmann::ordered_json inputs = nlohmann::ordered_json::object();
  nlohmann::ordered_json results = nlohmann::ordered_json::object();
  std::vector<std::string> notes;

  std::string render_machine() const;
  std::string render_human() const;
};

}  // namespace diffeocalc

#endif

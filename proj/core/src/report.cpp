#include "diffeocalc/report.hpp"

#include <sstream>

namespace diffeocalc {

std::string Report::render_machine() const {
  nlohmann::ordered_json doc;
  doc["command"] = command;
  doc["inputs"] = inputs;
  doc["results"] = results;
  doc["notes"] = notes;
  return doc.dump(2) + "\n";
}

namespace {

void render_value(std::ostream& os, const std::string& key,
                  const nlohmann::ordered_json& v, int depth) {
  const std::string pad(static_cast<std::size_t>(depth) * 2, ' ');
  if (v.is_object()) {
    os << pad << key << ":\n";
    for (const auto& [k2, v2] : v.items()) render_value(os, k2, v2, depth + 1);
  } else if (v.is_array()) {
    os << pad << key << ":";
    for (const auto& item : v) os << " " << (item.is_string() ? item.get<std::string>() : item.dump());
    os << "\n";
  } else if (v.is_string()) {
    os << pad << key << ": " << v.get<std::string>() << "\n";
  } else {
    os << pad << key << ": " << v.dump() << "\n";
  }
}

}  // namespace

std::string Report::render_human() const {
  std::ostringstream os;
  os << "# diffeocalc " << kVersion << " -- " << command << "\n";
  if (!inputs.empty()) {
    os << "inputs:\n";
    for (const auto& [k, v] : inputs.items()) render_value(os, k, v, 1);
  }
  os << "results:\n";
  for (const auto& [k, v] : results.items()) render_value(os, k, v, 1);
  if (!notes.empty()) {
    os << "notes:\n";
    for (const std::string& n : notes) os << "  - " << n << "\n";
  }
  return os.str();
}

}  // namespace diffeocalc

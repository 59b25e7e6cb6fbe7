#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace regula {

// One bundled fixture file, stored verbatim. `basename` is the file
// name written on extraction; the protocol file comes first.
struct ScenarioFile {
  std::string basename;
  std::string content;
};

struct Scenario {
  std::string name;
  std::string summary;
  std::vector<ScenarioFile> files;

  const ScenarioFile& protocol_file() const { return files.front(); }
};

// The bundled scenarios, in listing order.
const std::vector<Scenario>& scenarios();

// nullptr when no scenario has that name.
const Scenario* find_scenario(std::string_view name);

}  // namespace regula

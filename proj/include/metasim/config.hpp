#pragma once

#include <string>

#include "metasim/engine.hpp"
#include "metasim/gripper.hpp"

namespace metasim {

class ConfigError : public std::runtime_error {
 public:
  ConfigError(int line, const std::string& what)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what
                                    : what),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_ = 0;
};

// Everything one CLI invocation needs, with documented defaults applied.
struct RunConfig {
  ScenarioConfig scenario;
  GripperSpec gripper;
  ObjectSpec object;
  ParameterSet params;  // resolved copy of h / alpha_eff / tau_mech
};

RunConfig default_run_config();

// Sectioned key=value text (`[section]`, `key = value`, `#` comments).
// Sections: actuator, material.<name>, loop.<name>, thermal, mechanics,
// schedule, return, gripper, object, run. Values are SI unless the key
// name carries a unit suffix (_mm, _um, _ppm, _c, _w...). In strict mode
// any unknown section or key is an error with its line number.
RunConfig parse_config(const std::string& text, bool strict = true);

// Commented reference config that parses back to default_run_config().
std::string default_config_text();

}  // namespace metasim

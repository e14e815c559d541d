#pragma once

#include <functional>
#include <string>
#include <vector>

#include "run_config.hpp"

namespace pilotwave::cli {

struct Command {
  std::string name;
  std::string description;
  std::vector<Key> keys;
  std::function<void(RunContext&)> run;
};

std::vector<Command> physics_commands();
std::vector<Command> theorem_commands();
Command selftest_command();

// Keys shared by every subcommand.
std::vector<Key> with_common(std::vector<Key> keys);

}  // namespace pilotwave::cli

#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "smallf/serialize.hpp"

namespace smallf::cli {

struct Check {
  std::string name;
  bool pass = true;
  std::string detail;
};

struct CommandOutput {
  std::optional<Table> table;
  /// JSON-only payload; merged into the JSON document next to "table".
  Json extra = Json::object();
  std::vector<Check> checks;
  Json measured = Json::object();
  /// Default format when --format is left at auto.
  std::string default_format = "csv";
};

struct GlobalOptions {
  int threads = 0;
  std::uint64_t seed = 0;
  std::string format = "auto";
  std::string out;
  std::string manifest;
};

using Handler = std::function<CommandOutput()>;

/// Registers every subcommand. Parsing a leaf stores its handler and its
/// dotted name ("jarnik.witness") in the given slots.
void add_commands(CLI::App& app, const GlobalOptions& g, Handler& selected, std::string& selected_name);

}  // namespace smallf::cli

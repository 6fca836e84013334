#pragma once

#include "gsnc/builders.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>

namespace gsnc {

struct RunConfig {
    enum class Command { validate, betti, mhs, epoly, sheaf, cover_plan, all };
    enum class Format { text, structured };

    Command command = Command::validate;
    std::string input_path;
    Format format = Format::text;
    std::optional<std::pair<int, int>> degree_range;  // inclusive degrees a..b
};

// nullopt for unknown command names; rejected before any file is read.
std::optional<RunConfig::Command> parse_command(const std::string& name);
const char* command_name(RunConfig::Command command);

// Exit status: 0 success, 1 validation failure or mathematical
// inconsistency (report included), 2 schema/parse error. Reports are
// byte-stable across runs for identical input.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

// As `run`, on an already-loaded bundle (no file access).
int run_bundle(const RunConfig& config, const ModelBundle& bundle, std::ostream& out,
               std::ostream& err);

}  // namespace gsnc

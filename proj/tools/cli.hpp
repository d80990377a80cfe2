#pragma once

#include <map>
#include <ostream>
#include <string>
#include <vector>

namespace icrt::cli {

enum ExitCode : int { ok = 0, check_failed = 1, usage = 2 };

// Entry point of the icrt tool. Returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

// Flat "key = value" manifest; '#' starts a comment. Throws std::runtime_error
// on malformed lines or duplicate keys.
std::map<std::string, std::string> read_config(const std::string& path);

// Flag name for a config key: unit suffixes are mapped to the flag that
// carries them (horizon_length -> --horizon), underscores become dashes.
std::string flag_for_key(const std::string& key);

}  // namespace icrt::cli

#include <algorithm>
#include <fstream>
#include <stdexcept>

#include "cli.hpp"

namespace icrt::cli {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

std::map<std::string, std::string> read_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file '" + path + "'");
  std::map<std::string, std::string> kv;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error(path + ":" + std::to_string(lineno) + ": expected key = value");
    std::string key = trim(line.substr(0, eq)), value = trim(line.substr(eq + 1));
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"') value = value.substr(1, value.size() - 2);
    if (key.empty()) throw std::runtime_error(path + ":" + std::to_string(lineno) + ": empty key");
    if (!kv.emplace(key, value).second)
      throw std::runtime_error(path + ":" + std::to_string(lineno) + ": duplicate key '" + key + "'");
  }
  return kv;
}

std::string flag_for_key(const std::string& key) {
  static const std::map<std::string, std::string> units{
      {"horizon_length", "horizon"},      {"truncation_length", "length"},
      {"out_dir", "out"},                 {"cut_count", "cuts"},
      {"atom_count", "atoms"},            {"significance_level", "significance"},
      {"eps_min_length", "eps-min"},      {"eps_max_length", "eps-max"},
  };
  std::string name = key;
  if (auto it = units.find(key); it != units.end()) name = it->second;
  std::replace(name.begin(), name.end(), '_', '-');
  return "--" + name;
}

}  // namespace icrt::cli

#pragma once

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace pilotwave::cli {

struct Key {
  std::string name;
  std::string fallback;
  std::string help;
};

enum class Source { kDefault, kConfig, kFlag };
const char* to_string(Source s);

// key = value lines grouped by [section]; "" is the unsectioned head.
struct ConfigEntry {
  std::string key;
  std::string value;
  std::size_t line = 0;
};
using ConfigFile = std::map<std::string, std::vector<ConfigEntry>>;
ConfigFile read_config_file(const std::filesystem::path& path);

// Resolved parameters of one subcommand. Precedence: default, then the
// unsectioned head of the config file, then its [subcommand] section, then
// command-line flags.
class RunConfig {
 public:
  RunConfig(std::string subcommand, const std::vector<Key>& keys);

  bool has(const std::string& key) const { return values_.count(key) > 0; }
  void set(const std::string& key, std::string value, Source source);

  const std::string& text(const std::string& key) const;
  double real(const std::string& key) const;
  std::size_t count(const std::string& key) const;
  std::uint64_t u64(const std::string& key) const;
  bool flag(const std::string& key) const;
  // Comma-separated reals; empty text gives an empty list.
  std::vector<double> reals(const std::string& key) const;

  const std::string& subcommand() const noexcept { return subcommand_; }
  nlohmann::ordered_json to_json() const;

 private:
  struct Entry {
    std::string value;
    Source source;
  };
  std::string subcommand_;
  std::vector<std::string> order_;
  std::map<std::string, Entry> values_;
};

// Prints PASS/FAIL lines and collects them for the manifest.
class Assertions {
 public:
  void check(const std::string& name, bool ok, const std::string& detail);
  bool all_passed() const noexcept { return failures_ == 0; }
  std::size_t failures() const noexcept { return failures_; }
  nlohmann::ordered_json to_json() const { return records_; }

 private:
  nlohmann::ordered_json records_ = nlohmann::ordered_json::array();
  std::size_t failures_ = 0;
};

struct RunContext {
  RunConfig config;
  std::filesystem::path out;
  Assertions assertions;
  // Wall-clock figures that would break byte-identical result files go here
  // and end up in the manifest only.
  nlohmann::ordered_json timing = nlohmann::ordered_json::object();
};

void write_json(const std::filesystem::path& path, const nlohmann::ordered_json& j);
void write_manifest(const RunContext& ctx, const std::vector<std::string>& argv, const std::string& config_path,
                    double elapsed_seconds, int exit_status);

std::string fmt(double v);
std::string fmt_fixed(double v, int digits);

}  // namespace pilotwave::cli

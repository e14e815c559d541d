#include "run_config.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iostream>

#include "pilotwave/error.hpp"
#include "pilotwave/text.hpp"
#include "pilotwave/version.hpp"

namespace pilotwave::cli {

namespace {

std::string trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return std::string(s);
}

}  // namespace

const char* to_string(Source s) {
  switch (s) {
    case Source::kDefault: return "default";
    case Source::kConfig: return "config";
    case Source::kFlag: return "flag";
  }
  return "default";
}

ConfigFile read_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open config file " + path.string());
  ConfigFile out;
  std::string section;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const std::string t = trim(line);
    if (t.empty()) continue;
    const std::string where = path.string() + ":" + std::to_string(lineno);
    if (t.front() == '[') {
      if (t.back() != ']') throw InvalidArgument(where + ": malformed section header");
      section = trim(std::string_view(t).substr(1, t.size() - 2));
      continue;
    }
    const auto eq = t.find('=');
    if (eq == std::string::npos) throw InvalidArgument(where + ": expected key = value");
    std::string key = trim(std::string_view(t).substr(0, eq));
    for (auto& c : key)
      if (c == '_') c = '-';
    if (key.empty()) throw InvalidArgument(where + ": empty key");
    out[section].push_back({key, trim(std::string_view(t).substr(eq + 1)), lineno});
  }
  return out;
}

RunConfig::RunConfig(std::string subcommand, const std::vector<Key>& keys) : subcommand_(std::move(subcommand)) {
  for (const auto& k : keys) {
    order_.push_back(k.name);
    values_[k.name] = {k.fallback, Source::kDefault};
  }
}

void RunConfig::set(const std::string& key, std::string value, Source source) {
  auto it = values_.find(key);
  if (it == values_.end()) throw InvalidArgument("unknown key '" + key + "' for " + subcommand_);
  it->second = {std::move(value), source};
}

const std::string& RunConfig::text(const std::string& key) const {
  auto it = values_.find(key);
  if (it == values_.end()) throw std::logic_error("undeclared key " + key);
  return it->second.value;
}

double RunConfig::real(const std::string& key) const {
  double v = 0.0;
  if (!parse_double(text(key), v) || !std::isfinite(v))
    throw InvalidArgument(key + ": expected a finite number, got '" + text(key) + "'");
  return v;
}

std::uint64_t RunConfig::u64(const std::string& key) const {
  const std::string& s = text(key);
  std::uint64_t v = 0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size())
    throw InvalidArgument(key + ": expected a non-negative integer, got '" + s + "'");
  return v;
}

std::size_t RunConfig::count(const std::string& key) const { return static_cast<std::size_t>(u64(key)); }

bool RunConfig::flag(const std::string& key) const {
  const std::string& s = text(key);
  if (s == "true" || s == "1" || s == "yes" || s == "on") return true;
  if (s == "false" || s == "0" || s == "no" || s == "off") return false;
  throw InvalidArgument(key + ": expected true or false, got '" + s + "'");
}

std::vector<double> RunConfig::reals(const std::string& key) const {
  std::vector<double> out;
  if (trim(text(key)).empty()) return out;
  for (auto part : split(text(key), ',')) {
    double v = 0.0;
    if (!parse_double(part, v) || !std::isfinite(v)) throw InvalidArgument(key + ": bad list entry '" + std::string(part) + "'");
    out.push_back(v);
  }
  return out;
}

nlohmann::ordered_json RunConfig::to_json() const {
  nlohmann::ordered_json j = nlohmann::ordered_json::object();
  for (const auto& k : order_) {
    const auto& e = values_.at(k);
    j[k] = {{"value", e.value}, {"source", to_string(e.source)}};
  }
  return j;
}

void Assertions::check(const std::string& name, bool ok, const std::string& detail) {
  std::cout << (ok ? "PASS " : "FAIL ") << name << ": " << detail << '\n';
  records_.push_back({{"name", name}, {"pass", ok}, {"detail", detail}});
  failures_ += !ok;
}

void write_json(const std::filesystem::path& path, const nlohmann::ordered_json& j) {
  std::ofstream out(path);
  if (!out) throw InvalidArgument("cannot write " + path.string());
  out << j.dump(2) << '\n';
}

void write_manifest(const RunContext& ctx, const std::vector<std::string>& argv, const std::string& config_path,
                    double elapsed_seconds, int exit_status) {
  const std::time_t now = std::time(nullptr);
  char stamp[32];
  std::strftime(stamp, sizeof(stamp), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
  nlohmann::ordered_json m;
  m["subcommand"] = ctx.config.subcommand();
  m["argv"] = argv;
  m["seed"] = ctx.config.has("seed") ? ctx.config.text("seed") : "";
  m["out"] = ctx.out.string();
  m["config_file"] = config_path;
  m["config"] = ctx.config.to_json();
  m["versions"] = version_info();
  m["timestamp"] = stamp;
  m["elapsed_seconds"] = elapsed_seconds;
  m["timing"] = ctx.timing;
  m["assertions"] = ctx.assertions.to_json();
  m["exit_status"] = exit_status;
  write_json(ctx.out / "manifest.json", m);
}

std::string fmt(double v) { return format_double(v); }

std::string fmt_fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
  return buf;
}

}  // namespace pilotwave::cli

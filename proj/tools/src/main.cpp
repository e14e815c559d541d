#include <chrono>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <set>

#include <CLI11.hpp>

#include "commands.hpp"
#include "pilotwave/error.hpp"
#include "pilotwave/version.hpp"

namespace pw = pilotwave;
namespace cli = pilotwave::cli;

namespace {

enum Exit { kPass = 0, kAssertionFailed = 1, kUsage = 2, kNumerical = 3 };

std::vector<cli::Command> all_commands() {
  auto cmds = cli::physics_commands();
  for (auto& c : cli::theorem_commands()) cmds.push_back(std::move(c));
  cmds.push_back(cli::selftest_command());
  return cmds;
}

bool declares(const cli::Command& c, const std::string& key) {
  for (const auto& k : c.keys)
    if (k.name == key) return true;
  return false;
}

// Applies config file entries to `config`. Every section must name a
// subcommand and every key must be known to the subcommand(s) it can reach;
// a head key that only other subcommands understand is skipped.
void apply_config(const cli::ConfigFile& file, const std::vector<cli::Command>& cmds, const cli::Command& current,
                  cli::RunConfig& config) {
  for (const auto& [section, entries] : file) {
    const cli::Command* owner = nullptr;
    if (!section.empty()) {
      for (const auto& c : cmds)
        if (c.name == section) owner = &c;
      if (!owner) throw pw::InvalidArgument("config: unknown section [" + section + "]");
    }
    for (const auto& e : entries) {
      const std::string where = "config line " + std::to_string(e.line) + ": ";
      if (owner) {
        if (!declares(*owner, e.key))
          throw pw::InvalidArgument(where + "unknown key '" + e.key + "' in [" + section + "]");
        continue;
      }
      bool known = false;
      for (const auto& c : cmds) known = known || declares(c, e.key);
      if (!known) throw pw::InvalidArgument(where + "unknown key '" + e.key + "'");
    }
  }
  if (auto head = file.find(""); head != file.end())
    for (const auto& e : head->second)
      if (declares(current, e.key)) config.set(e.key, e.value, cli::Source::kConfig);
  if (auto own = file.find(current.name); own != file.end())
    for (const auto& e : own->second) config.set(e.key, e.value, cli::Source::kConfig);
}

}  // namespace

int main(int argc, char** argv) {
  const auto started = std::chrono::steady_clock::now();
  const std::vector<std::string> args(argv, argv + argc);
  const auto cmds = all_commands();

  CLI::App app{"pilotwave: pilot-wave experiments and no-go theorem checks"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(pw::version_info()["pilotwave"]));

  struct Bound {
    CLI::App* app;
    std::map<std::string, std::string> flags;
    std::string out;
    std::string config;
  };
  std::vector<Bound> bound(cmds.size());
  for (std::size_t i = 0; i < cmds.size(); ++i) {
    auto* sub = app.add_subcommand(cmds[i].name, cmds[i].description);
    bound[i].app = sub;
    for (const auto& k : cmds[i].keys)
      sub->add_option("--" + k.name, bound[i].flags[k.name], k.help + " (default " + k.fallback + ")");
    sub->add_option("--out", bound[i].out, "output directory (default runs/" + cmds[i].name + ")");
    sub->add_option("--config", bound[i].config, "key = value config file")->check(CLI::ExistingFile);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kPass : kUsage;
  }

  std::size_t which = 0;
  for (std::size_t i = 0; i < cmds.size(); ++i)
    if (bound[i].app->parsed()) which = i;
  const auto& cmd = cmds[which];
  const auto& b = bound[which];

  std::optional<cli::RunContext> ctx;
  try {
    cli::RunConfig config(cmd.name, cmd.keys);
    if (!b.config.empty()) apply_config(cli::read_config_file(b.config), cmds, cmd, config);
    for (const auto& [key, value] : b.flags)
      if (b.app->count("--" + key) > 0) config.set(key, value, cli::Source::kFlag);
    const std::filesystem::path out = b.out.empty() ? std::filesystem::path("runs") / cmd.name : std::filesystem::path(b.out);
    std::filesystem::create_directories(out);
    ctx.emplace(cli::RunContext{std::move(config), out, {}, nlohmann::ordered_json::object()});
  } catch (const pw::InvalidArgument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }

  int status = kPass;
  try {
    cmd.run(*ctx);
    status = ctx->assertions.all_passed() ? kPass : kAssertionFailed;
    std::cout << (status == kPass ? "PASS " : "FAIL ") << cmd.name << ": " << ctx->assertions.failures()
              << " failed assertion(s)\n";
  } catch (const pw::InvalidArgument& e) {
    std::cerr << "error: " << e.what() << '\n';
    status = kUsage;
  } catch (const pw::NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    status = kNumerical;
  }

  const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  try {
    cli::write_manifest(*ctx, args, b.config, elapsed, status);
  } catch (const pw::InvalidArgument& e) {
    std::cerr << "error: " << e.what() << '\n';
    if (status == kPass) status = kUsage;
  }
  return status;
}

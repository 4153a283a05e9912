// salab: command-line front end.
//
// Exit codes: 0 success, 1 a check or verification failed, 2 bad usage,
// bad configuration or unreadable input, 3 internal error.

#include <iostream>
#include <map>
#include <memory>
#include <string>

#include <spdlog/sinks/basic_file_sink.h>
#include <spdlog/sinks/stdout_sinks.h>
#include <spdlog/spdlog.h>

#include "CLI11.hpp"
#include "commands.h"
#include "config.h"
#include "salab/guard.h"

namespace {

std::string flag_names(const std::string& key) {
  std::string dashed = key;
  for (char& c : dashed)
    if (c == '_') c = '-';
  return dashed == key ? "--" + key : "--" + dashed + ",--" + key;
}

std::shared_ptr<spdlog::logger> make_logger(const std::string& path) {
  if (path.empty()) {
    auto log = std::make_shared<spdlog::logger>("salab", std::make_shared<spdlog::sinks::stderr_sink_mt>());
    log->set_level(spdlog::level::warn);
    log->set_pattern("salab: %l: %v");
    return log;
  }
  auto log = std::make_shared<spdlog::logger>(
      "salab", std::make_shared<spdlog::sinks::basic_file_sink_mt>(path, true));
  log->set_level(spdlog::level::info);
  log->flush_on(spdlog::level::info);
  return log;
}

}  // namespace

int main(int argc, char** argv) {
  using namespace salab::cli;

  CLI::App app{"Sherali-Adams clique lab"};
  app.require_subcommand(1);
  app.fallthrough();
  int jobs = 1;
  std::string log_path;
  app.add_option("--jobs", jobs, "worker threads for per-seed trials")->check(CLI::PositiveNumber);
  app.add_option("--log", log_path, "write progress to this file");

  struct Slot {
    CLI::App* sub = nullptr;
    std::string config;
    std::map<std::string, std::string> raw;
    std::map<std::string, CLI::Option*> opts;
  };
  std::map<std::string, Slot> slots;
  for (const auto& schema : command_schemas()) {
    Slot& slot = slots[schema.name];
    slot.sub = app.add_subcommand(schema.name, schema.summary);
    slot.sub->add_option("--config", slot.config, "JSON file with parameter values");
    for (const auto& f : schema.fields) {
      std::string help = f.help + " [" + to_string(f.type) + "]";
      if (!f.fallback.is_null()) help += " default " + f.fallback.dump();
      slot.opts[f.key] = slot.sub->add_option(flag_names(f.key), slot.raw[f.key], help);
    }
  }
  auto* schema_cmd = app.add_subcommand("schema", "print the configuration keys of every command as Markdown");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  if (schema_cmd->parsed()) {
    std::cout << schema_markdown();
    return kOk;
  }

  Context ctx;
  ctx.jobs = jobs;
  try {
    ctx.log = make_logger(log_path);
  } catch (const spdlog::spdlog_ex& e) {
    std::cerr << "salab: cannot open log file: " << e.what() << "\n";
    return kUsage;
  }

  for (auto& [name, slot] : slots) {
    if (!slot.sub->parsed()) continue;
    try {
      std::map<std::string, std::string> flags;
      for (const auto& [key, opt] : slot.opts)
        if (opt->count() > 0) flags[key] = slot.raw[key];
      std::optional<std::string> config_path;
      if (!slot.config.empty()) config_path = slot.config;
      Config cfg = resolve(schema_for(name), config_path, flags);
      ctx.log->info("{} {}", name, cfg.values().dump());
      return run_command(name, cfg, ctx);
    } catch (const UsageError& e) {
      std::cerr << "salab " << name << ": " << e.what() << "\n";
      return kUsage;
    } catch (const salab::GuardExceeded& e) {
      std::cerr << "salab " << name << ": " << e.what() << " (raise SA_LAB_GUARD to allow it)\n";
      return kUsage;
    } catch (const std::invalid_argument& e) {
      std::cerr << "salab " << name << ": invalid input: " << e.what() << "\n";
      return kUsage;
    } catch (const nlohmann::json::exception& e) {
      std::cerr << "salab " << name << ": malformed JSON input: " << e.what() << "\n";
      return kUsage;
    } catch (const std::exception& e) {
      std::cerr << "salab " << name << ": internal error: " << e.what() << "\n";
      return 3;
    }
  }
  return kUsage;
}

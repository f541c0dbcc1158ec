#pragma once

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "conegauge/cli/commands.hpp"
#include "conegauge/cli/config.hpp"
#include "conegauge/cli/output.hpp"
#include "conegauge/version.hpp"

namespace conegauge::cli {

enum ExitStatus : int { kSuccess = 0, kValidationError = 2, kRuntimeError = 3 };

struct RunRequest {
  std::string command;
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::filesystem::path out_dir = ".";
  std::size_t threads = 1;
};

struct RunResult {
  int status = kSuccess;
  std::string message;
  std::vector<std::string> files;
};

inline const std::vector<std::string>& commands() {
  static const std::vector<std::string> c{"algebra", "fpp", "iarch", "gauge", "shape", "diagnostics"};
  return c;
}

/// --threads wins; then CONEGAUGE_THREADS; then 1.
inline std::size_t resolve_threads(std::optional<long> flag) {
  long t = 1;
  if (flag) {
    t = *flag;
  } else if (const char* env = std::getenv("CONEGAUGE_THREADS"); env && *env) {
    char* end = nullptr;
    t = std::strtol(env, &end, 10);
    if (*end != '\0') throw ConfigError("CONEGAUGE_THREADS must be an integer");
  }
  if (t < 1 || t > 1024) throw ConfigError("thread count must lie in [1, 1024]");
  return static_cast<std::size_t>(t);
}

/// Manifest rows: (section, key, value). The config is echoed leaf by leaf as JSON.
inline std::string manifest(const std::string& command, std::uint64_t seed, const Json& config,
                            const std::vector<OutputFile>& outputs) {
  CsvTable t({"section", "key", "value"});
  t.row({"meta", "version", kVersion});
  t.row({"meta", "command", command});
  t.row({"meta", "seed", std::to_string(seed)});
  const Json flat = config.flatten();
  for (const auto& [k, v] : flat.items()) t.row({"config", k, v.dump()});
  for (const auto& f : outputs) t.row({"output", f.name, sha256_hex(f.content)});
  return t.text();
}

inline Job parse_command(const std::string& command, Section& cfg, const RunContext& ctx) {
  if (command == "algebra") return parse_algebra(cfg, ctx);
  if (command == "fpp") return parse_fpp(cfg, ctx);
  if (command == "iarch") return parse_iarch(cfg, ctx);
  if (command == "gauge") return parse_gauge(cfg, ctx);
  if (command == "shape") return parse_shape(cfg, ctx);
  if (command == "diagnostics") return parse_diagnostics(cfg, ctx);
  throw ConfigError("unknown command '" + command + "'");
}

/// Validates the whole config, computes every table in memory, then writes the
/// CSVs and manifest.csv. Nothing is left on disk unless the run succeeds.
inline RunResult run(const RunRequest& req, const Json& config) {
  RunResult out;
  std::vector<OutputFile> files;
  try {
    Section root(config, "");
    if (root.has("command") && root.choice("command", {commands().begin(), commands().end()}) != req.command)
      throw ConfigError("config is for command '" + config["command"].get<std::string>() + "', not '" +
                        req.command + "'");
    root.text("description", "");
    RunContext ctx;
    ctx.seed = static_cast<std::uint64_t>(root.integer("seed", 0, std::numeric_limits<std::int64_t>::max(), 0));
    if (req.seed) ctx.seed = *req.seed;
    ctx.threads = req.threads;
    Job job = parse_command(req.command, root, ctx);
    root.finish();

    files = job();
    files.push_back({"manifest.csv", manifest(req.command, ctx.seed, config, files)});
    write_all(req.out_dir, files);
  } catch (const InputError& e) {
    return {kValidationError, e.what(), {}};
  } catch (const std::exception& e) {
    return {kRuntimeError, e.what(), {}};
  }
  for (const auto& f : files) out.files.push_back((req.out_dir / f.name).string());
  return out;
}

inline RunResult run(const RunRequest& req) {
  Json config;
  try {
    config = load_config(req.config_path);
  } catch (const InputError& e) {
    return {kValidationError, e.what(), {}};
  }
  return run(req, config);
}

}  // namespace conegauge::cli

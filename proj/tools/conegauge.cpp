#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "conegauge/cli/runner.hpp"
#include "conegauge/cli/selftest.hpp"

namespace cg = conegauge::cli;

int main(int argc, char** argv) {
  CLI::App app{"conegauge: exact cone and semigroup algebra, gauges, and shape experiments"};
  app.set_version_flag("--version", conegauge::kVersion);
  std::string command, config;
  std::optional<std::uint64_t> seed;
  std::optional<long> threads;
  std::string out = ".";
  std::vector<std::string> choices = cg::commands();
  choices.push_back("selftest");
  app.add_option("command", command, "algebra | fpp | iarch | gauge | shape | diagnostics | selftest")
      ->required()
      ->check(CLI::IsMember(choices));
  app.add_option("--config", config, "JSON config file (see configs/schema.json)");
  app.add_option("--seed", seed, "master seed; overrides the config's seed");
  app.add_option("--out", out, "output directory");
  app.add_option("--threads", threads, "worker threads; falls back to CONEGAUGE_THREADS");
  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return cg::kValidationError;
  }

  if (command == "selftest") {
    const char* corrupt = std::getenv("CONEGAUGE_SELFTEST_CORRUPT");
    auto rep = cg::selftest(corrupt ? corrupt : "");
    std::cout << rep.text;
    return rep.passed ? 0 : 1;
  }
  if (config.empty()) {
    std::cerr << "error: --config is required for '" << command << "'\n";
    return cg::kValidationError;
  }

  cg::RunRequest req;
  req.command = command;
  req.config_path = config;
  req.seed = seed;
  req.out_dir = out;
  try {
    req.threads = cg::resolve_threads(threads);
  } catch (const cg::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return cg::kValidationError;
  }
  auto res = cg::run(req);
  if (res.status != cg::kSuccess) {
    std::cerr << (res.status == cg::kValidationError ? "invalid config: " : "runtime error: ") << res.message << "\n";
    return res.status;
  }
  for (const auto& f : res.files) std::cout << f << "\n";
  return 0;
}

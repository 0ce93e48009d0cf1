#include <chrono>
#include <cstdio>
#include <fstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "qchaos/experiments.hpp"

namespace {

using nlohmann::json;
namespace exp = qchaos::experiments;

json loadConfig(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw exp::ConfigError("cannot read config file: " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw exp::ConfigError("config is not valid JSON: " + std::string(e.what()));
  }
}

void printCatalog() {
  for (const auto& info : exp::experimentRegistry()) {
    std::printf("%-24s %s\n", info.name.c_str(), info.summary.c_str());
    std::string line = "  params:";
    for (const auto& p : info.params) {
      line += " ";
      line += p.required ? p.name + "(" + p.type + ")"
                         : "[" + p.name + "(" + p.type + ")]";
    }
    std::printf("%s\n", line.c_str());
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qchaos: kicked-top chaos, tomography, and concentration "
               "experiments"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_override;
  long long seed_override = 0;
  bool has_seed_override = false;

  CLI::App* run = app.add_subcommand("run", "run one experiment from a config");
  run->add_option("--config", config_path, "JSON config file")->required();
  run->add_option("--seed", seed_override, "override the config seed")
      ->each([&](const std::string&) { has_seed_override = true; });
  run->add_option("--out", out_override, "override the config output path");

  CLI::App* list = app.add_subcommand("list", "print the experiment catalog");

  CLI::App* validate =
      app.add_subcommand("validate", "check a config without running it");
  validate->add_option("--config", config_path, "JSON config file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (list->parsed()) {
      printCatalog();
      return 0;
    }
    if (validate->parsed()) {
      exp::validateConfig(loadConfig(config_path));
      std::printf("ok\n");
      return 0;
    }

    json config = loadConfig(config_path);
    if (has_seed_override) config["seed"] = seed_override;
    if (!out_override.empty()) config["output"] = out_override;
    exp::validateConfig(config);
    if (!config.contains("output"))
      throw exp::ConfigError("missing required field: output");
    const std::string out_path = config["output"].get<std::string>();
    const std::string format = config.value("format", "csv");

    const auto t0 = std::chrono::steady_clock::now();
    const exp::ResultTable table = exp::runExperiment(config);
    const std::chrono::duration<double> elapsed =
        std::chrono::steady_clock::now() - t0;
    std::fprintf(stderr, "wall_time_s=%.3f\n", elapsed.count());

    exp::emitTable(table, out_path, format);
    return 0;
  } catch (const exp::ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  }
}

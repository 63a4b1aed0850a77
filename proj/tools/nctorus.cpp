#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "nctorus/cli.hpp"

namespace {

nct::json prepare(const std::string& path, const std::vector<std::string>& sets) {
  nct::json config = nct::cli::load_config(path);
  for (const auto& s : sets) {
    nct::cli::apply_override(config, s);
  }
  return nct::cli::resolve(config);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Noncommutative torus experiment runner"};
  app.set_version_flag("--version", nct::cli::kVersion);
  app.require_subcommand(1);

  std::string config;
  std::vector<std::string> sets;
  unsigned threads = 1;
  std::string out;

  auto* run = app.add_subcommand("run", "Run an experiment and write its outputs");
  run->add_option("config", config, "Config JSON (or a manifest to replay)")->required();
  run->add_option("--set", sets, "Override a value: key=value (repeatable)");
  run->add_option("--threads", threads, "Worker threads (1 is bit-reproducible)")
      ->check(CLI::PositiveNumber);
  run->add_option("--out", out, "Output directory");

  auto* validate = app.add_subcommand("validate", "Check a config and print it resolved");
  validate->add_option("config", config, "Config JSON")->required();
  validate->add_option("--set", sets, "Override a value: key=value (repeatable)");

  CLI11_PARSE(app, argc, argv);

  try {
    const nct::json resolved = prepare(config, sets);
    if (validate->parsed()) {
      std::cout << resolved.dump(2) << '\n';
      return 0;
    }
    const auto dir = nct::cli::output_dir(
        resolved, out.empty() ? std::nullopt : std::optional<std::filesystem::path>(out));
    const nct::json manifest = nct::cli::run(resolved, dir, threads);
    std::cout << manifest.dump(2) << '\n';
    return 0;
  } catch (const std::exception& e) {
    std::cerr << nct::cli::error_json(e).dump() << '\n';
    return nct::cli::exit_code(e);
  }
}

#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nctorus/io.hpp"

namespace nct::cli {

inline constexpr const char* kVersion = "0.1.0";
inline constexpr const char* kDefaultOutDir = "nctorus-out";

inline const std::vector<std::string>& experiments() {
  static const std::vector<std::string> names{
      "trace-invariance", "ergodic-average",      "weighted-average", "spectral-measure",
      "cohomology",       "classical-crosscheck", "counterexample"};
  return names;
}

/// Parameter defaults of one experiment; every accepted key appears here.
const json& defaults(const std::string& experiment);

/// Reads a config document. A manifest written by `run` is accepted too:
/// its `config` member is used, which replays the run.
json load_config(const std::filesystem::path& path);

/// Applies one `key=value` override. `experiment` and `output_dir` address
/// the top level; any other key (optionally `parameters.`-prefixed) is a
/// parameter. The value is read as JSON when it parses, else as a string.
void apply_override(json& config, std::string_view assignment);

/// Validates and fills defaults: {experiment, parameters, [output_dir]}.
/// Unknown keys, wrong types and malformed spec strings raise ConfigError.
json resolve(const json& config);

/// --out flag, then config output_dir, then NCTORUS_OUT, then the default.
std::filesystem::path output_dir(const json& resolved,
                                 const std::optional<std::filesystem::path>& flag);

/// Runs a resolved config, writing results.csv, experiment-specific files
/// and manifest.json into `out`. Returns the manifest. Module errors are
/// rethrown as ExperimentError.
json run(const json& resolved, const std::filesystem::path& out, unsigned threads = 1);

/// Machine-readable description of an exception, for stderr.
json error_json(const std::exception& e);
/// Process exit code for an exception: 2 config/parse, 3 experiment, 1 other.
int exit_code(const std::exception& e);

}  // namespace nct::cli

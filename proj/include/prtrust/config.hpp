#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "prtrust/aggregate.hpp"
#include "prtrust/metrics.hpp"

namespace prtrust {

/// Everything that parameterizes an analysis run.
struct AnalysisConfig {
  MetricsConfig metrics;
  Weights weights;
  SamplePlan sample;
  /// Where the lexicon was read from; empty means the built-in defaults.
  std::string lexicon_path;

  bool operator==(const AnalysisConfig&) const = default;

  /// Throws ConfigError.
  void validate() const;
};

/// Applies `key = value` lines onto `config`. Blank lines and '#' comments are
/// ignored. Recognized keys: f_cap, competence_window, accept_ratio,
/// per_repo_n, seed, weights.<dimension>, lexicon_path, exclude_bots.
/// A relative lexicon_path is resolved against `base_dir`, and the lexicon is
/// loaded immediately. Throws ConfigError on unknown keys or bad values.
void apply_config_text(AnalysisConfig& config, std::string_view text,
                       const std::filesystem::path& base_dir = {});

AnalysisConfig load_config(const std::filesystem::path& path);

/// Sets one key; shared by the file parser and command-line overrides.
void set_config_value(AnalysisConfig& config, std::string_view key, std::string_view value,
                      const std::filesystem::path& base_dir = {});

}  // namespace prtrust

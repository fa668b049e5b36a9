#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "prtrust/aggregate.hpp"
#include "prtrust/config.hpp"
#include "prtrust/corpus.hpp"

namespace prtrust {

std::string_view tool_version();

struct SnapshotMeta {
  std::string repo_owner;
  std::string repo_name;
  Timestamp fetched_at;
  std::uint64_t pull_count = 0;

  bool operator==(const SnapshotMeta&) const = default;
};

/// Everything produced by one analysis run. The config echo carries the
/// resolved lexicon patterns, so re-running it against the same snapshot
/// reproduces the bundle exactly.
struct ReportBundle {
  SnapshotMeta snapshot;
  AnalysisConfig config;
  std::vector<TrustProfile> profiles;
  RepoSummary summary;
  /// Closure propensities of every user who closed something, by login.
  std::vector<Propensity> developers;
  std::string tool_version;

  bool operator==(const ReportBundle&) const = default;
};

/// Profiles for every PR in the snapshot plus the stratified summary.
/// Throws EmptyInputError for a snapshot without pull requests.
ReportBundle analyze(const RepoSnapshot& snapshot, const AnalysisConfig& config);

enum class ReportFormat { json, csv, markdown };
ReportFormat parse_report_format(std::string_view s);

/// Six decimal places, ties rounded away from zero, computed on the exact
/// binary value of `value`.
std::string format_fixed6(double value);

nlohmann::json bundle_to_json(const ReportBundle& bundle);
ReportBundle bundle_from_json(const nlohmann::json& doc);

std::string render_json(const ReportBundle& bundle);
std::string render_csv(const ReportBundle& bundle);
std::string render_markdown(const ReportBundle& bundle);
std::string render(const ReportBundle& bundle, ReportFormat format);

/// Writes the rendered bundle (UTF-8, LF, no BOM). Throws IoError.
void emit(const ReportBundle& bundle, ReportFormat format, const std::filesystem::path& path);

/// Reads a JSON bundle written by emit(). Throws ParseError / IoError.
ReportBundle load_report(const std::filesystem::path& path);

}  // namespace prtrust

#include "prtrust/cli.hpp"

#include <CLI11.hpp>

#include "prtrust/aggregate.hpp"
#include "prtrust/config.hpp"
#include "prtrust/errors.hpp"
#include "prtrust/ingest.hpp"
#include "prtrust/report.hpp"

namespace prtrust::cli {

namespace {

struct FetchArgs {
  std::string repo;
  std::uint64_t max_pulls = 0;
  bool include_open = false;
  std::string out;
  std::string cache;
  std::string api_base = "https://api.github.com";
  unsigned jobs = 4;
  bool cache_only = false;
};

struct SampleArgs {
  std::string in;
  std::uint64_t n = 25;
  double accept_ratio = 0.75;
  std::uint64_t seed = 0;
  std::string out;
};

struct AnalyzeArgs {
  std::string in;
  std::string config;
  std::string out;
  std::string format = "json";
  std::optional<double> f_cap;
  std::optional<std::size_t> window;
  std::string lexicon;
  bool include_bots = false;
};

int do_fetch(const FetchArgs& a, std::ostream& out) {
  FetchPlan plan;
  const auto slash = a.repo.find('/');
  if (slash == std::string::npos || slash == 0 || slash + 1 == a.repo.size() ||
      a.repo.find('/', slash + 1) != std::string::npos) {
    throw ConfigError("--repo must look like owner/name");
  }
  plan.repo_owner = a.repo.substr(0, slash);
  plan.repo_name = a.repo.substr(slash + 1);
  plan.max_pulls = a.max_pulls;
  plan.include_open = a.include_open;
  if (!a.cache.empty()) plan.cache_dir = a.cache;
  plan.api_base = a.api_base;
  plan.max_in_flight = a.jobs;
  plan.revalidate = !a.cache_only;

  FetchStats stats;
  const RepoSnapshot snapshot = fetch_snapshot(plan, &stats);
  save_snapshot(snapshot, a.out);
  out << "fetched " << snapshot.pulls.size() << " pull requests and " << snapshot.users.size()
      << " users (" << stats.requests << " requests, " << stats.uncached << " uncached)\n";
  return kOk;
}

int do_sample(const SampleArgs& a, std::ostream& out) {
  const RepoSnapshot snapshot = load_snapshot(a.in);
  SamplePlan plan{a.n, a.accept_ratio, a.seed};
  const auto numbers = stratified_sample(snapshot, plan);
  save_snapshot(restrict_snapshot(snapshot, numbers), a.out);
  out << "sampled " << plan.accepted_count() << " accepted and " << plan.rejected_count()
      << " rejected pull requests\n";
  return kOk;
}

int do_analyze(const AnalyzeArgs& a, std::ostream& out) {
  AnalysisConfig config;
  if (!a.config.empty()) config = load_config(a.config);
  // Flags win over the config file.
  if (a.f_cap) config.metrics.f_cap = *a.f_cap;
  if (a.window) config.metrics.competence_window = *a.window;
  if (!a.lexicon.empty()) set_config_value(config, "lexicon_path", a.lexicon);
  if (a.include_bots) config.metrics.exclude_bots = false;
  const ReportFormat format = parse_report_format(a.format);

  const RepoSnapshot snapshot = load_snapshot(a.in);
  const ReportBundle bundle = analyze(snapshot, config);
  emit(bundle, format, a.out);
  out << "analyzed " << bundle.profiles.size() << " pull requests -> " << a.out << "\n";
  return kOk;
}

int do_summary(const std::string& in, std::ostream& out) {
  out << render_markdown(load_report(in));
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Trust signals mined from GitHub pull requests", "prtrust"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(tool_version()));

  FetchArgs fa;
  auto* fetch = app.add_subcommand("fetch", "Download a repository snapshot from the GitHub REST API");
  fetch->add_option("--repo", fa.repo, "Repository as owner/name")->required();
  fetch->add_option("--max-pulls", fa.max_pulls, "Number of most recent pull requests")
      ->required()
      ->check(CLI::PositiveNumber);
  fetch->add_flag("--include-open", fa.include_open, "Also fetch open pull requests");
  fetch->add_option("--out", fa.out, "Snapshot file to write")->required();
  fetch->add_option("--cache", fa.cache, "Response cache directory");
  fetch->add_option("--api-base", fa.api_base, "REST API root (GitHub Enterprise: https://HOST/api/v3)");
  fetch->add_option("--jobs", fa.jobs, "Concurrent requests")->check(CLI::Range(1u, 64u));
  fetch->add_flag("--cache-only", fa.cache_only, "Serve cached responses without revalidating them");

  SampleArgs sa;
  auto* sample = app.add_subcommand("sample", "Draw a stratified accepted/rejected sample");
  sample->add_option("--in", sa.in, "Input snapshot")->required();
  sample->add_option("--n", sa.n, "Pull requests to draw")->check(CLI::PositiveNumber);
  sample->add_option("--accept-ratio", sa.accept_ratio, "Fraction drawn from accepted PRs")
      ->check(CLI::Range(0.0, 1.0));
  sample->add_option("--seed", sa.seed, "Seed for the sampler");
  sample->add_option("--out", sa.out, "Snapshot file to write")->required();

  AnalyzeArgs aa;
  auto* analyze_cmd = app.add_subcommand("analyze", "Score every pull request in a snapshot");
  analyze_cmd->add_option("--in", aa.in, "Input snapshot")->required();
  analyze_cmd->add_option("--config", aa.config, "key = value configuration file");
  analyze_cmd->add_option("--out", aa.out, "Report file to write")->required();
  analyze_cmd->add_option("--format", aa.format, "json, csv, or markdown")
      ->check(CLI::IsMember({"json", "csv", "markdown"}));
  analyze_cmd->add_option("--f-cap", aa.f_cap, "Overrides f_cap");
  analyze_cmd->add_option("--competence-window", aa.window, "Overrides competence_window");
  analyze_cmd->add_option("--lexicon", aa.lexicon, "Overrides lexicon_path");
  analyze_cmd->add_flag("--include-bots", aa.include_bots, "Count [bot] accounts as participants");

  std::string report_in;
  auto* summary = app.add_subcommand("summary", "Print the markdown summary of a JSON report");
  summary->add_option("--in", report_in, "Report written by analyze --format json")->required();

  std::vector<std::string> storage;
  storage.reserve(args.size() + 1);
  storage.emplace_back("prtrust");
  storage.insert(storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : storage) argv.push_back(s.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    const auto subs = app.get_subcommands();
    out << (subs.empty() ? app.help() : subs.front()->help());
    return kOk;
  } catch (const CLI::CallForVersion&) {
    out << tool_version() << "\n";
    return kOk;
  } catch (const CLI::ParseError& e) {
    const auto subs = app.get_subcommands();
    err << "error: " << e.what() << "\n\n" << (subs.empty() ? app.help() : subs.front()->help());
    return kInvalid;
  }

  try {
    if (*fetch) return do_fetch(fa, out);
    if (*sample) return do_sample(sa, out);
    if (*analyze_cmd) return do_analyze(aa, out);
    if (*summary) return do_summary(report_in, out);
  } catch (const InsufficientStratumError& e) {
    err << "error: " << e.what() << "\n";
    return kInsufficient;
  } catch (const RateLimitError& e) {
    err << "error: " << e.what() << "\n";
    if (!e.completed().empty()) {
      err << "completed pull requests:";
      for (auto n : e.completed()) err << ' ' << n;
      err << "\n";
    }
    err << "resume: rerun the same command";
    if (fa.cache.empty()) err << " with --cache DIR so finished responses are reused";
    err << " after " << format_timestamp(Timestamp{e.reset_at()}) << " or set GITHUB_TOKEN\n";
    return kNetwork;
  } catch (const NetworkError& e) {
    err << "error: " << e.what() << "\n";
    return kNetwork;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kInvalid;
  }
  return kInvalid;
}

}  // namespace prtrust::cli

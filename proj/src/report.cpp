#include "prtrust/report.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "prtrust/errors.hpp"

#ifndef PRTRUST_VERSION
#define PRTRUST_VERSION "0.0.0"
#endif

namespace prtrust {

using nlohmann::json;

std::string_view tool_version() { return "prtrust " PRTRUST_VERSION; }

ReportBundle analyze(const RepoSnapshot& snapshot, const AnalysisConfig& config) {
  config.validate();
  if (snapshot.pulls.empty()) throw EmptyInputError("snapshot has no pull requests to analyze");

  ReportBundle b;
  b.snapshot = {snapshot.repo_owner, snapshot.repo_name, snapshot.fetched_at, snapshot.pulls.size()};
  b.config = config;
  b.profiles.reserve(snapshot.pulls.size());
  for (const PullRequest& pr : snapshot.pulls) {
    b.profiles.push_back(build_profile(pr, snapshot, config.metrics, config.weights));
  }
  b.summary = summarize(b.profiles, snapshot);
  for (const auto& [login, user] : snapshot.users) {
    if (auto p = closure_propensity(login, snapshot)) b.developers.push_back(std::move(*p));
  }
  b.tool_version = std::string(tool_version());
  return b;
}

ReportFormat parse_report_format(std::string_view s) {
  if (s == "json") return ReportFormat::json;
  if (s == "csv") return ReportFormat::csv;
  if (s == "markdown" || s == "md") return ReportFormat::markdown;
  throw ConfigError("unknown report format '" + std::string(s) + "'");
}

std::string format_fixed6(double value) {
  if (!std::isfinite(value)) return std::isnan(value) ? "nan" : (value > 0 ? "inf" : "-inf");
  // Enough fractional digits that the expansion is exact for any double
  // >= 2^-1074, so the rounding below sees the true value.
  static constexpr int kExact = 1100;
  std::string buf(1500, '\0');
  const auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), std::fabs(value),
                                       std::chars_format::fixed, kExact);
  if (ec != std::errc{}) throw Error("format_fixed6: number too large");
  std::string digits(buf.data(), end);

  const auto dot = digits.find('.');
  std::string integral = digits.substr(0, dot);
  std::string fraction = digits.substr(dot + 1, 6);
  const bool round_up = digits[dot + 7] >= '5';

  if (round_up) {
    std::string all = integral + fraction;
    int i = static_cast<int>(all.size()) - 1;
    while (i >= 0 && all[static_cast<std::size_t>(i)] == '9') all[static_cast<std::size_t>(i--)] = '0';
    if (i < 0) {
      all.insert(all.begin(), '1');
    } else {
      ++all[static_cast<std::size_t>(i)];
    }
    integral = all.substr(0, all.size() - 6);
    fraction = all.substr(all.size() - 6);
  }
  std::string out = integral + "." + fraction;
  const bool zero = out.find_first_not_of("0.") == std::string::npos;
  if (std::signbit(value) && !zero) out.insert(out.begin(), '-');
  return out;
}

// ---------------------------------------------------------------------------
// JSON encoding

namespace {

json opt(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

std::optional<double> opt_double(const json& j) {
  if (j.is_null()) return std::nullopt;
  return j.get<double>();
}

json propensity_json(const Propensity& p) {
  return {{"login", p.login},
          {"closed", p.closed},
          {"accepted", p.accepted},
          {"value", p.value},
          {"source", to_string(p.source)}};
}

Propensity propensity_from(const json& j) {
  Propensity p;
  p.login = j.at("login").get<std::string>();
  p.closed = j.at("closed").get<std::uint64_t>();
  p.accepted = j.at("accepted").get<std::uint64_t>();
  p.value = j.at("value").get<double>();
  p.source = j.at("source").get<std::string>() == "closure_history" ? PropensitySource::closure_history
                                                                    : PropensitySource::snapshot;
  return p;
}

json evidence_json(const Evidence& e) {
  return std::visit(
      [](const auto& ev) -> json {
        using T = std::decay_t<decltype(ev)>;
        if constexpr (std::is_same_v<T, ActionEvidence>) {
          return {{"comment_count", ev.comment_count},
                  {"non_author_comment_count", ev.non_author_comment_count},
                  {"active_days", ev.active_days},
                  {"frequency", ev.frequency},
                  {"revision_commits", ev.revision_commits},
                  {"first_feedback_at", ev.first_feedback_at
                                            ? json(format_timestamp(*ev.first_feedback_at))
                                            : json(nullptr)}};
        } else if constexpr (std::is_same_v<T, CommitmentEvidence>) {
          return {{"requested", ev.requested},
                  {"responded", ev.responded},
                  {"any_response", ev.any_response},
                  {"changes_requested_reviews", ev.changes_requested_reviews},
                  {"author_addressed", ev.author_addressed},
                  {"responders", ev.responders}};
        } else if constexpr (std::is_same_v<T, CompetenceEvidence>) {
          return {{"prior_pr_count", ev.prior_pr_count},
                  {"prior_decided", ev.prior_decided},
                  {"prior_accepted", ev.prior_accepted},
                  {"prior_acceptance_rate", opt(ev.prior_acceptance_rate)},
                  {"followers", ev.followers},
                  {"has_write", ev.has_write},
                  {"permission_unknown", ev.permission_unknown},
                  {"history_component", opt(ev.history_component)},
                  {"follower_component", opt(ev.follower_component)},
                  {"permission_component", opt(ev.permission_component)}};
        } else if constexpr (std::is_same_v<T, InstitutionalEvidence>) {
          return {{"counterparties", ev.counterparties},
                  {"shared", ev.shared},
                  {"shared_logins", ev.shared_logins},
                  {"author_has_orgs", ev.author_has_orgs}};
        } else if constexpr (std::is_same_v<T, PersonalityEvidence>) {
          json reviewers = json::array();
          for (const auto& r : ev.reviewers) reviewers.push_back(propensity_json(r));
          return {{"closer", ev.closer ? propensity_json(*ev.closer) : json(nullptr)},
                  {"reviewers", std::move(reviewers)}};
        } else {
          json vouches = json::array();
          for (const auto& v : ev.vouches) {
            vouches.push_back({{"comment_id", v.comment_id},
                               {"source", to_string(v.source)},
                               {"pattern", v.pattern},
                               {"voucher", v.voucher}});
          }
          return {{"vouches", std::move(vouches)}, {"low_confidence", ev.low_confidence}};
        }
      },
      e);
}

CommentSource comment_source_from(const std::string& s) {
  if (s == "issue_comment") return CommentSource::issue_comment;
  if (s == "review_comment") return CommentSource::review_comment;
  if (s == "review") return CommentSource::review;
  throw ParseError("unknown comment source '" + s + "'");
}

Evidence evidence_from(Dimension d, const json& j) {
  switch (d) {
    case Dimension::action: {
      ActionEvidence ev;
      ev.comment_count = j.at("comment_count").get<std::uint64_t>();
      ev.non_author_comment_count = j.at("non_author_comment_count").get<std::uint64_t>();
      ev.active_days = j.at("active_days").get<std::int64_t>();
      ev.frequency = j.at("frequency").get<double>();
      ev.revision_commits = j.at("revision_commits").get<std::uint64_t>();
      if (!j.at("first_feedback_at").is_null()) {
        ev.first_feedback_at = parse_timestamp(j.at("first_feedback_at").get<std::string>());
      }
      return ev;
    }
    case Dimension::commitment: {
      CommitmentEvidence ev;
      ev.requested = j.at("requested").get<std::uint64_t>();
      ev.responded = j.at("responded").get<std::uint64_t>();
      ev.any_response = j.at("any_response").get<bool>();
      ev.changes_requested_reviews = j.at("changes_requested_reviews").get<std::uint64_t>();
      ev.author_addressed = j.at("author_addressed").get<bool>();
      ev.responders = j.at("responders").get<std::vector<std::string>>();
      return ev;
    }
    case Dimension::competence: {
      CompetenceEvidence ev;
      ev.prior_pr_count = j.at("prior_pr_count").get<std::uint64_t>();
      ev.prior_decided = j.at("prior_decided").get<std::uint64_t>();
      ev.prior_accepted = j.at("prior_accepted").get<std::uint64_t>();
      ev.prior_acceptance_rate = opt_double(j.at("prior_acceptance_rate"));
      ev.followers = j.at("followers").get<std::uint64_t>();
      ev.has_write = j.at("has_write").get<bool>();
      ev.permission_unknown = j.at("permission_unknown").get<bool>();
      ev.history_component = opt_double(j.at("history_component"));
      ev.follower_component = opt_double(j.at("follower_component"));
      ev.permission_component = opt_double(j.at("permission_component"));
      return ev;
    }
    case Dimension::institutional: {
      InstitutionalEvidence ev;
      ev.counterparties = j.at("counterparties").get<std::uint64_t>();
      ev.shared = j.at("shared").get<std::uint64_t>();
      ev.shared_logins = j.at("shared_logins").get<std::vector<std::string>>();
      ev.author_has_orgs = j.at("author_has_orgs").get<bool>();
      return ev;
    }
    case Dimension::personality: {
      PersonalityEvidence ev;
      if (!j.at("closer").is_null()) ev.closer = propensity_from(j.at("closer"));
      for (const auto& r : j.at("reviewers")) ev.reviewers.push_back(propensity_from(r));
      return ev;
    }
    case Dimension::transferred: {
      TransferredEvidence ev;
      for (const auto& v : j.at("vouches")) {
        ev.vouches.push_back(Vouch{v.at("comment_id").get<std::int64_t>(),
                                   comment_source_from(v.at("source").get<std::string>()),
                                   v.at("pattern").get<std::string>(),
                                   v.at("voucher").get<std::string>()});
      }
      ev.low_confidence = j.at("low_confidence").get<bool>();
      return ev;
    }
  }
  throw ParseError("unknown dimension");
}

json stratum_json(const StratumSummary& s) {
  json means = json::object();
  for (Dimension d : kDimensions) means[std::string(to_string(d))] = opt(s.mean_scores[index_of(d)]);
  return {{"size", s.size},
          {"mean_comment_frequency", opt(s.mean_comment_frequency)},
          {"with_post_feedback_commits", s.with_post_feedback_commits},
          {"with_review_response", s.with_review_response},
          {"no_prior_accepted", s.no_prior_accepted},
          {"first_pr", s.first_pr},
          {"with_shared_org", s.with_shared_org},
          {"closer_full_propensity", s.closer_full_propensity},
          {"closer_or_reviewer_full_propensity", s.closer_or_reviewer_full_propensity},
          {"with_transferred_trust", s.with_transferred_trust},
          {"mean_overall", opt(s.mean_overall)},
          {"mean_scores", std::move(means)}};
}

StratumSummary stratum_from(const json& j) {
  StratumSummary s;
  s.size = j.at("size").get<std::uint64_t>();
  s.mean_comment_frequency = opt_double(j.at("mean_comment_frequency"));
  s.with_post_feedback_commits = j.at("with_post_feedback_commits").get<std::uint64_t>();
  s.with_review_response = j.at("with_review_response").get<std::uint64_t>();
  s.no_prior_accepted = j.at("no_prior_accepted").get<std::uint64_t>();
  s.first_pr = j.at("first_pr").get<std::uint64_t>();
  s.with_shared_org = j.at("with_shared_org").get<std::uint64_t>();
  s.closer_full_propensity = j.at("closer_full_propensity").get<std::uint64_t>();
  s.closer_or_reviewer_full_propensity = j.at("closer_or_reviewer_full_propensity").get<std::uint64_t>();
  s.with_transferred_trust = j.at("with_transferred_trust").get<std::uint64_t>();
  s.mean_overall = opt_double(j.at("mean_overall"));
  for (Dimension d : kDimensions) {
    s.mean_scores[index_of(d)] = opt_double(j.at("mean_scores").at(std::string(to_string(d))));
  }
  return s;
}

json config_json(const AnalysisConfig& c) {
  json weights = json::object();
  for (Dimension d : kDimensions) weights[std::string(to_string(d))] = c.weights[d];
  return {{"f_cap", c.metrics.f_cap},
          {"competence_window", c.metrics.competence_window},
          {"exclude_bots", c.metrics.exclude_bots},
          {"lexicon", c.metrics.lexicon.sources()},
          {"lexicon_path", c.lexicon_path},
          {"weights", std::move(weights)},
          {"sample",
           {{"per_repo_n", c.sample.per_repo_n},
            {"accept_ratio", c.sample.accept_ratio},
            {"seed", c.sample.seed}}}};
}

AnalysisConfig config_from(const json& j) {
  AnalysisConfig c;
  c.metrics.f_cap = j.at("f_cap").get<double>();
  c.metrics.competence_window = j.at("competence_window").get<std::size_t>();
  c.metrics.exclude_bots = j.at("exclude_bots").get<bool>();
  c.metrics.lexicon = VouchLexicon(j.at("lexicon").get<std::vector<std::string>>());
  c.lexicon_path = j.at("lexicon_path").get<std::string>();
  for (Dimension d : kDimensions) c.weights[d] = j.at("weights").at(std::string(to_string(d))).get<double>();
  const json& s = j.at("sample");
  c.sample.per_repo_n = s.at("per_repo_n").get<std::uint64_t>();
  c.sample.accept_ratio = s.at("accept_ratio").get<double>();
  c.sample.seed = s.at("seed").get<std::uint64_t>();
  return c;
}

Outcome outcome_from(const std::string& s) {
  if (s == "accepted") return Outcome::accepted;
  if (s == "rejected") return Outcome::rejected;
  if (s == "pending") return Outcome::pending;
  throw ParseError("unknown outcome '" + s + "'");
}

}  // namespace

nlohmann::json bundle_to_json(const ReportBundle& b) {
  json profiles = json::array();
  for (const TrustProfile& p : b.profiles) {
    json dims = json::object();
    for (const DimensionScore& s : p.scores) {
      dims[std::string(to_string(s.dimension))] = {
          {"available", s.available()}, {"score", opt(s.score)}, {"evidence", evidence_json(s.evidence)}};
    }
    profiles.push_back({{"pr_number", p.pr_number},
                        {"outcome", to_string(p.outcome)},
                        {"overall", opt(p.overall)},
                        {"coverage", p.coverage},
                        {"dimensions", std::move(dims)}});
  }
  json developers = json::array();
  for (const Propensity& p : b.developers) developers.push_back(propensity_json(p));

  return {{"tool_version", b.tool_version},
          {"snapshot",
           {{"owner", b.snapshot.repo_owner},
            {"name", b.snapshot.repo_name},
            {"fetched_at", format_timestamp(b.snapshot.fetched_at)},
            {"pull_count", b.snapshot.pull_count}}},
          {"config", config_json(b.config)},
          {"profiles", std::move(profiles)},
          {"developers", std::move(developers)},
          {"summary",
           {{"accepted", stratum_json(b.summary.accepted)},
            {"rejected", stratum_json(b.summary.rejected)},
            {"total", stratum_json(b.summary.total)},
            {"pending_excluded", b.summary.pending_excluded}}}};
}

ReportBundle bundle_from_json(const nlohmann::json& doc) {
  try {
    ReportBundle b;
    b.tool_version = doc.at("tool_version").get<std::string>();
    const json& snap = doc.at("snapshot");
    b.snapshot.repo_owner = snap.at("owner").get<std::string>();
    b.snapshot.repo_name = snap.at("name").get<std::string>();
    b.snapshot.fetched_at = parse_timestamp(snap.at("fetched_at").get<std::string>());
    b.snapshot.pull_count = snap.at("pull_count").get<std::uint64_t>();
    b.config = config_from(doc.at("config"));
    for (const json& p : doc.at("profiles")) {
      TrustProfile tp;
      tp.pr_number = p.at("pr_number").get<std::int64_t>();
      tp.outcome = outcome_from(p.at("outcome").get<std::string>());
      tp.overall = opt_double(p.at("overall"));
      tp.coverage = p.at("coverage").get<int>();
      for (Dimension d : kDimensions) {
        const json& dj = p.at("dimensions").at(std::string(to_string(d)));
        DimensionScore& s = tp.scores[index_of(d)];
        s.dimension = d;
        s.score = opt_double(dj.at("score"));
        s.evidence = evidence_from(d, dj.at("evidence"));
        if (dj.at("available").get<bool>() != s.score.has_value()) {
          throw ParseError("profile " + std::to_string(tp.pr_number) + ": " +
                           std::string(to_string(d)) + " availability disagrees with score");
        }
      }
      b.profiles.push_back(std::move(tp));
    }
    for (const json& d : doc.at("developers")) b.developers.push_back(propensity_from(d));
    const json& sum = doc.at("summary");
    b.summary.accepted = stratum_from(sum.at("accepted"));
    b.summary.rejected = stratum_from(sum.at("rejected"));
    b.summary.total = stratum_from(sum.at("total"));
    b.summary.pending_excluded = sum.at("pending_excluded").get<std::uint64_t>();
    return b;
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed report: ") + e.what());
  } catch (const ConfigError& e) {
    throw ParseError(std::string("malformed report config: ") + e.what());
  }
}

// ---------------------------------------------------------------------------
// Renderers

std::string render_json(const ReportBundle& bundle) { return bundle_to_json(bundle).dump(2) + "\n"; }

std::string render_csv(const ReportBundle& bundle) {
  std::string out =
      "pr_number,outcome,action,commitment,competence,institutional,personality,transferred,"
      "overall,coverage\n";
  for (const TrustProfile& p : bundle.profiles) {
    out += std::to_string(p.pr_number);
    out += ',';
    out += to_string(p.outcome);
    for (const DimensionScore& s : p.scores) {
      out += ',';
      if (s.score) out += format_fixed6(*s.score);
    }
    out += ',';
    if (p.overall) out += format_fixed6(*p.overall);
    out += ',';
    out += std::to_string(p.coverage);
    out += '\n';
  }
  return out;
}

namespace {

std::string cell(const std::optional<double>& v) { return v ? format_fixed6(*v) : "n/a"; }

}  // namespace

std::string render_markdown(const ReportBundle& b) {
  const RepoSummary& s = b.summary;
  std::ostringstream md;
  md << "# Trust summary: " << b.snapshot.repo_owner << '/' << b.snapshot.repo_name << "\n\n";
  md << "Snapshot fetched " << format_timestamp(b.snapshot.fetched_at) << "; "
     << b.snapshot.pull_count << " pull requests analyzed, " << s.pending_excluded
     << " open pull requests excluded from the strata.\n\n";
  md << "| Statistic | Accepted | Rejected | Total |\n";
  md << "|---|---:|---:|---:|\n";

  auto count_row = [&](const char* label, std::uint64_t StratumSummary::*field) {
    md << "| " << label << " | " << s.accepted.*field << " | " << s.rejected.*field << " | "
       << s.total.*field << " |\n";
  };
  auto mean_row = [&](const std::string& label, auto get) {
    md << "| " << label << " | " << cell(get(s.accepted)) << " | " << cell(get(s.rejected)) << " | "
       << cell(get(s.total)) << " |\n";
  };

  count_row("Pull requests", &StratumSummary::size);
  mean_row("Mean comment frequency (per day)",
           [](const StratumSummary& x) { return x.mean_comment_frequency; });
  count_row("With post-feedback commits", &StratumSummary::with_post_feedback_commits);
  count_row("With a response to a review request", &StratumSummary::with_review_response);
  count_row("Author had no prior accepted PR", &StratumSummary::no_prior_accepted);
  count_row("Author's first PR", &StratumSummary::first_pr);
  count_row("With a shared-org counterparty", &StratumSummary::with_shared_org);
  count_row("Closer accepted everything they closed", &StratumSummary::closer_full_propensity);
  count_row("Closer or a reviewer accepted everything they closed",
            &StratumSummary::closer_or_reviewer_full_propensity);
  count_row("Transferred-trust flags", &StratumSummary::with_transferred_trust);
  mean_row("Mean overall score", [](const StratumSummary& x) { return x.mean_overall; });
  for (Dimension d : kDimensions) {
    mean_row("Mean " + std::string(to_string(d)) + " score",
             [d](const StratumSummary& x) { return x.mean_scores[index_of(d)]; });
  }
  return md.str();
}

std::string render(const ReportBundle& bundle, ReportFormat format) {
  switch (format) {
    case ReportFormat::json: return render_json(bundle);
    case ReportFormat::csv: return render_csv(bundle);
    case ReportFormat::markdown: return render_markdown(bundle);
  }
  return {};
}

void emit(const ReportBundle& bundle, ReportFormat format, const std::filesystem::path& path) {
  const std::string text = render(bundle, format);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write report '" + path.string() + "'");
  out << text;
  out.flush();
  if (!out) throw IoError("failed writing report '" + path.string() + "'");
}

ReportBundle load_report(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open report '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  json doc;
  try {
    doc = json::parse(buf.str());
  } catch (const json::parse_error& e) {
    throw ParseError(path.string() + ": malformed JSON: " + e.what());
  }
  return bundle_from_json(doc);
}

}  // namespace prtrust

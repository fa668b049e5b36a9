#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "prtrust/time.hpp"

namespace prtrust {

using Login = std::string;

enum class PrState { merged, closed_unmerged, open };
enum class Outcome { accepted, rejected, pending };
enum class ContributionKind { code, documentation, mixed };
enum class ReviewVerdict { approved, commented, changes_requested, dismissed };
enum class Permission { admin, write, read, none };

struct Comment {
  std::int64_t id = 0;
  Login author;
  Timestamp created_at;
  std::string body;

  bool operator==(const Comment&) const = default;
};

struct Review {
  std::int64_t id = 0;
  Login author;
  Timestamp submitted_at;
  ReviewVerdict verdict = ReviewVerdict::commented;
  std::string body;

  bool operator==(const Review&) const = default;
};

struct ReviewRequest {
  Login requestee;
  Timestamp requested_at;

  bool operator==(const ReviewRequest&) const = default;
};

struct CommitEvent {
  std::string sha;
  Login author;
  Timestamp committed_at;

  bool operator==(const CommitEvent&) const = default;
};

struct ClosureHistory {
  std::uint64_t closed_count = 0;
  std::uint64_t accepted_count = 0;

  bool operator==(const ClosureHistory&) const = default;
};

struct UserProfile {
  Login login;
  std::uint64_t followers = 0;
  std::set<std::string> orgs;
  Permission permission = Permission::none;
  // Set when the permission endpoint was not readable; `permission` is then
  // `none` but must be treated as missing evidence rather than "no access".
  bool permission_unknown = false;
  std::optional<ClosureHistory> closure_history;

  bool operator==(const UserProfile&) const = default;
};

struct PullRequest {
  std::int64_t number = 0;
  Login author;
  PrState state = PrState::open;
  Timestamp created_at;
  std::optional<Timestamp> closed_at;
  std::optional<Login> closer;
  std::set<std::string> labels;
  ContributionKind contribution_kind = ContributionKind::code;
  std::vector<std::string> files;
  std::vector<CommitEvent> commits;
  std::vector<Comment> issue_comments;
  std::vector<Comment> review_comments;
  std::vector<Review> reviews;
  std::vector<ReviewRequest> review_requests;

  bool operator==(const PullRequest&) const = default;
};

/// One repository's pull-request interaction data captured at `fetched_at`.
/// Pulls are ascending by number; `users` resolves every referenced login.
struct RepoSnapshot {
  std::string repo_owner;
  std::string repo_name;
  Timestamp fetched_at;
  std::vector<PullRequest> pulls;
  std::map<Login, UserProfile> users;

  bool operator==(const RepoSnapshot&) const = default;

  const PullRequest* find_pull(std::int64_t number) const;
  const UserProfile* find_user(std::string_view login) const;
};

Outcome outcome(const PullRequest& pr);
Outcome outcome(PrState state);

/// documentation iff every path is a doc path, code iff none is, mixed
/// otherwise. A doc path has a .md/.rst/.txt/.adoc extension (case-insensitive)
/// or a directory segment named "docs" or "doc". An empty list is code.
ContributionKind classify_contribution(std::span<const std::string> files);
bool is_documentation_path(std::string_view path);

std::string_view to_string(PrState v);
std::string_view to_string(Outcome v);
std::string_view to_string(ContributionKind v);
std::string_view to_string(ReviewVerdict v);
std::string_view to_string(Permission v);

// Throw ParseError on unrecognized names.
PrState parse_pr_state(std::string_view s);
ContributionKind parse_contribution_kind(std::string_view s);
ReviewVerdict parse_review_verdict(std::string_view s);
Permission parse_permission(std::string_view s);

/// Checks every RepoSnapshot / PullRequest / UserProfile invariant and throws
/// ValidationError for the first violation, naming the PR and login involved.
void validate_snapshot(const RepoSnapshot& snapshot);

nlohmann::json snapshot_to_json(const RepoSnapshot& snapshot);
/// Decodes without validating. Throws ParseError with a JSON-path location.
RepoSnapshot snapshot_from_json(const nlohmann::json& doc);

/// Reads, parses, and validates a snapshot file. No network access.
RepoSnapshot load_snapshot(const std::filesystem::path& path);
/// Parses and validates snapshot text.
RepoSnapshot parse_snapshot(std::string_view text);
/// Writes the snapshot as indented UTF-8 JSON with LF newlines.
void save_snapshot(const RepoSnapshot& snapshot, const std::filesystem::path& path);
std::string dump_snapshot(const RepoSnapshot& snapshot);

}  // namespace prtrust

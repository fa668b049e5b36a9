#pragma once

#include <atomic>
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "prtrust/corpus.hpp"

namespace prtrust {

struct FetchPlan {
  std::string repo_owner;
  std::string repo_name;
  std::uint64_t max_pulls = 100;
  bool include_open = false;
  /// Falls back to the GITHUB_TOKEN environment variable when empty.
  std::optional<std::string> auth_token;
  std::optional<std::filesystem::path> cache_dir;

  /// REST root; GitHub Enterprise servers use "https://host/api/v3".
  std::string api_base = "https://api.github.com";
  unsigned max_in_flight = 4;
  unsigned max_retries = 3;
  std::chrono::milliseconds backoff_base{500};
  /// Longest we sleep waiting for a rate-limit reset before giving up.
  std::chrono::seconds max_rate_wait{3600};
  /// With a cached entry: true sends a conditional request (If-None-Match),
  /// false serves the cached body without touching the network.
  bool revalidate = true;
  unsigned per_page = 100;

  /// Throws ConfigError.
  void validate() const;
};

/// Shared view of the API rate limit. Updates are serialized; within one
/// reset window `remaining` only decreases.
class RateBudget {
 public:
  struct State {
    std::optional<std::int64_t> remaining;
    std::int64_t reset_at = 0;  // unix seconds
  };

  void observe(std::int64_t remaining, std::int64_t reset_at);
  State state() const;

 private:
  mutable std::mutex mu_;
  State state_;
};

struct FetchStats {
  /// Requests that reached the network.
  std::uint64_t requests = 0;
  /// 200 responses: bodies that were not already cached.
  std::uint64_t uncached = 0;
  /// 304 responses answered from the cache.
  std::uint64_t not_modified = 0;
  /// Cached bodies served without any request (revalidate = false).
  std::uint64_t cache_hits = 0;
  std::uint64_t retries = 0;
  std::vector<std::int64_t> skipped_pulls;
};

/// On-disk response cache: {dir}/{sha256(url)}.json holds the body and
/// {dir}/{sha256(url)}.etag the ETag it was served with.
class ResponseCache {
 public:
  struct Entry {
    std::string body;
    std::optional<std::string> etag;
  };

  explicit ResponseCache(std::filesystem::path dir);

  std::optional<Entry> lookup(const std::string& url) const;
  void store(const std::string& url, const std::string& body, const std::optional<std::string>& etag) const;
  std::filesystem::path body_path(const std::string& url) const;

  const std::filesystem::path& dir() const noexcept { return dir_; }

 private:
  std::filesystem::path dir_;
};

/// Lowercase hex SHA-256.
std::string sha256_hex(std::string_view data);

/// A timeline event reduced to the fields review-request reconstruction and
/// closer attribution need.
struct TimelineEvent {
  std::string event;
  std::optional<Login> actor;
  /// Set for review_requested / review_request_removed aimed at a user.
  std::optional<Login> requested_reviewer;
  Timestamp created_at;
};

/// Decodes GitHub /issues/{n}/timeline items. Items without a timestamp
/// (commits, for example) are skipped.
std::vector<TimelineEvent> parse_timeline(const nlohmann::json& items);

/// One request per `review_requested` event. Later removal events do not
/// cancel it, and repeated requests for the same requestee keep the
/// earliest. Output is ordered by first request time. Expects `events`
/// sorted by timestamp.
std::vector<ReviewRequest> reconstruct_review_requests(std::span<const TimelineEvent> events);

/// Downloads the `plan.max_pulls` most recent pull requests with their
/// comments, reviews, commits, files, and review-request history, plus the
/// profile of every participant, and returns a validated snapshot.
RepoSnapshot fetch_snapshot(const FetchPlan& plan, FetchStats* stats = nullptr);

}  // namespace prtrust

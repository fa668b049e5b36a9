#include "prtrust/ingest.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <thread>

#include <httplib.h>
#include <nlohmann/json.hpp>
#include <openssl/evp.h>
#include <spdlog/spdlog.h>

#include "prtrust/errors.hpp"

namespace prtrust {

using nlohmann::json;

void FetchPlan::validate() const {
  if (repo_owner.empty() || repo_name.empty()) throw ConfigError("repository must be owner/name");
  if (max_pulls < 1) throw ConfigError("max_pulls must be at least 1");
  if (max_in_flight < 1) throw ConfigError("max_in_flight must be at least 1");
  if (per_page < 1 || per_page > 100) throw ConfigError("per_page must lie in [1, 100]");
}

// ---------------------------------------------------------------------------
// RateBudget

void RateBudget::observe(std::int64_t remaining, std::int64_t reset_at) {
  std::lock_guard lock(mu_);
  if (!state_.remaining || reset_at > state_.reset_at) {
    state_.remaining = remaining;
    state_.reset_at = reset_at;
  } else if (reset_at == state_.reset_at) {
    state_.remaining = std::min(*state_.remaining, remaining);
  }
  // Responses from an older window arrive late under concurrency; ignore them.
}

RateBudget::State RateBudget::state() const {
  std::lock_guard lock(mu_);
  return state_;
}

// ---------------------------------------------------------------------------
// Cache

std::string sha256_hex(std::string_view data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw Error("SHA-256 computation failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(len * 2);
  for (unsigned i = 0; i < len; ++i) {
    out += kHex[digest[i] >> 4];
    out += kHex[digest[i] & 0xf];
  }
  return out;
}

ResponseCache::ResponseCache(std::filesystem::path dir) : dir_(std::move(dir)) {
  std::error_code ec;
  std::filesystem::create_directories(dir_, ec);
  if (ec) throw IoError("cannot create cache directory '" + dir_.string() + "': " + ec.message());
}

std::filesystem::path ResponseCache::body_path(const std::string& url) const {
  return dir_ / (sha256_hex(url) + ".json");
}

namespace {

std::optional<std::string> read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file_atomic(const std::filesystem::path& p, const std::string& data) {
  std::ostringstream tid;
  tid << std::this_thread::get_id();
  const std::filesystem::path tmp = p.string() + ".tmp" + tid.str();
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write cache file '" + tmp.string() + "'");
    out << data;
    if (!out) throw IoError("failed writing cache file '" + tmp.string() + "'");
  }
  std::filesystem::rename(tmp, p);
}

}  // namespace

std::optional<ResponseCache::Entry> ResponseCache::lookup(const std::string& url) const {
  const std::string key = sha256_hex(url);
  auto body = read_file(dir_ / (key + ".json"));
  if (!body) return std::nullopt;
  Entry e{std::move(*body), read_file(dir_ / (key + ".etag"))};
  if (e.etag && e.etag->empty()) e.etag.reset();
  return e;
}

void ResponseCache::store(const std::string& url, const std::string& body,
                          const std::optional<std::string>& etag) const {
  const std::string key = sha256_hex(url);
  const auto etag_path = dir_ / (key + ".etag");
  // Drop the old validator first so a crash never pairs a new ETag with a stale body.
  std::error_code ec;
  std::filesystem::remove(etag_path, ec);
  write_file_atomic(dir_ / (key + ".json"), body);
  if (etag) write_file_atomic(etag_path, *etag);
}

// ---------------------------------------------------------------------------
// Timeline

namespace {

std::optional<Login> login_field(const json& obj, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end() || !it->is_object()) return std::nullopt;
  auto l = it->find("login");
  if (l == it->end() || !l->is_string()) return std::nullopt;
  return l->get<std::string>();
}

// Deleted accounts come back as null users; GitHub shows them as "ghost".
Login login_or_ghost(const json& obj, const char* key) {
  return login_field(obj, key).value_or("ghost");
}

std::optional<Timestamp> time_field(const json& obj, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end() || !it->is_string()) return std::nullopt;
  return parse_timestamp(it->get<std::string>());
}

std::string string_field(const json& obj, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end() || !it->is_string()) return {};
  return it->get<std::string>();
}

}  // namespace

std::vector<TimelineEvent> parse_timeline(const json& items) {
  std::vector<TimelineEvent> out;
  if (!items.is_array()) return out;
  for (const json& item : items) {
    if (!item.is_object()) continue;
    auto at = time_field(item, "created_at");
    if (!at) continue;
    TimelineEvent ev;
    ev.event = string_field(item, "event");
    ev.actor = login_field(item, "actor");
    ev.requested_reviewer = login_field(item, "requested_reviewer");
    ev.created_at = *at;
    out.push_back(std::move(ev));
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const TimelineEvent& a, const TimelineEvent& b) { return a.created_at < b.created_at; });
  return out;
}

std::vector<ReviewRequest> reconstruct_review_requests(std::span<const TimelineEvent> events) {
  std::vector<ReviewRequest> out;
  std::set<Login> seen;
  for (const TimelineEvent& ev : events) {
    if (ev.event != "review_requested" || !ev.requested_reviewer) continue;
    if (seen.insert(*ev.requested_reviewer).second) {
      out.push_back(ReviewRequest{*ev.requested_reviewer, ev.created_at});
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// HTTP client

namespace {

struct SharedState {
  const FetchPlan& plan;
  std::optional<std::string> token;
  std::optional<ResponseCache> cache;
  RateBudget budget;
  std::string origin;       // scheme://host[:port]
  std::string path_prefix;  // e.g. "/api/v3"
  std::atomic<std::uint64_t> requests{0};
  std::atomic<std::uint64_t> uncached{0};
  std::atomic<std::uint64_t> not_modified{0};
  std::atomic<std::uint64_t> cache_hits{0};
  std::atomic<std::uint64_t> retries{0};

  explicit SharedState(const FetchPlan& p) : plan(p) {}
};

std::string encode_segment(std::string_view s) {
  static constexpr char kHex[] = "0123456789ABCDEF";
  std::string out;
  for (unsigned char c : s) {
    if (std::isalnum(c) || c == '-' || c == '_' || c == '.' || c == '~') {
      out += static_cast<char>(c);
    } else {
      out += '%';
      out += kHex[c >> 4];
      out += kHex[c & 0xf];
    }
  }
  return out;
}

std::optional<std::int64_t> header_int(const httplib::Response& res, const char* name) {
  if (!res.has_header(name)) return std::nullopt;
  try {
    return std::stoll(res.get_header_value(name));
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

class ApiClient {
 public:
  explicit ApiClient(SharedState& shared) : s_(shared), http_(shared.origin) {
    http_.set_connection_timeout(std::chrono::seconds(10));
    http_.set_read_timeout(std::chrono::seconds(60));
  }

  // `target` is the path below the API root, including any query string.
  json get(const std::string& target) {
    std::string path = s_.path_prefix + target;
    const std::string url = s_.origin + path;

    std::optional<ResponseCache::Entry> cached;
    if (s_.cache) cached = s_.cache->lookup(url);
    if (cached && !s_.plan.revalidate) {
      ++s_.cache_hits;
      return parse(cached->body, url);
    }

    httplib::Headers headers = {{"Accept", "application/vnd.github+json"},
                                {"X-GitHub-Api-Version", "2022-11-28"},
                                {"User-Agent", "prtrust"}};
    if (s_.token) headers.emplace("Authorization", "Bearer " + *s_.token);
    if (cached && cached->etag) headers.emplace("If-None-Match", *cached->etag);

    unsigned attempt = 0;
    unsigned rate_waits = 0;
    unsigned redirects = 0;
    while (true) {
      wait_for_budget(rate_waits);
      auto res = http_.Get(path, headers);
      if (!res) {
        backoff_or_throw(attempt, url, "transport error: " + httplib::to_string(res.error()));
        continue;
      }
      ++s_.requests;
      const auto remaining = header_int(*res, "X-RateLimit-Remaining");
      const auto reset = header_int(*res, "X-RateLimit-Reset");
      if (remaining && reset) s_.budget.observe(*remaining, *reset);

      const int status = res->status;
      if (status == 200) {
        ++s_.uncached;
        std::optional<std::string> etag;
        if (res->has_header("ETag")) etag = res->get_header_value("ETag");
        if (s_.cache) s_.cache->store(url, res->body, etag);
        return parse(res->body, url);
      }
      if (status == 304 && cached) {
        ++s_.not_modified;
        return parse(cached->body, url);
      }
      if (status == 401) throw AuthError("authentication failed for " + url, status);
      if (status == 403 || status == 429) {
        if (remaining && *remaining == 0) {
          rate_limited(reset.value_or(0), rate_waits);
          continue;
        }
        if (auto after = header_int(*res, "Retry-After")) {
          secondary_limit(*after, attempt, url);
          continue;
        }
        if (status == 429) backoff_or_throw(attempt, url, "HTTP 429");
        else throw AuthError("access denied (HTTP 403) for " + url, status);
        continue;
      }
      if (status == 301 || status == 302 || status == 307 || status == 308) {
        // Renamed repositories redirect within the same API origin.
        std::string location = res->get_header_value("Location");
        if (location.rfind(s_.origin, 0) == 0) location.erase(0, s_.origin.size());
        if (location.empty() || location[0] != '/' || ++redirects > 5) {
          throw NetworkError("unfollowable redirect (HTTP " + std::to_string(status) + ") for " + url);
        }
        path = location;
        continue;
      }
      if (status == 404 || status == 410) throw NotFoundError("not found: " + url, url);
      if (status >= 500 || status == 408) {
        backoff_or_throw(attempt, url, "HTTP " + std::to_string(status));
        continue;
      }
      throw NetworkError("unexpected HTTP " + std::to_string(status) + " for " + url);
    }
  }

  // Page-number pagination: stops at a short page or once `limit` items arrived.
  json get_pages(const std::string& path, const std::string& query = {},
                 std::size_t limit = static_cast<std::size_t>(-1)) {
    json all = json::array();
    const unsigned per_page = s_.plan.per_page;
    for (unsigned page = 1;; ++page) {
      std::string target = path + "?";
      if (!query.empty()) target += query + "&";
      target += "per_page=" + std::to_string(per_page) + "&page=" + std::to_string(page);
      json chunk = get(target);
      if (!chunk.is_array()) {
        throw NetworkError("expected a JSON array from " + s_.origin + s_.path_prefix + target);
      }
      const std::size_t n = chunk.size();
      for (auto& item : chunk) all.push_back(std::move(item));
      if (n < per_page || all.size() >= limit) break;
    }
    return all;
  }

 private:
  static json parse(const std::string& body, const std::string& url) {
    try {
      return json::parse(body);
    } catch (const json::parse_error& e) {
      throw NetworkError("malformed JSON from " + url + ": " + e.what());
    }
  }

  void backoff_or_throw(unsigned& attempt, const std::string& url, const std::string& why) {
    if (attempt >= s_.plan.max_retries) {
      throw NetworkError(why + " for " + url + " after " + std::to_string(attempt) + " retries");
    }
    std::this_thread::sleep_for(s_.plan.backoff_base * (1u << attempt));
    ++attempt;
    ++s_.retries;
  }

  void secondary_limit(std::int64_t seconds, unsigned& attempt, const std::string& url) {
    if (attempt >= s_.plan.max_retries || std::chrono::seconds(seconds) > s_.plan.max_rate_wait) {
      throw RateLimitError("secondary rate limit persisted for " + url, now_utc().seconds + seconds, {});
    }
    std::this_thread::sleep_for(std::chrono::seconds(std::max<std::int64_t>(seconds, 0)));
    ++attempt;
    ++s_.retries;
  }

  void rate_limited(std::int64_t reset_at, unsigned& rate_waits) {
    const std::int64_t wait = reset_at - now_utc().seconds + 1;
    if (!s_.token) {
      throw RateLimitError("rate limit exhausted without a token; resets at " +
                               format_timestamp(Timestamp{reset_at}),
                           reset_at, {});
    }
    if (rate_waits >= s_.plan.max_retries || std::chrono::seconds(wait) > s_.plan.max_rate_wait) {
      throw RateLimitError("rate limit exhausted; resets at " + format_timestamp(Timestamp{reset_at}),
                           reset_at, {});
    }
    ++rate_waits;
    spdlog::info("rate limit reached; sleeping {}s until reset", std::max<std::int64_t>(wait, 0));
    std::this_thread::sleep_for(std::chrono::seconds(std::max<std::int64_t>(wait, 0)));
  }

  void wait_for_budget(unsigned& rate_waits) {
    const RateBudget::State st = s_.budget.state();
    if (st.remaining && *st.remaining == 0 && st.reset_at > now_utc().seconds) {
      rate_limited(st.reset_at, rate_waits);
    }
  }

  SharedState& s_;
  httplib::Client http_;
};

void split_api_base(const std::string& base, std::string& origin, std::string& prefix) {
  const auto scheme = base.find("://");
  if (scheme == std::string::npos) throw ConfigError("api base '" + base + "' lacks a scheme");
  const auto slash = base.find('/', scheme + 3);
  origin = base.substr(0, slash);
  prefix = slash == std::string::npos ? "" : base.substr(slash);
  while (!prefix.empty() && prefix.back() == '/') prefix.pop_back();
}

// Runs fn(i, client) for i in [0, n) on up to `jobs` threads, each with its
// own HTTP connection. The first exception stops scheduling and is rethrown.
void parallel_for(SharedState& shared, std::size_t n, unsigned jobs,
                  const std::function<void(std::size_t, ApiClient&)>& fn) {
  std::atomic<std::size_t> next{0};
  std::atomic<bool> stop{false};
  std::mutex mu;
  std::exception_ptr failure;

  auto worker = [&] {
    ApiClient client(shared);
    while (!stop.load()) {
      const std::size_t i = next.fetch_add(1);
      if (i >= n) break;
      try {
        fn(i, client);
      } catch (...) {
        std::lock_guard lock(mu);
        if (!failure) failure = std::current_exception();
        stop = true;
      }
    }
  };

  const unsigned count = static_cast<unsigned>(std::min<std::size_t>(jobs, n));
  std::vector<std::thread> threads;
  threads.reserve(count);
  for (unsigned t = 0; t < count; ++t) threads.emplace_back(worker);
  for (auto& t : threads) t.join();
  if (failure) std::rethrow_exception(failure);
}

ReviewVerdict verdict_from_api(const std::string& state) {
  if (state == "APPROVED") return ReviewVerdict::approved;
  if (state == "CHANGES_REQUESTED") return ReviewVerdict::changes_requested;
  if (state == "DISMISSED") return ReviewVerdict::dismissed;
  return ReviewVerdict::commented;
}

Permission permission_from_api(const std::string& p) {
  if (p == "admin") return Permission::admin;
  if (p == "maintain" || p == "write") return Permission::write;
  if (p == "triage" || p == "read") return Permission::read;
  return Permission::none;
}

Comment comment_from_api(const json& c) {
  Comment out;
  out.id = c.at("id").get<std::int64_t>();
  out.author = login_or_ghost(c, "user");
  out.created_at = parse_timestamp(c.at("created_at").get<std::string>());
  out.body = string_field(c, "body");
  return out;
}

struct FetchedPull {
  PullRequest pr;
  Timestamp latest;  // newest timestamp seen in the PR's payloads
};

FetchedPull fetch_pull(ApiClient& api, const std::string& repo_path, const json& item) {
  FetchedPull out;
  PullRequest& pr = out.pr;
  pr.number = item.at("number").get<std::int64_t>();
  pr.author = login_or_ghost(item, "user");
  pr.created_at = parse_timestamp(item.at("created_at").get<std::string>());
  out.latest = pr.created_at;
  auto bump = [&](Timestamp t) { out.latest = std::max(out.latest, t); };
  if (auto u = time_field(item, "updated_at")) bump(*u);

  const bool open = string_field(item, "state") == "open";
  if (open) {
    pr.state = PrState::open;
  } else {
    pr.state = time_field(item, "merged_at") ? PrState::merged : PrState::closed_unmerged;
    pr.closed_at = time_field(item, "closed_at").value_or(pr.created_at);
    pr.closed_at = std::max(*pr.closed_at, pr.created_at);
    bump(*pr.closed_at);
  }
  if (auto labels = item.find("labels"); labels != item.end() && labels->is_array()) {
    for (const json& l : *labels) pr.labels.insert(string_field(l, "name"));
  }

  const std::string n = std::to_string(pr.number);
  for (const json& c : api.get_pages(repo_path + "/issues/" + n + "/comments")) {
    pr.issue_comments.push_back(comment_from_api(c));
    bump(pr.issue_comments.back().created_at);
  }
  for (const json& c : api.get_pages(repo_path + "/pulls/" + n + "/comments")) {
    pr.review_comments.push_back(comment_from_api(c));
    bump(pr.review_comments.back().created_at);
  }
  for (const json& r : api.get_pages(repo_path + "/pulls/" + n + "/reviews")) {
    const std::string state = string_field(r, "state");
    auto submitted = time_field(r, "submitted_at");
    if (state == "PENDING" || !submitted) continue;
    pr.reviews.push_back(Review{r.at("id").get<std::int64_t>(), login_or_ghost(r, "user"), *submitted,
                                verdict_from_api(state), string_field(r, "body")});
    bump(*submitted);
  }
  for (const json& c : api.get_pages(repo_path + "/pulls/" + n + "/commits")) {
    CommitEvent ev;
    ev.sha = string_field(c, "sha");
    // Commits whose email is not linked to an account have no author login.
    ev.author = login_field(c, "author").value_or(pr.author);
    const json& meta = c.contains("commit") ? c.at("commit") : json::object();
    auto when = meta.contains("committer") ? time_field(meta.at("committer"), "date") : std::nullopt;
    if (!when && meta.contains("author")) when = time_field(meta.at("author"), "date");
    // Commits authored before the PR opened enter the record at creation time.
    ev.committed_at = std::max(when.value_or(pr.created_at), pr.created_at);
    bump(ev.committed_at);
    pr.commits.push_back(std::move(ev));
  }
  for (const json& f : api.get_pages(repo_path + "/pulls/" + n + "/files")) {
    pr.files.push_back(string_field(f, "filename"));
  }
  pr.contribution_kind = classify_contribution(pr.files);

  const std::vector<TimelineEvent> timeline = parse_timeline(api.get_pages(repo_path + "/issues/" + n + "/timeline"));
  for (ReviewRequest& rr : reconstruct_review_requests(timeline)) {
    if (rr.requestee == pr.author) continue;
    rr.requested_at = std::max(rr.requested_at, pr.created_at);
    bump(rr.requested_at);
    pr.review_requests.push_back(std::move(rr));
  }
  if (!open) {
    std::optional<Login> closer;
    for (const TimelineEvent& ev : timeline) {
      if (ev.event == "closed" && ev.actor) closer = ev.actor;
    }
    if (!closer) {
      for (const TimelineEvent& ev : timeline) {
        if (ev.event == "merged" && ev.actor) closer = ev.actor;
      }
    }
    pr.closer = closer.value_or("ghost");
  }
  return out;
}

std::set<Login> participants(const PullRequest& pr) {
  std::set<Login> out{pr.author};
  if (pr.closer) out.insert(*pr.closer);
  for (const auto& c : pr.issue_comments) out.insert(c.author);
  for (const auto& c : pr.review_comments) out.insert(c.author);
  for (const auto& r : pr.reviews) out.insert(r.author);
  for (const auto& rr : pr.review_requests) out.insert(rr.requestee);
  for (const auto& c : pr.commits) out.insert(c.author);
  return out;
}

std::vector<std::int64_t> numbers_of(const std::vector<std::optional<FetchedPull>>& pulls) {
  std::vector<std::int64_t> out;
  for (const auto& p : pulls) {
    if (p) out.push_back(p->pr.number);
  }
  std::sort(out.begin(), out.end());
  return out;
}

[[noreturn]] void rethrow_partial(std::exception_ptr failure, std::vector<std::int64_t> completed) {
  try {
    std::rethrow_exception(failure);
  } catch (const RateLimitError& e) {
    std::string msg = std::string(e.what()) + "; " + std::to_string(completed.size()) +
                      " pull requests completed; rerun with the same cache directory to resume";
    throw RateLimitError(msg, e.reset_at(), std::move(completed));
  } catch (const AuthError&) {
    throw;
  } catch (const std::exception& e) {
    throw PartialFetchError(std::string(e.what()) + "; " + std::to_string(completed.size()) +
                                " pull requests completed",
                            std::move(completed));
  }
}

}  // namespace

RepoSnapshot fetch_snapshot(const FetchPlan& plan, FetchStats* stats) {
  plan.validate();
  SharedState shared(plan);
  shared.token = plan.auth_token;
  if (!shared.token || shared.token->empty()) {
    shared.token.reset();
    if (const char* env = std::getenv("GITHUB_TOKEN"); env != nullptr && *env != '\0') {
      shared.token = std::string(env);
    }
  }
  if (plan.cache_dir) shared.cache.emplace(*plan.cache_dir);
  split_api_base(plan.api_base, shared.origin, shared.path_prefix);

  const std::string repo_path =
      "/repos/" + encode_segment(plan.repo_owner) + "/" + encode_segment(plan.repo_name);

  // 1. Newest pulls first.
  json listing;
  {
    ApiClient api(shared);
    const std::string query =
        std::string("state=") + (plan.include_open ? "all" : "closed") + "&sort=created&direction=desc";
    try {
      listing = api.get_pages(repo_path + "/pulls", query, plan.max_pulls);
    } catch (const NotFoundError&) {
      throw NotFoundError("repository " + plan.repo_owner + "/" + plan.repo_name + " not found",
                          plan.repo_owner + "/" + plan.repo_name);
    } catch (const RateLimitError&) {
      rethrow_partial(std::current_exception(), {});
    }
  }
  std::vector<json> items(listing.begin(), listing.end());
  std::sort(items.begin(), items.end(), [](const json& a, const json& b) {
    return a.at("number").get<std::int64_t>() > b.at("number").get<std::int64_t>();
  });
  if (items.size() > plan.max_pulls) items.resize(plan.max_pulls);

  // 2. Per-PR payloads.
  std::vector<std::optional<FetchedPull>> fetched(items.size());
  std::vector<std::int64_t> skipped;
  std::mutex skipped_mu;
  try {
    parallel_for(shared, items.size(), plan.max_in_flight, [&](std::size_t i, ApiClient& api) {
      try {
        fetched[i] = fetch_pull(api, repo_path, items[i]);
      } catch (const NotFoundError& e) {
        const auto number = items[i].at("number").get<std::int64_t>();
        spdlog::warn("skipping PR {}: {}", number, e.what());
        std::lock_guard lock(skipped_mu);
        skipped.push_back(number);
      }
    });
  } catch (...) {
    rethrow_partial(std::current_exception(), numbers_of(fetched));
  }

  RepoSnapshot snapshot;
  snapshot.repo_owner = plan.repo_owner;
  snapshot.repo_name = plan.repo_name;
  Timestamp latest{0};
  std::set<Login> logins;
  for (auto& f : fetched) {
    if (!f) continue;
    latest = std::max(latest, f->latest);
    const auto people = participants(f->pr);
    logins.insert(people.begin(), people.end());
    snapshot.pulls.push_back(std::move(f->pr));
  }
  std::sort(snapshot.pulls.begin(), snapshot.pulls.end(),
            [](const PullRequest& a, const PullRequest& b) { return a.number < b.number; });
  // Derived from the payloads rather than the wall clock so identical
  // responses always yield identical snapshots.
  snapshot.fetched_at = latest;

  // 3. Profiles.
  const std::vector<Login> people(logins.begin(), logins.end());
  std::vector<UserProfile> profiles(people.size());
  try {
    parallel_for(shared, people.size(), plan.max_in_flight, [&](std::size_t i, ApiClient& api) {
      UserProfile& u = profiles[i];
      u.login = people[i];
      const std::string user_path = "/users/" + encode_segment(u.login);
      try {
        const json profile = api.get(user_path);
        if (auto f = profile.find("followers"); f != profile.end() && f->is_number_unsigned()) {
          u.followers = f->get<std::uint64_t>();
        }
        for (const json& org : api.get_pages(user_path + "/orgs")) u.orgs.insert(string_field(org, "login"));
      } catch (const NotFoundError&) {
        spdlog::warn("profile for '{}' not found; recording it as empty", u.login);
      }
      u.permission = Permission::none;
      u.permission_unknown = true;
      if (shared.token) {
        try {
          const json perm = api.get(repo_path + "/collaborators/" + encode_segment(u.login) + "/permission");
          u.permission = permission_from_api(string_field(perm, "permission"));
          u.permission_unknown = false;
        } catch (const NotFoundError&) {
        } catch (const AuthError&) {
        }
      }
    });
  } catch (...) {
    rethrow_partial(std::current_exception(), numbers_of(fetched));
  }
  for (UserProfile& u : profiles) {
    const Login key = u.login;
    snapshot.users.emplace(key, std::move(u));
  }

  if (stats) {
    stats->requests = shared.requests;
    stats->uncached = shared.uncached;
    stats->not_modified = shared.not_modified;
    stats->cache_hits = shared.cache_hits;
    stats->retries = shared.retries;
    std::sort(skipped.begin(), skipped.end());
    stats->skipped_pulls = skipped;
  }

  validate_snapshot(snapshot);
  return snapshot;
}

}  // namespace prtrust

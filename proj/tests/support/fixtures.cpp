#include "fixtures.hpp"

#include <algorithm>
#include <cstdio>
#include <random>
#include <set>

namespace prtrust::testing {

UserProfile make_user(const std::string& login, std::uint64_t followers, std::set<std::string> orgs,
                      Permission permission, bool permission_unknown) {
  UserProfile u;
  u.login = login;
  u.followers = followers;
  u.orgs = std::move(orgs);
  u.permission = permission;
  u.permission_unknown = permission_unknown;
  return u;
}

PullRequest make_pull(std::int64_t number, const std::string& author, PrState state, Timestamp created,
                      std::optional<Timestamp> closed, std::optional<std::string> closer) {
  PullRequest pr;
  pr.number = number;
  pr.author = author;
  pr.state = state;
  pr.created_at = created;
  pr.closed_at = closed;
  pr.closer = std::move(closer);
  pr.files = {"src/main.cc"};
  pr.contribution_kind = ContributionKind::code;
  return pr;
}

RepoSnapshot make_snapshot(std::vector<UserProfile> users, std::vector<PullRequest> pulls,
                           Timestamp fetched_at) {
  RepoSnapshot s;
  s.repo_owner = "apache";
  s.repo_name = "fixture";
  s.fetched_at = fetched_at;
  for (auto& u : users) {
    const std::string login = u.login;
    s.users.emplace(login, std::move(u));
  }
  s.pulls = std::move(pulls);
  return s;
}

namespace {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  // Modulo bias is irrelevant for fixture generation; staying off
  // std::uniform_int_distribution keeps fixtures identical across standard libraries.
  std::uint64_t below(std::uint64_t n) { return n == 0 ? 0 : engine_() % n; }
  bool chance(int percent) { return below(100) < static_cast<std::uint64_t>(percent); }
  template <typename T>
  const T& pick(const std::vector<T>& v) {
    return v[below(v.size())];
  }

 private:
  std::mt19937_64 engine_;
};

std::string hex_sha(std::uint64_t n) {
  char buf[41];
  std::snprintf(buf, sizeof buf, "%016llx%016llxabcdef12", static_cast<unsigned long long>(n),
                static_cast<unsigned long long>(n * 2654435761ULL));
  return buf;
}

const std::vector<std::string> kChatter = {
    "Thanks for the patch, a couple of nits inline.",
    "Could you add a unit test for the empty case?",
    "LGTM",
    "This breaks the build on Java 8, please take a look.",
    "Rebased on main, CI should be green now.",
    "Nice cleanup.",
    "Why do we need the extra lock here?",
    "Done, pushed a fix.",
    "Please squash the commits before merge.",
    "",
};

}  // namespace

RepoSnapshot synthetic_snapshot(std::uint64_t seed, int pull_count) {
  Rng rng(seed);
  std::vector<UserProfile> users = {
      make_user("alice", 1200, {"apache"}, Permission::write),
      make_user("bob", 40, {"apache", "google"}, Permission::admin),
      make_user("carol", 5, {"google"}, Permission::read),
      make_user("dave", 0, {}, Permission::none, true),
      make_user("erin", 150, {"apache"}, Permission::write),
      make_user("frank", 12, {"acme"}, Permission::none),
      make_user("grace", 300, {}, Permission::none, true),
      make_user("dependabot[bot]", 0, {}, Permission::none),
  };
  users[2].closure_history = ClosureHistory{99, 10};
  users[4].closure_history = ClosureHistory{272, 272};

  const std::vector<std::string> people = {"alice", "bob", "carol", "dave", "erin", "frank", "grace"};
  const std::vector<std::string> authors = {"alice", "bob", "carol", "dave", "dave", "frank",
                                            "grace", "grace", "dependabot[bot]"};
  const std::vector<std::string> closers = {"alice", "bob", "erin", "carol"};
  const std::vector<std::string> file_pool = {"src/a.cc", "docs/guide.md", "README.md", "include/x.hpp",
                                              "doc/api.rst", "CHANGES.txt", "src/b/c.py"};
  const std::vector<std::string> label_pool = {"bug", "enhancement", "docs", "needs-review"};
  const std::vector<std::string> commenters = {"alice", "bob",   "carol", "dave",
                                               "erin",  "frank", "grace", "dependabot[bot]"};

  const Timestamp fetched = kT0 + (pull_count * 2 + 10) * kDay;
  std::vector<PullRequest> pulls;
  std::int64_t number = 0;
  std::int64_t next_id = 1000;
  for (int i = 0; i < pull_count; ++i) {
    number += 1 + static_cast<std::int64_t>(rng.below(3));
    const std::string author = rng.pick(authors);
    const Timestamp created = kT0 + i * 2 * kDay + static_cast<std::int64_t>(rng.below(20)) * kHour;
    const auto roll = rng.below(100);
    PrState state = roll < 55 ? PrState::merged : roll < 85 ? PrState::closed_unmerged : PrState::open;
    PullRequest pr = make_pull(number, author, state, created);
    if (state != PrState::open) {
      pr.closed_at = created + kHour + static_cast<std::int64_t>(rng.below(6 * 24)) * kHour;
      pr.closer = rng.pick(closers);
    }
    const Timestamp end = pr.closed_at.value_or(fetched);
    const std::int64_t span = std::max<std::int64_t>(1, end - created);
    auto at = [&] { return created + static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(span) + 1)); };

    pr.files.clear();
    const auto nfiles = 1 + rng.below(3);
    for (std::uint64_t f = 0; f < nfiles; ++f) {
      const std::string& path = rng.pick(file_pool);
      if (std::find(pr.files.begin(), pr.files.end(), path) == pr.files.end()) pr.files.push_back(path);
    }
    pr.contribution_kind = classify_contribution(pr.files);
    if (rng.chance(50)) pr.labels.insert(rng.pick(label_pool));

    for (auto k = rng.below(9); k > 0; --k) {
      pr.issue_comments.push_back(Comment{next_id++, rng.pick(commenters), at(), rng.pick(kChatter)});
    }
    for (auto k = rng.below(5); k > 0; --k) {
      pr.review_comments.push_back(Comment{next_id++, rng.pick(people), at(), rng.pick(kChatter)});
    }
    for (auto k = rng.below(4); k > 0; --k) {
      std::string who = rng.pick(people);
      if (who == author) continue;
      const auto verdict = static_cast<ReviewVerdict>(rng.below(4));
      pr.reviews.push_back(Review{next_id++, who, at(), verdict, rng.pick(kChatter)});
    }
    // Review requests: distinct requestees with strictly increasing times.
    std::set<std::string> asked;
    Timestamp request_time = created;
    for (auto k = rng.below(4); k > 0; --k) {
      const std::string& who = rng.pick(people);
      if (who == author || !asked.insert(who).second) continue;
      request_time = std::min(end, request_time + 1 + static_cast<std::int64_t>(rng.below(4 * 3600)));
      pr.review_requests.push_back(ReviewRequest{who, request_time});
    }
    // Keep request times strictly increasing even when clamped at `end`.
    for (std::size_t r = 1; r < pr.review_requests.size(); ++r) {
      if (pr.review_requests[r].requested_at <= pr.review_requests[r - 1].requested_at) {
        pr.review_requests.resize(r);
        break;
      }
    }
    const auto ncommits = 1 + rng.below(4);
    for (std::uint64_t c = 0; c < ncommits; ++c) {
      const std::string who = rng.chance(80) ? author : rng.pick(people);
      pr.commits.push_back(CommitEvent{hex_sha(static_cast<std::uint64_t>(number) * 100 + c), who, at()});
    }
    if (rng.chance(12)) {
      const std::string voucher = rng.chance(70) ? (rng.chance(50) ? "alice" : "erin") : "frank";
      if (voucher != author) {
        pr.issue_comments.push_back(
            Comment{next_id++, voucher, at(),
                    "@" + author + " is a new member of our team, we already reviewed their work"});
      }
    }
    pulls.push_back(std::move(pr));
  }
  return make_snapshot(std::move(users), std::move(pulls), fetched);
}

RepoSnapshot airflow_shaped_snapshot() {
  std::vector<UserProfile> users = {make_user("rev", 500, {"apache"}, Permission::write),
                                    make_user("maint", 80, {"apache"}, Permission::admin)};
  for (int a = 0; a < 10; ++a) users.push_back(make_user("contrib" + std::to_string(a), 3));

  std::vector<PullRequest> pulls;
  std::int64_t id = 1;
  int accepted_index = 0;
  int rejected_index = 0;
  for (int n = 1; n <= 100; ++n) {
    const bool accepted = n % 4 != 0;
    const std::string author = "contrib" + std::to_string(n % 10);
    const Timestamp created = kT0 + n * kDay;
    int comments = 0;
    std::int64_t days = 1;
    bool revision = false;
    bool responded = false;
    if (accepted) {
      const int k = accepted_index++;
      comments = 3 + k % 3;  // 3, 4, 5 in equal thirds
      revision = k < 66;
      responded = k < 32;
    } else {
      const int k = rejected_index++;
      if (k < 20) {
        comments = 1;
      } else {
        comments = 9;
        days = 4;  // 2.25 per day
      }
      revision = k < 9;
      responded = k < 3;
    }
    PullRequest pr = make_pull(n, author, accepted ? PrState::merged : PrState::closed_unmerged, created,
                               created + days * kDay, "maint");
    for (int c = 0; c < comments; ++c) {
      pr.issue_comments.push_back(Comment{id++, "rev", created + kHour + c * 60, "Looks reasonable, see notes."});
    }
    if (responded) pr.review_requests.push_back(ReviewRequest{"rev", created + 600});
    // Committed at creation time: not after the first feedback.
    pr.commits.push_back(CommitEvent{hex_sha(static_cast<std::uint64_t>(n) * 10), author, created});
    if (revision) {
      pr.commits.push_back(CommitEvent{hex_sha(static_cast<std::uint64_t>(n) * 10 + 1), author, created + 2 * kHour});
    }
    pulls.push_back(std::move(pr));
  }
  return make_snapshot(std::move(users), std::move(pulls), kT0 + 200 * kDay);
}

RepoSnapshot stratified_snapshot(int accepted, int rejected) {
  std::vector<UserProfile> users = {make_user("maint", 10, {"apache"}, Permission::write),
                                    make_user("author", 1)};
  std::vector<PullRequest> pulls;
  const int total = accepted + rejected;
  int a = 0;
  int r = 0;
  for (int n = 1; n <= total; ++n) {
    // Spread rejected PRs evenly among accepted ones.
    const bool take_rejected = r < rejected && (a >= accepted || (n * rejected) / total > r);
    const PrState state = take_rejected ? PrState::closed_unmerged : PrState::merged;
    (take_rejected ? r : a)++;
    const Timestamp created = kT0 + n * kHour;
    pulls.push_back(make_pull(n, "author", state, created, created + kHour, "maint"));
  }
  for (int k = 1; k <= 2; ++k) {
    pulls.push_back(make_pull(total + k, "author", PrState::open, kT0 + (total + k) * kHour));
  }
  return make_snapshot(std::move(users), std::move(pulls), kT0 + (total + 10) * kHour);
}

const std::vector<std::string>& ordinary_review_chatter() {
  static const std::vector<std::string> kComments = {
      "LGTM",
      "Thanks for the contribution!",
      "Could you add a test for the null case?",
      "Please rebase onto main.",
      "This looks good to me, merging once CI passes.",
      "Nit: trailing whitespace on line 42.",
      "Why is this change needed?",
      "Can we avoid the extra allocation here?",
      "The docs need an update as well.",
      "CI is failing on the integration job.",
      "Retriggering the build.",
      "Approved.",
      "I left a few comments inline.",
      "Please split this into two PRs.",
      "We already have a helper for this in utils.",
      "This duplicates the logic in the scheduler.",
      "Can you explain the motivation in the description?",
      "The naming here is a bit confusing.",
      "Let's wait for the release branch to be cut.",
      "Closing in favour of the newer PR.",
      "Thanks, merged!",
      "Could you sign the CLA?",
      "Looks fine, minor comments only.",
      "Is this backwards compatible?",
      "Please add a changelog entry.",
      "The test is flaky on my machine.",
      "+1",
      "Good catch.",
      "This needs a migration script.",
      "I think the default should stay false.",
      "Let's discuss this on the dev list first.",
      "Can you run the formatter?",
      "Updated, please take another look.",
      "The benchmark numbers look good.",
      "Please remove the debug logging.",
      "This method is now unused, can we delete it?",
      "Ping, any update here?",
      "Marking as stale.",
      "Works for me locally.",
      "The fix looks correct but needs a test.",
      "Could you reference the JIRA ticket?",
      "Resolved the conflicts.",
      "This is a breaking change for the Python SDK.",
      "Thanks for reviewing the review comments so quickly.",
      "I reviewed the API changes; they look fine.",
      "Member variables should use the trailing underscore.",
      "Our team style guide prefers early returns.",
      "The new member function needs documentation.",
      "Please vouch for the dependency license before we merge.",
      "Recommended reading: the contributor guide.",
  };
  return kComments;
}

void prune_users(RepoSnapshot& s) {
  std::set<std::string> used;
  for (const auto& pr : s.pulls) {
    used.insert(pr.author);
    if (pr.closer) used.insert(*pr.closer);
    for (const auto& c : pr.issue_comments) used.insert(c.author);
    for (const auto& c : pr.review_comments) used.insert(c.author);
    for (const auto& r : pr.reviews) used.insert(r.author);
    for (const auto& r : pr.review_requests) used.insert(r.requestee);
    for (const auto& c : pr.commits) used.insert(c.author);
  }
  std::erase_if(s.users, [&](const auto& kv) { return !used.contains(kv.first); });
}

}  // namespace prtrust::testing
